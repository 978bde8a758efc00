fn main() {
    std::process::exit(finv_core::cli::main_with_args(std::env::args_os()));
}
