use std::path::PathBuf;
use std::process::Command;

fn header_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("finv.h")
}

#[test]
fn header_declares_the_whole_api() {
    let h = std::fs::read_to_string(header_path()).expect("build script writes the header");
    assert!(h.contains("#ifndef FINV_H"));
    for name in [
        "typedef struct FinvFunction FinvFunction;",
        "typedef struct FinvFunction2D FinvFunction2D;",
        "typedef struct FinvLadder FinvLadder;",
        "typedef struct FinvReport FinvReport;",
        "FINV_STATUS_OK = 0",
        "FINV_STATUS_NULL_POINTER = 1",
        "FINV_STATUS_NOT_CONVERGED = 5",
        "FINV_STATUS_PANIC = 8",
        "FINV_ACCELERATION_EXTRAPOLATION = 3",
        "finv_last_error_message(char *buf, size_t len)",
        "finv_version(void)",
        "finv_function_lookup(",
        "finv_function_free(",
        "finv_function_eval(",
        "finv_fourier_transform(",
        "finv_ladder_new(",
        "finv_ladder_default(void)",
        "finv_ladder_free(",
        "finv_invert_at(",
        "finv_localize_invert(",
        "finv_function2d_lookup(",
        "finv_invert2d_at(",
        "finv_report_free(",
        "finv_report_len(",
        "finv_report_partial(",
        "finv_report_accelerated(",
        "finv_report_abs_error(",
        "finv_heaviside_kernel(",
        "finv_semicircle_bound(",
        "finv_sinc_integral(",
    ] {
        assert!(h.contains(name), "header lacks `{name}`");
    }
}

/// The header must compile as C and as C++ when a compiler is present.
#[test]
fn header_compiles() {
    let dir = header_path().parent().unwrap().to_path_buf();
    let src = std::env::temp_dir().join(format!("finv_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"finv.h\"\nint main(void) { FinvStatus s = FINV_STATUS_OK; (void)s; return 0; }\n",
    )
    .unwrap();
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let out = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(&dir)
            .arg(&src)
            .output();
        match out {
            Ok(o) => assert!(o.status.success(), "{compiler}: {}", String::from_utf8_lossy(&o.stderr)),
            Err(_) => eprintln!("{compiler} not found; skipping syntax check"),
        }
    }
    let _ = std::fs::remove_file(src);
}
