//! Command-line front end: argument parsing, dispatch to the numerical
//! modules, and JSON/CSV serialisation with 17 significant digits.
//!
//! Exit status: 0 when every contract of the run held, 2 for usage errors
//! and unknown function ids, 3 when a report was produced but some
//! quadrature did not converge or an error exceeded its bound, 1 otherwise.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::counterexample::{
    certificate_slope, cross_term_constant, jk_growth_certificate, jk_main_term, variation_partial_sum,
    CertificateRow, CrossTermConstant, MainTerm,
};
use crate::error::{Error, Result};
use crate::inversion::{
    invert_at_with, invert_dirichlet, Acceleration, InversionReport, InvertOptions, TransformCache,
    TruncationLadder, DEFAULT_RADII,
};
use crate::localization::localize_invert;
use crate::multivar::{invert2d_ordered, lookup2d, LimitOrder};
use crate::perron::{heaviside_kernel_with, heaviside_reference, pv_zero_closed_form, semicircle_bound, ComplexParameter};
use crate::quadrature::Tolerance;
use crate::testfns::{catalog_info, lookup, FunctionInfo};
use crate::transform::fourier_transform;

/// Defaults shared by every subcommand.
pub mod defaults {
    use crate::perron::ComplexParameter;

    pub const W: ComplexParameter = ComplexParameter { xi: 0.0, eta: 1.0 };
    pub const ABS_TOL: f64 = 1e-10;
    pub const REL_TOL: f64 = 1e-10;
    pub const MAX_SUBDIVISIONS: usize = 2000;
    pub const COUNTEREXAMPLE_DEPTH: u32 = 3;
    /// Exact variation sums grow like `2^{K³}`; beyond this they stop being
    /// useful output.
    pub const MAX_COUNTEREXAMPLE_DEPTH: u32 = 16;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitOrderArg {
    InnerT,
    InnerS,
}

#[derive(Debug, Parser)]
#[command(name = "finv", version, about = "Numerical checks of Fourier inversion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
    /// Output format; `transform` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = defaults::ABS_TOL)]
    pub abs_tol: f64,
    #[arg(long, global = true, default_value_t = defaults::REL_TOL)]
    pub rel_tol: f64,
    #[arg(long, global = true, default_value_t = defaults::MAX_SUBDIVISIONS)]
    pub max_subdivisions: usize,
    /// Limit estimate for ladders: none, pairwise, iterated, extrapolation.
    #[arg(long, global = true, default_value = "extrapolation")]
    pub acceleration: Acceleration,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// List catalog entries with their metadata.
    Catalog,
    /// Numerical Fourier transform at a list of frequencies.
    Transform {
        #[arg(long)]
        function: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        s: Vec<f64>,
    },
    /// Truncated inversion integrals along a ladder.
    Invert {
        #[arg(long)]
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Comma-separated increasing radii.
        #[arg(long)]
        ladder: Option<String>,
        /// Use the Dirichlet-kernel form instead of the transform.
        #[arg(long)]
        dirichlet: bool,
        /// Ignore closed-form transforms.
        #[arg(long)]
        numeric_transform: bool,
        /// Run entries that do not satisfy the inversion hypotheses.
        #[arg(long = "override")]
        override_hypotheses: bool,
    },
    /// Real-axis Heaviside kernel against its residue value.
    Perron {
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = defaults::W)]
        w: ComplexParameter,
        #[arg(long = "R", alias = "r")]
        r: f64,
    },
    /// Inversion from the restriction to an interval.
    Localize {
        #[arg(long)]
        function: String,
        /// `a,b`
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        ladder: Option<String>,
    },
    /// Exact and analytic certificates for the divergent construction.
    Counterexample {
        #[arg(long, default_value_t = defaults::COUNTEREXAMPLE_DEPTH)]
        depth: u32,
    },
    /// Iterated-limit inversion in two variables.
    Invert2d {
        #[arg(long)]
        function: String,
        /// `x,y`
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// `l1;l2`, each a comma-separated radius list.
        #[arg(long)]
        ladders: Option<String>,
        #[arg(long, value_enum, default_value = "inner-t")]
        limit_order: LimitOrderArg,
    },
}

/// A parsed subcommand with its domain-typed parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Catalog,
    Transform {
        function_id: String,
        points: Vec<f64>,
    },
    Invert {
        function_id: String,
        x: f64,
        ladder: TruncationLadder,
        dirichlet: bool,
        numeric_transform: bool,
        override_hypotheses: bool,
    },
    Perron {
        p: f64,
        w: ComplexParameter,
        r: f64,
    },
    Localize {
        function_id: String,
        interval: (f64, f64),
        x: f64,
        ladder: TruncationLadder,
    },
    Counterexample {
        depth: u32,
    },
    Invert2d {
        function_id: String,
        point: (f64, f64),
        ladders: (TruncationLadder, TruncationLadder),
        order: LimitOrder,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Transform { .. } => "transform",
            Command::Invert { .. } => "invert",
            Command::Perron { .. } => "perron",
            Command::Localize { .. } => "localize",
            Command::Counterexample { .. } => "counterexample",
            Command::Invert2d { .. } => "invert2d",
        }
    }

    fn default_format(&self) -> OutputFormat {
        match self {
            Command::Transform { .. } => OutputFormat::Csv,
            _ => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Command,
    pub tolerance: Tolerance,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let p = |t: &str| t.parse::<f64>().map_err(|e| Error::Parse(format!("{what} `{s}`: {e}")));
            Ok((p(a)?, p(b)?))
        }
        _ => Err(Error::Parse(format!("{what} must be `a,b`, got `{s}`"))),
    }
}

fn ladder_or_default(list: Option<&str>, acceleration: Acceleration) -> Result<TruncationLadder> {
    match list {
        Some(l) => TruncationLadder::parse(l, acceleration),
        None => TruncationLadder::new(DEFAULT_RADII.to_vec(), acceleration),
    }
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let tolerance = Tolerance::new(self.abs_tol, self.rel_tol, self.max_subdivisions)?;
        let acc = self.acceleration;
        let subcommand = match self.command {
            CommandArgs::Catalog => Command::Catalog,
            CommandArgs::Transform { function, s } => Command::Transform {
                function_id: function,
                points: s,
            },
            CommandArgs::Invert {
                function,
                x,
                ladder,
                dirichlet,
                numeric_transform,
                override_hypotheses,
            } => Command::Invert {
                function_id: function,
                x,
                ladder: ladder_or_default(ladder.as_deref(), acc)?,
                dirichlet,
                numeric_transform,
                override_hypotheses,
            },
            CommandArgs::Perron { p, w, r } => Command::Perron { p, w, r },
            CommandArgs::Localize {
                function,
                interval,
                x,
                ladder,
            } => Command::Localize {
                function_id: function,
                interval: parse_pair(&interval, "interval")?,
                x,
                ladder: ladder_or_default(ladder.as_deref(), acc)?,
            },
            CommandArgs::Counterexample { depth } => Command::Counterexample { depth },
            CommandArgs::Invert2d {
                function,
                point,
                ladders,
                limit_order,
            } => {
                let ladders = match ladders.as_deref() {
                    Some(l) => {
                        let (a, b) = l
                            .split_once(';')
                            .ok_or_else(|| Error::Parse(format!("ladders must be `l1;l2`, got `{l}`")))?;
                        (TruncationLadder::parse(a, acc)?, TruncationLadder::parse(b, acc)?)
                    }
                    None => (ladder_or_default(None, acc)?, ladder_or_default(None, acc)?),
                };
                Command::Invert2d {
                    function_id: function,
                    point: parse_pair(&point, "point")?,
                    ladders,
                    order: match limit_order {
                        LimitOrderArg::InnerT => LimitOrder::InnerT,
                        LimitOrderArg::InnerS => LimitOrder::InnerS,
                    },
                }
            }
        };
        Ok(RunConfig {
            output_format: self.format.unwrap_or_else(|| subcommand.default_format()),
            subcommand,
            tolerance,
            output_path: self.output,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok,
    Failure,
    Usage,
    NotConverged,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Failure => 1,
            ExitStatus::Usage => 2,
            ExitStatus::NotConverged => 3,
        }
    }

    fn from_contract(held: bool) -> Self {
        if held {
            ExitStatus::Ok
        } else {
            ExitStatus::NotConverged
        }
    }

    fn from_error(e: &Error) -> Self {
        match e {
            Error::UnknownFunction(_) | Error::Parse(_) | Error::InvalidLadder(_) | Error::InvalidTolerance(_) => {
                ExitStatus::Usage
            }
            _ => ExitStatus::Failure,
        }
    }
}

/// Serialised report plus exit status. On error `body` is empty and
/// `message` explains why.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub status: ExitStatus,
    pub body: String,
    pub message: Option<String>,
}

/// One frequency of a `transform` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformRow {
    pub s: f64,
    pub value: Complex64,
    pub error_estimate: f64,
    pub converged: bool,
    pub closed_form: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronReport {
    pub p: f64,
    pub w: ComplexParameter,
    #[serde(rename = "R")]
    pub r: f64,
    pub value: Complex64,
    pub reference: Complex64,
    pub abs_error: f64,
    /// Arc bound over `2π` for `p ≠ 0`; the exact closed-form gap at `p = 0`.
    pub bound: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

impl PerronReport {
    pub fn within_bound(&self) -> bool {
        self.abs_error <= self.bound + self.error_estimate
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationRow {
    pub k: u32,
    /// Exact value as `numerator/denominator`.
    pub exact: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub depth: u32,
    pub variation_partial_sums: Vec<VariationRow>,
    pub cross_term_constant: CrossTermConstant,
    pub main_terms: Vec<MainTerm>,
    pub certificate: Vec<CertificateRow>,
    pub slope: Option<f64>,
}

/// Execute a run without touching the filesystem.
pub fn run(config: &RunConfig) -> RunOutput {
    match dispatch(config) {
        Ok((status, body)) => RunOutput {
            status,
            body,
            message: None,
        },
        Err(e) => RunOutput {
            status: ExitStatus::from_error(&e),
            body: String::new(),
            message: Some(e.to_string()),
        },
    }
}

fn inversion_contract(r: &InversionReport) -> bool {
    let rows_ok = r.partials.iter().all(|row| match (row.abs_error, row.bound) {
        (Some(e), Some(b)) => e <= b + r.error_estimate,
        _ => true,
    });
    r.converged && rows_ok
}

fn dispatch(config: &RunConfig) -> Result<(ExitStatus, String)> {
    let tol = &config.tolerance;
    let fmt = config.output_format;
    match &config.subcommand {
        Command::Catalog => {
            let info = catalog_info();
            let body = match fmt {
                OutputFormat::Json => to_json(&info)?,
                OutputFormat::Csv => catalog_csv(&info)?,
            };
            Ok((ExitStatus::Ok, body))
        }
        Command::Transform { function_id, points } => {
            let f = lookup(function_id)?;
            let rows = points
                .iter()
                .map(|&s| {
                    fourier_transform(&f, s, tol).map(|o| TransformRow {
                        s,
                        value: o.value,
                        error_estimate: o.error_estimate,
                        converged: o.converged,
                        closed_form: f.transform(s),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let status = ExitStatus::from_contract(rows.iter().all(|r| r.converged));
            let body = match fmt {
                OutputFormat::Json => to_json(&rows)?,
                OutputFormat::Csv => table(
                    &["s", "re", "im"],
                    rows.iter().map(|r| vec![num(r.s), num(r.value.re), num(r.value.im)]),
                )?,
            };
            Ok((status, body))
        }
        Command::Invert {
            function_id,
            x,
            ladder,
            dirichlet,
            numeric_transform,
            override_hypotheses,
        } => {
            let f = lookup(function_id)?;
            let report = if *dirichlet {
                dirichlet_report(&f, *x, ladder, tol)?
            } else {
                let opts = InvertOptions {
                    override_hypotheses: *override_hypotheses,
                    numeric_transform: *numeric_transform,
                };
                invert_at_with(&f, *x, ladder, tol, opts, &TransformCache::new())?
            };
            inversion_output(&report, fmt)
        }
        Command::Perron { p, w, r } => {
            let report = perron_report(*p, *w, *r, tol)?;
            let status = ExitStatus::from_contract(report.converged && report.within_bound());
            let body = match fmt {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Csv => table(
                    &CONVERGENCE_COLUMNS,
                    std::iter::once(vec![
                        num(report.r),
                        num(report.value.re),
                        num(report.value.im),
                        num(report.abs_error),
                        num(report.bound),
                    ]),
                )?,
            };
            Ok((status, body))
        }
        Command::Localize {
            function_id,
            interval,
            x,
            ladder,
        } => {
            let f = lookup(function_id)?;
            let report = localize_invert(&f, interval.0, interval.1, *x, ladder, tol)?;
            inversion_output(&report, fmt)
        }
        Command::Counterexample { depth } => {
            let report = counterexample_report(*depth)?;
            let body = match fmt {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Csv => table(
                    &["k", "log_part", "cosint_part", "cross_bound", "lower_bound"],
                    report.certificate.iter().zip(&report.main_terms).map(|(c, m)| {
                        vec![
                            c.k.to_string(),
                            num(c.log_part),
                            num(m.cosint_part),
                            num(c.cross_bound),
                            num(c.lower_bound),
                        ]
                    }),
                )?,
            };
            Ok((ExitStatus::Ok, body))
        }
        Command::Invert2d {
            function_id,
            point,
            ladders,
            order,
        } => {
            let f = lookup2d(function_id)?;
            let report = invert2d_ordered(&f, point.0, point.1, &ladders.0, &ladders.1, tol, *order)?;
            inversion_output(&report, fmt)
        }
    }
}

/// CSV columns of every convergence table.
pub const CONVERGENCE_COLUMNS: [&str; 5] = ["R", "re_partial", "im_partial", "abs_error", "bound_if_any"];

fn inversion_output(report: &InversionReport, fmt: OutputFormat) -> Result<(ExitStatus, String)> {
    let status = ExitStatus::from_contract(inversion_contract(report));
    let body = match fmt {
        OutputFormat::Json => to_json(report)?,
        OutputFormat::Csv => convergence_csv(report)?,
    };
    Ok((status, body))
}

/// One row per radius, then a row labelled `accelerated`.
pub fn convergence_csv(report: &InversionReport) -> Result<String> {
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let rows = report
        .partials
        .iter()
        .map(|p| vec![num(p.r), num(p.value.re), num(p.value.im), opt(p.abs_error), opt(p.bound)])
        .chain(std::iter::once(vec![
            "accelerated".to_string(),
            num(report.accelerated.re),
            num(report.accelerated.im),
            opt(report.abs_error),
            String::new(),
        ]));
    table(&CONVERGENCE_COLUMNS, rows)
}

fn dirichlet_report(
    f: &crate::testfns::TestFunction,
    x: f64,
    ladder: &TruncationLadder,
    tol: &Tolerance,
) -> Result<InversionReport> {
    let hypotheses = f.satisfies_inversion_hypotheses();
    let mut rows = Vec::new();
    let mut err: f64 = 0.0;
    let mut converged = true;
    for &r in ladder.radii() {
        let o = invert_dirichlet(f, x, r, tol)?;
        err = err.max(o.error_estimate);
        converged &= o.converged;
        let bound = if hypotheses {
            f.transform_tail_bound(r).map(|t| t / (2.0 * std::f64::consts::PI))
        } else {
            None
        };
        rows.push((r, o.value, bound));
    }
    Ok(InversionReport::assemble(
        &f.id,
        x,
        ladder,
        rows,
        hypotheses.then(|| f.eval(x)),
        err,
        converged,
    ))
}

/// Heaviside kernel at `(p, w, R)` with the matching bound.
pub fn perron_report(p: f64, w: ComplexParameter, r: f64, tol: &Tolerance) -> Result<PerronReport> {
    let o = heaviside_kernel_with(p, w, r, tol)?;
    let reference = heaviside_reference(p, w);
    let bound = if p == 0.0 {
        let closed = pv_zero_closed_form(w, r)? / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        (closed - reference).norm()
    } else {
        semicircle_bound(p.abs(), r, w.modulus())? / (2.0 * std::f64::consts::PI)
    };
    Ok(PerronReport {
        p,
        w,
        r,
        value: o.value,
        reference,
        abs_error: (o.value - reference).norm(),
        bound,
        error_estimate: o.error_estimate,
        converged: o.converged,
    })
}

pub fn counterexample_report(depth: u32) -> Result<CounterexampleReport> {
    if depth == 0 || depth > defaults::MAX_COUNTEREXAMPLE_DEPTH {
        return Err(Error::Domain(format!(
            "depth must be in 1..={}, got {depth}",
            defaults::MAX_COUNTEREXAMPLE_DEPTH
        )));
    }
    let variation_partial_sums = (1..=depth)
        .map(|k| {
            let v = variation_partial_sum(k);
            VariationRow {
                k,
                exact: format!("{}/{}", v.numer(), v.denom()),
                value: num_traits::ToPrimitive::to_f64(&v).unwrap_or(f64::INFINITY),
            }
        })
        .collect();
    let certificate = jk_growth_certificate(depth)?;
    Ok(CounterexampleReport {
        depth,
        variation_partial_sums,
        cross_term_constant: cross_term_constant()?,
        main_terms: (1..=depth).map(jk_main_term).collect::<Result<_>>()?,
        slope: certificate_slope(&certificate),
        certificate,
    })
}

/// `v` with 17 significant digits, which round-trips every double.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn table(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(format!("csv: {e}")))
}

fn catalog_csv(info: &[FunctionInfo]) -> Result<String> {
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    table(
        &[
            "id",
            "dimension",
            "description",
            "is_abs_cont",
            "f_in_l1",
            "fprime_in_l1",
            "l1_norm",
            "sup_norm",
            "has_derivative",
            "has_transform",
        ],
        info.iter().map(|f| {
            vec![
                f.id.clone(),
                f.dimension.to_string(),
                f.description.clone(),
                f.is_abs_cont.to_string(),
                f.f_in_l1.to_string(),
                f.fprime_in_l1.to_string(),
                opt(f.l1_norm),
                opt(f.sup_norm),
                f.has_derivative.to_string(),
                f.has_transform.to_string(),
            ]
        }),
    )
}

/// Pretty JSON in which every floating-point number has 17 significant
/// digits. Non-finite numbers become `null`.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(format!("json: {e}")))?;
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize, out: &mut String| out.extend(std::iter::repeat_n(' ', 2 * n));
    match v {
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) if !n.is_f64() => {
                let _ = write!(out, "{u}");
            }
            (_, Some(i), _) if !n.is_f64() => {
                let _ = write!(out, "{i}");
            }
            (_, _, Some(f)) if f.is_finite() => out.push_str(&num(f)),
            _ => out.push_str("null"),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(indent + 1, out);
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                pad(indent + 1, out);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Parse arguments, run, write the report, and return the process exit
/// code. Errors go to standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitStatus::from_error(&e).code();
        }
    };
    let out = run(&config);
    if let Some(m) = &out.message {
        eprintln!("error: {m}");
    }
    if !out.body.is_empty() {
        let written = match &config.output_path {
            Some(path) => std::fs::write(path, &out.body),
            None => {
                use std::io::Write;
                std::io::stdout().write_all(out.body.as_bytes())
            }
        };
        if let Err(e) = written {
            eprintln!("error: cannot write report: {e}");
            return ExitStatus::Failure.code();
        }
    }
    if out.status == ExitStatus::NotConverged {
        eprintln!("warning: a contract of the `{}` run did not hold", config.subcommand.name());
    }
    out.status.code()
}
