use std::process::Command as Process;

use clap::Parser;
use finv_core::cli::{
    convergence_csv, counterexample_report, perron_report, run, to_json, Cli, Command, CounterexampleReport,
    ExitStatus, OutputFormat, PerronReport, RunConfig, TransformRow, CONVERGENCE_COLUMNS,
};
use finv_core::inversion::{invert_at, InversionReport, TruncationLadder};
use finv_core::perron::ComplexParameter;
use finv_core::quadrature::Tolerance;
use finv_core::testfns::{laplace, FunctionInfo};

fn config(args: &[&str]) -> RunConfig {
    let mut full = vec!["finv"];
    full.extend_from_slice(args);
    Cli::try_parse_from(full).unwrap().into_config().unwrap()
}

fn finv(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_finv")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn csv_rows(body: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn perron_example() {
    let out = run(&config(&["perron", "--p", "1", "--w", "0+1i", "--R", "1000"]));
    assert_eq!(out.status, ExitStatus::Ok);
    let rep: PerronReport = serde_json::from_str(&out.body).unwrap();
    assert!(rep.abs_error <= rep.bound);
    let v: serde_json::Value = serde_json::from_str(&out.body).unwrap();
    for key in ["value", "reference", "abs_error", "bound"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn catalog_example() {
    let out = run(&config(&["catalog"]));
    assert_eq!(out.status, ExitStatus::Ok);
    let entries: Vec<FunctionInfo> = serde_json::from_str(&out.body).unwrap();
    assert!(entries.len() >= 8);
    assert!(entries.iter().any(|e| e.id == "rect" && !e.is_abs_cont));
    let csv = run(&config(&["--format", "csv", "catalog"]));
    assert_eq!(csv_rows(&csv.body).1.len(), entries.len());
}

#[test]
fn invert_example_csv() {
    let out = run(&config(&[
        "--format", "csv", "invert", "--function", "laplace", "--x", "0", "--ladder", "25,50,100,200,400,800",
    ]));
    assert_eq!(out.status, ExitStatus::Ok);
    let (header, rows) = csv_rows(&out.body);
    assert_eq!(header, CONVERGENCE_COLUMNS);
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[6][0], "accelerated");
    let final_err: f64 = rows[6][3].parse().unwrap();
    assert!(final_err <= 1e-3);
    let radii: Vec<f64> = rows[..6].iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(radii, vec![25.0, 50.0, 100.0, 200.0, 400.0, 800.0]);
}

#[test]
fn default_formats() {
    let t = config(&["transform", "--function", "rect", "--s", "0,1"]);
    assert_eq!(t.output_format, OutputFormat::Csv);
    let i = config(&["invert", "--function", "laplace", "--x", "0"]);
    assert_eq!(i.output_format, OutputFormat::Json);
    match i.subcommand {
        Command::Invert { ladder, .. } => assert_eq!(ladder, TruncationLadder::default()),
        other => panic!("{other:?}"),
    }
    let p = config(&["perron", "--p", "2", "--R", "50"]);
    assert!(matches!(p.subcommand, Command::Perron { w, .. } if w == ComplexParameter::i()));
    assert_eq!(p.tolerance, Tolerance::default());
}

#[test]
fn json_round_trips() {
    let tol = Tolerance::default();
    let inv = invert_at(&laplace(), 0.7, &TruncationLadder::default(), &tol).unwrap();
    let back: InversionReport = serde_json::from_str(&to_json(&inv).unwrap()).unwrap();
    assert_eq!(back, inv);

    let p = perron_report(0.5, ComplexParameter::new(0.3, 0.7).unwrap(), 100.0, &tol).unwrap();
    let back: PerronReport = serde_json::from_str(&to_json(&p).unwrap()).unwrap();
    assert_eq!(back, p);

    let c = counterexample_report(3).unwrap();
    let back: CounterexampleReport = serde_json::from_str(&to_json(&c).unwrap()).unwrap();
    assert_eq!(back, c);

    let t = run(&config(&["--format", "json", "transform", "--function", "laplace", "--s", "0,0.5,-3"]));
    let rows: Vec<TransformRow> = serde_json::from_str(&t.body).unwrap();
    assert_eq!(to_json(&rows).unwrap(), t.body);

    let cat = run(&config(&["catalog"]));
    let info: Vec<FunctionInfo> = serde_json::from_str(&cat.body).unwrap();
    assert_eq!(to_json(&info).unwrap(), cat.body);
}

#[test]
fn floats_carry_seventeen_significant_digits() {
    let out = run(&config(&["perron", "--p", "1", "--w", "0.3+0.7i", "--R", "100"]));
    assert!(out.body.contains("\"R\": 1.0000000000000000e2"));
    let p = perron_report(1.0, ComplexParameter::new(0.3, 0.7).unwrap(), 100.0, &Tolerance::default()).unwrap();
    let csv = convergence_csv(&invert_at(&laplace(), 0.1, &TruncationLadder::single(30.0).unwrap(), &Tolerance::default()).unwrap()).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("3.0000000000000000e1,"));
    assert!(out.body.contains(&finv_core::cli::num(p.abs_error)));
}

#[test]
fn counterexample_run() {
    let out = run(&config(&["counterexample", "--depth", "3"]));
    assert_eq!(out.status, ExitStatus::Ok);
    let rep: CounterexampleReport = serde_json::from_str(&out.body).unwrap();
    // 2(1 + 255/4 + (2^27 − 1)/9) = 536873239/18
    assert_eq!(rep.variation_partial_sums[2].exact, "536873239/18");
    assert_eq!(rep.main_terms.len(), 3);
}

#[test]
fn exit_status_contract() {
    let (code, body, _) = finv(&["perron", "--p", "1", "--R", "1000"]);
    assert_eq!(code, 0);
    assert!(!body.is_empty());

    let (code, body, err) = finv(&["invert", "--function", "nope", "--x", "0"]);
    assert_eq!(code, 2);
    assert!(body.is_empty() && err.contains("nope"));

    let (code, _, _) = finv(&["invert", "--function", "laplace", "--x", "0", "--ladder", "50,25"]);
    assert_eq!(code, 2);

    let (code, _, _) = finv(&["--abs-tol", "-1", "catalog"]);
    assert_eq!(code, 2);

    let (code, _, _) = finv(&["frobnicate"]);
    assert_eq!(code, 2);

    // rect without the override: the hypotheses fail, nothing is emitted.
    let (code, body, err) = finv(&["invert", "--function", "rect", "--x", "1"]);
    assert_eq!(code, 1);
    assert!(body.is_empty() && err.contains("override"));

    // Starved quadrature: the report is still emitted, with status 3.
    let (code, body, _) = finv(&[
        "--max-subdivisions", "1", "--abs-tol", "1e-14", "--rel-tol", "1e-14", "--format", "csv", "invert",
        "--function", "laplace", "--x", "0.3", "--ladder", "25,50,100,200",
    ]);
    assert_eq!(code, 3);
    assert_eq!(csv_rows(&body).1.len(), 5);
}

#[test]
fn output_path_is_honoured() {
    let path = std::env::temp_dir().join(format!("finv-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, body, _) = finv(&["--output", p, "perron", "--p", "0.5", "--R", "200"]);
    assert_eq!(code, 0);
    assert!(body.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let rep: PerronReport = serde_json::from_str(&written).unwrap();
    assert!(rep.within_bound());
}

#[test]
fn every_subcommand_runs() {
    let runs: &[&[&str]] = &[
        &["transform", "--function", "gaussian", "--s", "-1,0,2"],
        &["invert", "--function", "tent", "--x", "0.25", "--dirichlet", "--ladder", "50,100,200,400"],
        &["invert", "--function", "rect", "--x", "1", "--override"],
        &["localize", "--function", "tent", "--interval", "-1,1", "--x", "0"],
        &["perron", "--p", "-1", "--w", "0.3+0.7i", "--R", "300"],
        &["invert2d", "--function", "quadform", "--point", "0,0", "--ladders", "10,20,40,80;10,20,40,80"],
        &["invert2d", "--function", "gaussian_gaussian", "--point", "0.5,-0.5", "--ladders", "10,20,40,80;10,20,40,80", "--limit-order", "inner-s"],
    ];
    for args in runs {
        let out = run(&config(args));
        assert_eq!(out.status, ExitStatus::Ok, "{args:?}: {:?}", out.message);
        assert!(!out.body.is_empty());
    }
}
