//! End-to-end tests through the compiled binary: flags, formats, exit
//! codes, and the corpus VERIFIED line.

use std::process::{Command, Output};

fn dmodchi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmodchi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn maximal_ideal_table_report() {
    let out = dmodchi(&["--vars", "2", "--ideal", "x0,x1", "--format", "table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Koszul K at p = 2, de Rham K at p = 0, chi = (1, 1), PASS.
    assert!(text.contains("p=2 dim=1 t=(0,0) zdeg=-2"), "{text}");
    assert!(text.contains("p=0 dim=1 t=(-1,-1) zdeg=-2"), "{text}");
    assert!(text.contains("chi = (1, 1)  main theorem PASS"), "{text}");
}

#[test]
fn principal_product_with_oracle() {
    let out = dmodchi(&["--vars", "2", "--ideal", "x0*x1", "--oracle", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("chi = (-1, -1)  main theorem PASS"), "{text}");
    assert!(text.contains("oracle: PASS"), "{text}");
}

#[test]
fn zero_ideal_chi_pair() {
    let out = dmodchi(&["--vars", "1", "--ideal", ""]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("chi = (1, -1)  main theorem PASS"), "{text}");
}

#[test]
fn corpus_table_ends_with_verified_line() {
    let out = dmodchi(&["--vars", "2", "--corpus"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().last(), Some("VERIFIED 5/5"));
}

#[test]
fn corpus_json_parses_and_verified_goes_to_stderr() {
    let out = dmodchi(&["--vars", "2", "--corpus", "--format", "json"]);
    assert!(out.status.success());
    let report = dmodchi::cli::parse_json(&stdout(&out)).expect("stdout is pure JSON");
    assert_eq!(report.summary.verified, "VERIFIED 5/5");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("VERIFIED 5/5"));
}

#[test]
fn csv_format_has_header() {
    let out = dmodchi(&["--vars", "1", "--ideal", "x0", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,ideal,j,class,p,dim,zdegree,chi_koszul,chi_derham,verdict"));
}

#[test]
fn ideal_file_input() {
    let dir = std::env::temp_dir();
    let path = dir.join("dmodchi_test_ideals.txt");
    std::fs::write(&path, "x0\nx0*x1\n\n").unwrap();
    let out = dmodchi(&["--vars", "2", "--ideal-file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ideal (x0)"), "{text}");
    assert!(text.contains("ideal (x0*x1)"), "{text}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn localization_run() {
    let out = dmodchi(&[
        "--vars",
        "2",
        "--localize",
        "0",
        "--ideal",
        "",
        "--oracle",
        "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("R localized at x0"), "{text}");
    assert!(text.contains("x0 PASS"), "{text}");
}

#[test]
fn parse_errors_exit_two() {
    let out = dmodchi(&["--vars", "2", "--ideal", "x9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dmodchi(&["--vars", "2", "--ideal", "x0^2", "--strict-squarefree"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dmodchi(&["--vars", "2", "--ideal", "x0", "--field", "91"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dmodchi(&["--vars", "2", "--ideal", "x0", "--oracle", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing source entirely.
    let out = dmodchi(&["--vars", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_and_worker_env() {
    let dir = std::env::temp_dir();
    let path = dir.join("dmodchi_test_report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_dmodchi"))
        .args([
            "--vars",
            "2",
            "--corpus",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ])
        .env("DMODCHI_WORKERS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    // The VERIFIED line lands on stdout when the report goes to a file.
    assert!(stdout(&out).contains("VERIFIED 5/5"));
    let report = dmodchi::cli::parse_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.ideals.len(), 5);
    std::fs::remove_file(&path).ok();
}

#[test]
fn binary_corpus_runs_are_byte_identical() {
    let a = dmodchi(&["--vars", "3", "--corpus", "--format", "json"]);
    let b = dmodchi(&["--vars", "3", "--corpus", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn prime_field_flag() {
    let out = dmodchi(&["--vars", "2", "--ideal", "x0*x1", "--field", "1000003"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("field: prime 1000003"));
}
