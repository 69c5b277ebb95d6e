//! End-to-end tests of the `oplab` binary: fixture I/O, subcommand output
//! and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use oplab_core::Matrix;
use serde_json::Value;
use tempfile::TempDir;

fn oplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_fixture(dir: &Path, name: &str, m: &Matrix) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(m).unwrap()).unwrap();
    path.display().to_string()
}

fn weighted_swap() -> Matrix {
    Matrix::from_real_rows(&[vec![0.0, 2.0], vec![3.0, 0.0]])
}

#[test]
fn polar_of_weighted_swap() {
    let dir = TempDir::new().unwrap();
    let path = write_fixture(dir.path(), "t.json", &weighted_swap());
    let out = oplab(&["polar", &path]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let modulus: Matrix = serde_json::from_value(v["modulus"].clone()).unwrap();
    assert!(modulus.frob_distance(&Matrix::real_diag(&[3.0, 2.0])) < 1e-9);
    let defects = v["defects"].as_object().unwrap();
    for (_, d) in defects {
        assert!(d.as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn polar_of_zero_matrix() {
    let dir = TempDir::new().unwrap();
    let path = write_fixture(dir.path(), "z.json", &Matrix::zeros(2, 2));
    let out = oplab(&["polar", &path]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let isometry: Matrix = serde_json::from_value(v["isometry"].clone()).unwrap();
    let modulus: Matrix = serde_json::from_value(v["modulus"].clone()).unwrap();
    assert_eq!(isometry.frob_norm(), 0.0);
    assert_eq!(modulus.frob_norm(), 0.0);
}

#[test]
fn aluthge_fixes_a_normal_diagonal() {
    let dir = TempDir::new().unwrap();
    let path = write_fixture(dir.path(), "d.json", &Matrix::real_diag(&[1.0, 2.0]));
    let out = oplab(&["aluthge", &path]);
    assert!(out.status.success());
    let m: Matrix = serde_json::from_slice(&out.stdout).unwrap();
    assert!(m.frob_distance(&Matrix::real_diag(&[1.0, 2.0])) < 1e-9);
}

#[test]
fn aluthge_iterate_reaches_fixed_point() {
    let dir = TempDir::new().unwrap();
    let path = write_fixture(dir.path(), "t.json", &weighted_swap());
    let out = oplab(&["aluthge", &path, "--iterate", "2"]);
    assert!(out.status.success());
    let m: Matrix = serde_json::from_slice(&out.stdout).unwrap();
    let s = 6.0f64.sqrt();
    let expected = Matrix::from_real_rows(&[vec![0.0, s], vec![s, 0.0]]);
    assert!(m.frob_distance(&expected) < 1e-9);
}

#[test]
fn classify_reports_the_hand_computed_defect() {
    let dir = TempDir::new().unwrap();
    let path = write_fixture(dir.path(), "t.json", &weighted_swap());
    let out = oplab(&["classify", &path, "--p", "0.5"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["normal"], Value::Bool(false));
    assert_eq!(v["hyponormal"], Value::Bool(false));
    let defect = v["defects"]["self_commutator"].as_f64().unwrap();
    assert!((defect - 50f64.sqrt()).abs() < 1e-9);
}

#[test]
fn spectrum_of_swap_matrix() {
    let dir = TempDir::new().unwrap();
    let swap = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let path = write_fixture(dir.path(), "s.json", &swap);
    let out = oplab(&["spectrum", &path]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let eigs = v["eigenvalues"].as_array().unwrap();
    assert_eq!(eigs.len(), 2);
    assert!((eigs[0][0].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((eigs[1][0].as_f64().unwrap() + 1.0).abs() < 1e-10);
}

#[test]
fn spectrum_rejects_non_normal_input() {
    let dir = TempDir::new().unwrap();
    let jordan = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
    let path = write_fixture(dir.path(), "j.json", &jordan);
    let out = oplab(&["spectrum", &path]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not normal"), "stderr: {stderr}");
}

#[test]
fn malformed_file_names_the_offending_field() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"rows": 2, "cols": 2, "data": [[0,0],[1,0]]}"#).unwrap();
    let out = oplab(&["classify", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("length") || stderr.contains("data"),
        "diagnostic must name the problem: {stderr}"
    );

    let nan_path = dir.path().join("nan.json");
    std::fs::write(
        &nan_path,
        r#"{"rows": 1, "cols": 1, "data": [[null, 0]]}"#,
    )
    .unwrap();
    let out = oplab(&["classify", &nan_path.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_square_matrix_is_rejected() {
    let dir = TempDir::new().unwrap();
    let rect = Matrix::new(
        1,
        2,
        vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
    )
    .unwrap();
    let path = write_fixture(dir.path(), "rect.json", &rect);
    let out = oplab(&["polar", &path]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("square"), "stderr: {stderr}");
}

#[test]
fn unknown_claim_exits_with_usage_error() {
    let out = oplab(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_family_exits_with_usage_error() {
    let out = oplab(&["verify", "eqh1", "--family", "nonsense", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pair_structured_claims_reject_family_overrides() {
    for claim in ["lemma23", "lemma24", "fuglede", "beckputnam"] {
        let out = oplab(&["verify", claim, "--family", "cyclic", "--trials", "1"]);
        assert_eq!(out.status.code(), Some(2), "claim {claim}");
    }
}

#[test]
fn out_flag_writes_the_report_to_disk() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = oplab(&[
        "verify",
        "eqh2",
        "--dims",
        "2",
        "--trials",
        "3",
        "--out",
        &path.display().to_string(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "report goes to the file, not stdout");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["claim_id"], "eqh2");
    assert_eq!(v["trials"].as_u64().unwrap(), 3);
}

#[test]
fn search_finds_the_guaranteed_witness() {
    let out = oplab(&[
        "search",
        "aluthge-counterexample",
        "--dim",
        "2",
        "--budget",
        "1",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["matrix_report"]["normal"], Value::Bool(false));
    assert_eq!(v["aluthge_report"]["normal"], Value::Bool(true));
    assert!(v["semicircle"].is_null());
}

#[test]
fn search_dim_one_and_zero_budget_print_none() {
    for args in [["--dim", "1", "--budget", "100"], ["--dim", "2", "--budget", "0"]] {
        let out = oplab(&[
            "search",
            "aluthge-counterexample",
            args[0],
            args[1],
            args[2],
            args[3],
        ]);
        assert_eq!(out.status.code(), Some(1));
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "none");
    }
}

#[test]
fn unknown_search_kind_is_a_usage_error() {
    let out = oplab(&["search", "perpetual-motion"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_green_run_exits_zero() {
    let out = oplab(&[
        "verify", "fuglede", "--dims", "2..4", "--trials", "10", "--seed", "3",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_thm25_reference_invocation() {
    let out = oplab(&[
        "verify", "thm25", "--dims", "2..6", "--trials", "100", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["trials"].as_u64().unwrap(), 500);
}

#[test]
fn verify_thm21_cyclic_reference_invocation() {
    let out = oplab(&["verify", "thm21", "--family", "cyclic", "--trials", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn invalid_tolerances_are_rejected() {
    let out = oplab(&["verify", "eqh1", "--tol", "0", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = oplab(&["verify", "eqh1", "--tol", "1.5", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
