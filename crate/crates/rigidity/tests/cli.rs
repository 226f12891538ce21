//! Exit-code contract and output determinism of the command-line interface.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rigidity"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn slope_single_knot_ok() {
    let out = run(&["slope", "5/3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("knot=5/2"), "canonical form echoed: {text}");
    assert!(text.contains("dims.knot_r31=(5,4,1)"));
    assert!(text.contains("basis=meridian-longitude"));
}

#[test]
fn slope_json_record_per_line() {
    let out = run(&["slope", "5/3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(text.trim()).expect("valid JSON line");
    assert_eq!(v["dims"]["h1_r31_knot"], 1);
    assert_eq!(v["config"]["basis"], "meridian-longitude");
}

#[test]
fn slope_parse_error_is_exit_2() {
    let out = run(&["slope", "not-a-knot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn slope_domain_error_is_exit_4() {
    // b(4,1): even p is not a knot normal form.
    let out = run(&["slope", "4/1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn slope_pipeline_error_is_exit_3() {
    // The trefoil is not hyperbolic: no geometric candidate root.
    let out = run(&["slope", "3/1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn slope_root_index_out_of_range_is_exit_4() {
    let out = run(&["slope", "5/3", "--root-index", "99"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn slope_catalog_is_order_stable_and_deterministic() {
    let dir = std::env::temp_dir().join("rigidity-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.txt");
    std::fs::write(&path, "# two knots\n5/3\n7/3 # five-two\n").unwrap();
    let p = path.to_str().unwrap();
    let a = run(&["slope", p]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("knot=5/2"));
    assert!(lines[1].contains("knot=7/3"));
    // Byte-identical on rerun.
    let b = run(&["slope", p]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn env_tolerance_is_honored_and_flag_overrides() {
    let out = bin()
        .args(["slope", "5/3"])
        .env("RIGIDITY_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("tol=0.0000001"));

    let out = bin()
        .args(["slope", "5/3", "--tol", "1e-6"])
        .env("RIGIDITY_TOL", "1e-7")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("tol=0.000001"));
}

#[test]
fn classify_parabolic_translation() {
    let dir = std::env::temp_dir().join("rigidity-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("parabolic.txt");
    // parabolic_translation(1, 0) embedded in SO(4,1).
    std::fs::write(
        &path,
        "1.5 -0.5 1 0 0\n0.5 0.5 1 0 0\n1 -1 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n",
    )
    .unwrap();
    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kind=parabolic_translation"));
    assert!(text.contains("trace=5"));
}

#[test]
fn classify_identity_kind() {
    let dir = std::env::temp_dir().join("rigidity-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("identity.txt");
    std::fs::write(
        &path,
        "1 0 0 0 0\n0 1 0 0 0\n0 0 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n",
    )
    .unwrap();
    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("kind=identity"));
}

#[test]
fn classify_non_lorentz_is_exit_4() {
    let dir = std::env::temp_dir().join("rigidity-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("orthogonal.txt");
    // A permutation matrix mixing the timelike axis: orthogonal, not Lorentz.
    std::fs::write(
        &path,
        "0 1 0 0 0\n1 0 0 0 0\n0 0 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n",
    )
    .unwrap();
    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn classify_malformed_file_is_exit_2() {
    let dir = std::env::temp_dir().join("rigidity-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("short.txt");
    std::fs::write(&path, "1 0\n").unwrap();
    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_lists_checks() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("pass ")));
    // Negative control: a corrupted tolerance breaks the rank-based checks.
    let bad = run(&["verify", "--tol", "10"]);
    assert_ne!(bad.status.code(), Some(0));
    assert!(stdout(&bad).contains("FAIL torus-cohomology-dimensions"));
}
