use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn autoloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autoloc")).args(args).output().expect("binary runs")
}

fn compute(request: &Value) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_autoloc"))
        .arg("compute")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(request.to_string().as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn output(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["output"].clone()
}

#[test]
fn theta_bc_suite_passes_with_defaults() {
    let out = autoloc(&["check", "--suite", "theta-bc"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn pairing_lemma_suite_passes() {
    let out = autoloc(&["check", "--suite", "pairing-lemma", "--seed", "1", "--instances", "100"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gram_p_small_suite_fails() {
    let out = autoloc(&["check", "--suite", "gram-p-small", "--report", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = autoloc(&["check", "--suite", "nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta-bc"));
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(autoloc(&[]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["check", "--suite", "congruence", "--seed", "7", "--instances", "20"];
    assert_eq!(autoloc(&args).stdout, autoloc(&args).stdout);
}

#[test]
fn standard_factor_expands() {
    let req = json!({ "op": "standard_factor", "satake": { "n": 3, "q": 5, "alphas": [[1, 1], [2, 1], [3, 1]] } });
    let out = output(&compute(&req));
    assert_eq!(out["coefficients"], json!([[1, 1], [-6, 1], [11, 1], [-6, 1]]));
}

#[test]
fn congruence_number_of_square_order() {
    // basis (1,1), (0,9) of the order {(a,b) : a = b mod 9}
    let req = json!({
        "op": "congruence_number",
        "algebra": {
            "p": 3,
            "dim": 2,
            "structure": [[[[1, 1], [0, 1]], [[0, 1], [1, 1]]], [[[0, 1], [1, 1]], [[0, 1], [9, 1]]]],
            "unit": [[1, 1], [0, 1]]
        },
        "lambda": [[1, 1], [0, 1]]
    });
    assert_eq!(output(&compute(&req)), json!({ "exponent": 2 }));
}

#[test]
fn evaluation_at_a_root_is_a_pole() {
    let req = json!({ "op": "evaluate", "factor": { "q": 5, "coefficients": [[1, 1], [-5, 1]] }, "s": 1 });
    assert_eq!(output(&compute(&req)), json!({ "pole": true }));
}

#[test]
fn schema_violation_names_the_path() {
    let req = json!({ "op": "standard_factor", "satake": { "n": 3, "q": 5, "alphas": [[1, 1], [2, 0], [3, 1]] } });
    let out = compute(&req);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("satake.alphas"), "{}", err);
}

#[test]
fn unknown_operation_is_rejected() {
    assert_eq!(compute(&json!({ "op": "nope" })).status.code(), Some(2));
}
