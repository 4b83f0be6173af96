//! End-to-end tests of the `polyshift` binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyshift"))
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON report")
}

#[test]
fn set_reports_the_shift() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "field: p=101\nn: 1\nf: x1^2\ng: x1^2+2*x1+1\n",
    );
    let report = stdout_json(&run(&["set", &file, "--json"]));
    assert_eq!(report["status"], "shift");
    assert_eq!(report["shift"], serde_json::json!(["1"]));
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["algorithm"], "main");
    assert!(report["queries_used"].as_u64().unwrap() > 0);
}

#[test]
fn pit_detects_the_zero_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "field: p=101\nn: 2\nf: x1*x2 - x2*x1\n",
    );
    let report = stdout_json(&run(&["pit", &file, "--json"]));
    assert_eq!(report["status"], "zero");
}

#[test]
fn stabilizer_of_difference_square() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "field: p=101\nn: 2\nf: (x1-x2)^2\n",
    );
    let report = stdout_json(&run(&["stabilizer", &file, "--json"]));
    assert_eq!(report["stabilizer_dim"], 1);
    assert_eq!(report["stabilizer_basis"], serde_json::json!([["1", "1"]]));
}

#[test]
fn json_reports_are_reproducible_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "n: 2\nf: (x1+2*x2)^3 + x1\ng: (x1+2*x2+5)^3 + x1 + 2\n",
    );
    let mut first = stdout_json(&run(&["set", &file, "--json", "--seed", "7"]));
    let mut second = stdout_json(&run(&["set", &file, "--json", "--seed", "7"]));
    first["wall_time_ms"] = serde_json::Value::Null;
    second["wall_time_ms"] = serde_json::Value::Null;
    assert_eq!(first, second);
    assert_eq!(first["status"], "shift");
}

#[test]
fn printed_shifts_verify_back() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "n: 2\nf: x1*x2 + x2^2\ng: (x1+3)*(x2+4) + (x2+4)^2\n",
    );
    let report = stdout_json(&run(&["set", &file, "--json"]));
    assert_eq!(report["status"], "shift");
    let shift: Vec<String> = report["shift"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let joined = shift.join(",");
    let verified = stdout_json(&run(&["set", &file, "--json", "--verify", &joined]));
    assert_eq!(verified["status"], "verified");
    let rejected = stdout_json(&run(&["set", &file, "--json", "--verify", "1,1"]));
    assert_eq!(rejected["status"], "rejected");
}

#[test]
fn inequivalent_pair_exits_zero_with_fail_status() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "inst.txt", "n: 1\nf: x1^2\ng: 2*x1^2\n");
    let out = run(&["set", &file, "--json"]);
    assert!(out.status.success(), "fail verdicts are not process errors");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "fail");
}

#[test]
fn set_alt_and_algorithm_flag_agree() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "n: 2\nf: (x1+x2)^2\ng: (x1+x2+3)^2\n",
    );
    let alt = stdout_json(&run(&["set-alt", &file, "--json"]));
    let flagged = stdout_json(&run(&["set", &file, "--json", "--algorithm", "alt"]));
    assert_eq!(alt["status"], "shift");
    assert_eq!(alt["algorithm"], "alt");
    assert_eq!(flagged["algorithm"], "alt");
    assert_eq!(alt["shift"], flagged["shift"]);
}

#[test]
fn operational_errors_exit_two() {
    let out = run(&["set", "/nonexistent/path.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "n: 2\nf: x3\ng: x1\n");
    let out = run(&["set", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dense_declarations_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "n: 1\nf: dense: x1^3 + 1\ng: dense: x1^3 + 3*x1^2 + 3*x1 + 2\n",
    );
    let report = stdout_json(&run(&["set", &file, "--json", "--verify-dense"]));
    assert_eq!(report["status"], "shift");
    assert_eq!(report["shift"], serde_json::json!(["1"]));
    // Field override: the same text over the rationals.
    let report = stdout_json(&run(&["set", &file, "--json", "--field", "rational"]));
    assert_eq!(report["status"], "shift");
}

#[test]
fn hitting_set_strategy_runs() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "n: 2\nf: x1^2*x2\ng: (x1+1)^2*(x2+2)\n",
    );
    let report = stdout_json(&run(&[
        "set",
        &file,
        "--json",
        "--strategy",
        "hitting-set",
        "--hs-size",
        "128",
    ]));
    assert_eq!(report["status"], "shift");
    let lin = write(
        dir.path(),
        "lin.txt",
        "n: 2\ng: 2*x1+3*x2\nh: x1\nh: x2\n",
    );
    let report = stdout_json(&run(&["lindep", &lin, "--json", "--strategy", "white-box"]));
    assert_eq!(report["status"], "solution");
    assert_eq!(report["coefficients"], serde_json::json!(["2", "3"]));
}

#[test]
fn rational_field_instances() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "inst.txt",
        "field: rational\nn: 1\nf: 1/2*x1^2\ng: 1/2*x1^2 + 3/2*x1 + 9/8\n",
    );
    let report = stdout_json(&run(&["set", &file, "--json"]));
    assert_eq!(report["status"], "shift");
    assert_eq!(report["shift"], serde_json::json!(["3/2"]));
}
