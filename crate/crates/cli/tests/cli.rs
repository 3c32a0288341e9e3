use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_turan-cert"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> JSONSchema {
    let out = run(&["report-schema"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    JSONSchema::compile(&v).expect("schema compiles")
}

fn strip_runtime(v: &mut Value) {
    for r in v.as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("runtime_ms");
    }
}

#[test]
fn compute_examples() {
    assert_eq!(stdout(&run(&["compute", "q", "9"])), "9 8\n");
    assert_eq!(stdout(&run(&["compute", "pk", "--k", "3", "3"])), "3 2\n");
    assert_eq!(stdout(&run(&["compute", "q", "0"])), "0 1\n");
    assert_eq!(stdout(&run(&["compute", "q", "7..=9"])), "7 5\n8 6\n9 8\n");
    assert_eq!(stdout(&run(&["compute", "q", "7..9"])), "7 5\n8 6\n");
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["compute", "q", "x"][..],
        &["compute", "q", "9..3"],
        &["compute", "pk", "5"],
        &["compute", "q", "--k", "3", "5"],
        &["compute", "pk", "--k", "1", "5"],
        &["verify", "nonsense"],
        &["verify", "logconcave", "--bound", "10"],
        &["verify", "pk", "--bound", "500"],
        &["verify", "logconcave", "--precision", "4"],
        &["verify", "logconcave", "--jobs", "0"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_logconcave_passes_and_validates() {
    let out = run(&["verify", "logconcave", "--bound", "5000"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["params"]["holds_from"], 33);
    assert!(schema().is_valid(&v));
}

#[test]
fn verify_pk_four() {
    let out = run(&["verify", "pk", "--k", "4", "--bound", "3000"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let froms: Vec<&Value> = v.as_array().unwrap().iter().map(|r| &r["params"]["holds_from"]).collect();
    assert_eq!(froms, [&json!(17), &json!(64)]);
}

#[test]
fn symbolic_suite_fails_only_on_printed_coefficient() {
    let out = run(&["verify", "symbolic"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(schema().is_valid(&v));
    let failed: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] != "pass")
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["symbolic_d_17"]);
}

#[test]
fn schema_accepts_samples_and_rejects_witnessless_scan_failure() {
    let s = schema();
    let pass = json!([{ "check": "logconcave", "params": { "scan": true }, "status": "pass",
                        "precision_bits": 0, "runtime_ms": 4 }]);
    let fail = json!([{ "check": "logconcave", "params": { "scan": true }, "status": "fail",
                        "witness": 40, "precision_bits": 0, "runtime_ms": 4 }]);
    let missing = json!([{ "check": "logconcave", "params": { "scan": true }, "status": "fail",
                           "precision_bits": 0, "runtime_ms": 4 }]);
    let non_scan = json!([{ "check": "pinelis", "params": {}, "status": "fail",
                            "precision_bits": 192, "runtime_ms": 4 }]);
    let bad_status = json!([{ "check": "x", "params": {}, "status": "ok", "precision_bits": 0, "runtime_ms": 0 }]);
    assert!(s.is_valid(&pass));
    assert!(s.is_valid(&fail));
    assert!(!s.is_valid(&missing));
    assert!(s.is_valid(&non_scan));
    assert!(!s.is_valid(&bad_status));
}

#[test]
fn reports_are_deterministic_modulo_runtime() {
    let args = ["verify", "invariants", "--bound", "1000"];
    let mut a: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    let mut b: Value = serde_json::from_slice(&bin().args(args).args(["--jobs", "1"]).output().unwrap().stdout).unwrap();
    strip_runtime(&mut a);
    strip_runtime(&mut b);
    assert_eq!(a, b);
}

#[test]
fn csv_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = run(&["verify", "turan3", "--bound", "2000", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,params,status,witness"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.contains(",pass,")));
}

#[test]
fn environment_overrides_flags() {
    let out = bin().args(["verify", "logconcave"]).env("TURAN_CERT_BOUND", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["verify", "logconcave"]).env("TURAN_CERT_BOUND", "300").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["params"]["bound"], 300);
}

#[test]
fn cache_dir_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = stdout(&run(&["compute", "q", "100..=102", "--cache-dir", d]));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = stdout(&run(&["compute", "q", "100..=102", "--cache-dir", d]));
    assert_eq!(first, second);
    assert!(first.starts_with("100 444793\n"));
}
