use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gauss-qec"));
    c.env_remove("GAUSS_QEC_MAX_QUBITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn run_config(body: &str) -> (Output, Value) {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", body);
    let o = run(&["run", "--config", &cfg]);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or(Value::Null);
    (o, v)
}

#[test]
fn decode_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results.csv");
    let o = run(&["code", "decode-sweep", "--dims", "4", "--errors", "x", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "error_qubit,error_pauli,syndrome,status,correction");
    assert_eq!(lines.len(), 9);
    assert!(lines[1..].iter().all(|l| l.contains(",corrected,")));
}

#[test]
fn uncorrectable_errors_exit_one() {
    let o = run(&["code", "decode-sweep", "--dims", "3", "--errors", "all", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("18 errors:"), "{}", stdout(&o));
}

#[test]
fn config_sweep_gives_eight_records() {
    let (o, v) = run_config(r#"{"experiments": [{"dims": [4], "sweep": "x-exhaustive"}]}"#);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 8);
    assert!(records.iter().all(|r| r["passed"] == Value::Bool(true)));
}

#[test]
fn config_spectrum_check_gives_one_record() {
    let (o, v) = run_config(r#"{"experiments": [{"dims": [3], "check": "spectrum-equivalence"}]}"#);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 1);
    let gap = records[0]["metrics"][0]["value"].as_f64().unwrap();
    assert!(gap <= 1e-9);
}

#[test]
fn empty_config_succeeds() {
    let (o, v) = run_config(r#"{"experiments": []}"#);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v, Value::Array(vec![]));
}

#[test]
fn malformed_config_reports_line() {
    let (o, _) = run_config("{\n  \"experiments\": [\n    {\"dims\": [3], \"chek\": \"validate\"}\n  ]\n}");
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3") && err.contains("chek"), "{err}");
}

#[test]
fn capacity_error_names_cap() {
    let o = bin()
        .env("GAUSS_QEC_MAX_QUBITS", "8")
        .args(["ham", "verify", "--dims", "6"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap of 8"), "{}", stderr(&o));
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(run(&["evolve", "trotter", "--dims", "3"]).status.code(), Some(2));
}

#[test]
fn same_config_same_json() {
    let body = r#"{"experiments": [
        {"id": "b", "dims": [3], "evolve": {"kind": "trotter", "t": 0.5, "steps": 4, "order": 1}},
        {"id": "a", "dims": [3], "code": "phase-first",
         "sweep": {"class": "all", "mode": "sampled", "samples": 12, "seed": 9}},
        {"id": "c", "check": "hamming11-fixture"}
    ]}"#;
    let strip = |mut v: Value| {
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("timestamp");
        }
        serde_json::to_string(&v).unwrap()
    };
    let (o1, v1) = run_config(body);
    let (_, v2) = run_config(body);
    assert_eq!(o1.status.code(), Some(0), "{}", stderr(&o1));
    assert_eq!(strip(v1.clone()), strip(v2));
    let ids: Vec<&str> = v1.as_array().unwrap().iter().map(|r| r["experiment"].as_str().unwrap()).collect();
    assert_eq!(ids.first(), Some(&"a"));
    assert_eq!(ids.last(), Some(&"c"));
}

#[test]
fn config_output_paths() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let csv = dir.path().join("out.csv");
    let body = format!(
        r#"{{"experiments": [{{"dims": [3], "check": "gauge-invariance"}}],
            "output": {{"json": {:?}, "csv": {:?}}}}}"#,
        json.to_str().unwrap(),
        csv.to_str().unwrap()
    );
    let cfg = write_config(dir.path(), "cfg.json", &body);
    let o = run(&["run", "--config", &cfg, "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("1 records: 1 passed, 0 failed"));
    let records: Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 1);
    let csv = fs::read_to_string(csv).unwrap();
    assert!(csv.starts_with("experiment,name,metric,value,expected,tolerance,verdict\n"));
}

#[test]
fn evolve_outputs() {
    let o = run(&["evolve", "oaa-check", "--pauli", "+XZX", "--t", "0.7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["success_min"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(v["wall_clock_seconds"].is_number());

    let o = run(&["evolve", "lcu-check", "--dims", "4", "--m", "0.9", "--eps", "1.1", "--lambdaE", "0.7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["toffoli_count"], 3);
    assert!((v["eta"].as_f64().unwrap() - 2.95).abs() < 1e-12);

    let o = run(&["evolve", "trotter", "--dims", "3", "--t", "0.5", "--steps", "8", "--order", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error_norm"].as_f64().unwrap() > 0.0);
    assert_eq!(v["lowered_clifford"], true);
}

#[test]
fn ham_build_forms() {
    for form in ["fermionic", "pauli", "logical", "boson"] {
        let o = run(&["ham", "build", "--dims", "3", "--form", form]);
        assert_eq!(o.status.code(), Some(0), "{form}: {}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(!v["terms"].as_array().unwrap().is_empty(), "{form}");
    }
}

#[test]
fn acceptance_suite_passes() {
    let o = run(&["suite", "acceptance"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 15);
}
