use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn zetarep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetarep"))
        .args(args)
        .env_remove("ZETAREP_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_of(args: &[&str]) -> Value {
    let o = zetarep(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&text).expect("schema is json");
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{name} output violates its schema: {msgs:?}");
}

/// Parses the data rows of CSV output, skipping the context comment line.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(v: &Value) -> f64 {
    v.as_str().expect("decimal string").parse().expect("parses as f64")
}

#[test]
fn eval_integral_basel() {
    let v = json_of(&["eval", "--s", "2+0i", "--method", "integral"]);
    assert_valid("eval", &v);
    let re = num(&v["result"]["value"]["re"]);
    assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
    assert!(v["result"]["error_estimate"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["context"]["bits"], 128);
}

#[test]
fn eval_series_carries_error_estimate() {
    let v = json_of(&["eval", "--s", "2", "--method", "series", "--max-terms", "2000"]);
    assert_valid("eval", &v);
    let re = num(&v["result"]["value"]["re"]);
    let err = v["result"]["error_estimate"].as_f64().unwrap();
    assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() <= err);
}

#[test]
fn sn_table_at_one_is_harmonic() {
    let o = zetarep(&["sn-table", "--s", "1+0i", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# zetarep sn-table bits=128"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    for (i, r) in rows.iter().enumerate() {
        let n = (i + 1) as f64;
        assert_eq!(r[0], (i + 1).to_string());
        assert!((r[1].parse::<f64>().unwrap() - 1.0 / n).abs() < 1e-16);
        assert_eq!(r[2], "0");
    }
    let v = json_of(&["sn-table", "--s", "1+0i", "--n-max", "5", "--format", "json"]);
    assert_valid("sn-table", &v);
}

#[test]
fn coeffs_a0_is_one() {
    let o = zetarep(&["coeffs", "--kind", "a", "--n-max", "0"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert!((rows[0][1].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    for kind in ["a", "b", "c"] {
        let v = json_of(&["coeffs", "--kind", kind, "--y", "1", "--n-max", "6", "--format", "json", "--bits", "96"]);
        assert_valid("coeffs", &v);
        assert_eq!(v["result"]["values"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn radius_laguerre_limits_zeros_validate() {
    let v = json_of(&["radius", "--y", "2", "--n-max", "20", "--window-start", "5", "--bits", "96"]);
    assert_valid("radius", &v);
    let v = json_of(&["laguerre", "--n-max", "12", "--z", "0.3", "--format", "json", "--bits", "96"]);
    assert_valid("laguerre", &v);
    assert!(v["result"]["consistency"]["difference"].as_f64().unwrap() < 1e-3);
    let v = json_of(&["laguerre", "--n-max", "4", "--format", "json", "--bits", "96"]);
    assert_valid("laguerre", &v);
    assert!(v["result"]["consistency"].is_null());
    let v = json_of(&["limits", "--kind", "L62_deriv_ratio", "--s", "2", "--x", "0.5,0.9", "--format", "json"]);
    assert_valid("limits", &v);
    assert_eq!(v["result"]["samples"].as_array().unwrap().len(), 2);
    let v = json_of(&["zeros", "--t-min", "13.9", "--t-max", "14.4", "--format", "json", "--tol", "1e-20"]);
    assert_valid("zeros", &v);
    let zs = v["result"].as_array().unwrap();
    assert_eq!(zs.len(), 1);
    assert!((num(&zs[0]["im"]) - 14.134725141734693).abs() < 1e-9);
}

#[test]
fn verify_outputs() {
    let o = zetarep(&["verify", "--suite", "core"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.ends_with("0 failed")), "{text}");
    let v = json_of(&["verify", "--suite", "coeffs", "--format", "json"]);
    assert_valid("verify", &v);
}

#[test]
fn exit_codes() {
    assert_eq!(zetarep(&["eval", "--s", "abc"]).status.code(), Some(2));
    assert_eq!(zetarep(&["eval", "--s", "-1", "--method", "integral"]).status.code(), Some(2));
    assert_eq!(zetarep(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(zetarep(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(zetarep(&["eval", "--s", "2", "--bits", "8"]).status.code(), Some(2));
    assert_eq!(zetarep(&["limits", "--kind", "bogus", "--s", "2"]).status.code(), Some(2));
    assert_eq!(zetarep(&["zeros", "--t-min", "14", "--t-max", "13"]).status.code(), Some(2));
    // The S_n tableau for N = 20000 needs more bits than the default ceiling.
    assert_eq!(zetarep(&["sn-table", "--s", "0.5", "--n-max", "20000"]).status.code(), Some(3));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["coeffs", "--kind", "c", "--y", "2", "--n-max", "8", "--format", "json"];
    let a = zetarep(&args);
    let b = zetarep(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["limits", "--kind", "psi_over_nphi", "--s", "0.5+2i", "--x", "0.9,0.99"];
    assert_eq!(zetarep(&args).stdout, zetarep(&args).stdout);
}

#[test]
fn output_file_and_env_precision() {
    let dir = std::env::temp_dir().join(format!("zetarep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eval.json");
    let o = zetarep(&["eval", "--s", "3", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("eval", &v);
    std::fs::remove_dir_all(&dir).unwrap();

    let o = Command::new(env!("CARGO_BIN_EXE_zetarep"))
        .args(["eval", "--s", "2"])
        .env("ZETAREP_BITS", "200")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["context"]["bits"], 200);
}
