use std::process::{Command, Output};

use serde_json::Value;
use unimodular_moments::output::schema;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unimodular-moments"))
        .args(args)
        .env_remove("MOMENTS_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let command = v["command"].as_str().unwrap().to_string();
    let schema: Value = serde_json::from_str(schema(&command).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} violates its schema: {errors:?}");
    v
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let out = run(args);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema_version=1.0"));
    let body: String = lines.map(|l| format!("{l}\n")).collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect()
}

fn triples(v: &Value) -> Vec<(u64, u64, u64)> {
    v["results"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["two_k"].as_u64().unwrap(), r["j"].as_u64().unwrap(), r["count"].as_u64().unwrap()))
        .collect()
}

#[test]
fn count_k3_csv() {
    let rows = csv_rows(&["count", "--k", "3", "--format", "csv"]);
    assert!(rows.contains(&vec!["6".into(), "2".into(), "19".into()]));
    assert!(rows.contains(&vec!["6".into(), "3".into(), "24".into()]));
}

#[test]
fn count_k1_json() {
    let v = json(&["count", "--k", "1"]);
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(triples(&v), vec![(2, 1, 1), (2, 2, 1)]);
}

#[test]
fn brute_and_pruned_payloads_match() {
    let a = json(&["count", "--k", "3", "--brute"]);
    let b = json(&["count", "--k", "3"]);
    let c = json(&["count", "--k", "3", "--no-prune", "--workers", "3"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(b["results"], c["results"]);
}

#[test]
fn count_range_and_csv_json_agree() {
    let v = json(&["count", "--k-range", "2..4"]);
    let from_json: Vec<Vec<String>> = triples(&v)
        .into_iter()
        .map(|(a, b, c)| vec![a.to_string(), b.to_string(), c.to_string()])
        .collect();
    assert_eq!(from_json, csv_rows(&["count", "--k-range", "2..4", "--format", "csv"]));
    assert_eq!(from_json.len(), 3 + 4 + 5);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--k", "x"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--k", "1", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--k-range", "4..2"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--k", "6", "--brute"]).status.code(), Some(3));
    assert_eq!(run(&["mc", "--n", "300", "--k", "2", "--samples", "100"]).status.code(), Some(3));
    assert_eq!(run(&["mc", "--n", "2", "--k", "2", "--samples", "5"]).status.code(), Some(2));
    assert_eq!(run(&["schema", "nope"]).status.code(), Some(2));
}

#[test]
fn poly_outputs() {
    let v = json(&["poly", "--k", "6"]);
    let p = &v["results"]["polynomials"][0];
    let mono: Vec<i64> = p["monomial"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(mono, vec![0, -46, 262, -624, 772, -495, 132]);
    assert_eq!(json(&["poly", "--k", "1"])["results"]["polynomials"][0]["polynomial"], "N^2");
    assert_eq!(json(&["poly", "--k", "2"])["results"]["polynomials"][0]["polynomial"], "2N^3 - N^2");

    let rows = csv_rows(&["poly", "--k", "2", "--format", "csv"]);
    assert!(rows.contains(&vec!["2".into(), "monomial".into(), "3".into(), "2".into()]));
    assert!(rows.contains(&vec!["2".into(), "pochhammer".into(), "2".into(), "5".into()]));
}

fn disproofs(v: &Value) -> Vec<(u64, u64, u64, u64)> {
    v["results"]["disproofs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| {
            let g = |key: &str| d[key].as_u64().unwrap();
            (g("k"), g("j"), g("conjectured"), g("actual"))
        })
        .collect()
}

#[test]
fn conjecture_outputs() {
    assert!(disproofs(&json(&["conjecture", "--k-max", "5"])).is_empty());
    let six = disproofs(&json(&["conjecture", "--k-max", "6"]));
    assert_eq!(six, vec![(6, 3, 10988, 11000), (6, 4, 21109, 21121), (6, 5, 11825, 11827)]);
    let eight = disproofs(&json(&["conjecture", "--k-max", "8"]));
    assert!(eight.contains(&(8, 3, 559130, 566234)));
    assert!(eight.contains(&(7, 3, 78428, 78806)));
    assert!(eight.contains(&(7, 4, 248339, 249137)));

    let rows = csv_rows(&["conjecture", "--k-max", "6", "--format", "csv"]);
    assert!(rows.contains(&vec!["12".into(), "3".into(), "11000".into(), "10988".into(), "12".into()]));
}

#[test]
fn mc_outputs() {
    let first = json(&["mc", "--n", "5", "--k", "1", "--samples", "100"]);
    assert_eq!(first["results"]["mean"].as_f64(), Some(0.2));
    assert_eq!(first["results"]["std_error"].as_f64(), Some(0.0));
    assert_eq!(first["results"]["z"].as_f64(), Some(0.0));

    let args = ["mc", "--n", "2", "--k", "3", "--samples", "100000", "--seed", "42"];
    let a = json(&args);
    let z = a["results"]["z"].as_f64().unwrap();
    assert!(z.abs() <= 4.0, "z = {z}");
    assert_eq!(a["results"]["exact"].as_f64(), Some(0.3125));

    let b = json(&["mc", "--n", "2", "--k", "3", "--samples", "100000", "--seed", "42", "--workers", "3"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["parameters"], b["parameters"]);

    let csv = csv_rows(&["mc", "--n", "2", "--k", "3", "--samples", "100000", "--seed", "42", "--format", "csv"]);
    let mean: f64 = csv[0][4].parse().unwrap();
    assert_eq!(mean.to_bits(), a["results"]["mean"].as_f64().unwrap().to_bits());
}

#[test]
fn workers_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_unimodular-moments"))
        .args(["count", "--k", "4"])
        .env("MOMENTS_WORKERS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_unimodular-moments"))
        .args(["count", "--k", "4"])
        .env("MOMENTS_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn schema_subcommand_prints_schema() {
    let out = run(&["schema", "count"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["properties"]["command"]["const"], "count");
}
