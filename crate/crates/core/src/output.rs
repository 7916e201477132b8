//! Machine-readable emission of command results.
//!
//! JSON is canonical: every emission is an [`OutputRecord`]. CSV is a flat
//! projection of the same numbers, one row per table entry or coefficient.
//! Integers whose magnitude exceeds `2^53` are written as decimal strings in
//! JSON so that consumers parsing numbers as doubles lose nothing.

use std::fmt::Write as _;

use num::{BigInt, Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::basis::{compare_row, Disproof, MomentPolynomial};
use crate::enumerator::FRow;
use crate::montecarlo::MomentEstimate;

pub const SCHEMA_VERSION: &str = "1.0";

const MAX_SAFE_INTEGER: u64 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub runtime_ms: u64,
}

/// One CSV cell. Keeping cells typed lets tests compare CSV and JSON numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            // shortest round-trip representation
            Cell::Float(x) => format!("{x:?}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<u128> for Cell {
    fn from(v: u128) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v.into())
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Int(v.clone())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Results of one command in both projections.
#[derive(Debug, Clone, PartialEq)]
pub struct Payload {
    pub results: Value,
    pub table: Table,
}

/// JSON value for an exact integer.
pub fn int_value(v: &BigInt) -> Value {
    match v.abs().to_u64() {
        Some(m) if m <= MAX_SAFE_INTEGER => {
            if v.is_negative() {
                json!(-(m as i64))
            } else {
                json!(m)
            }
        }
        _ => Value::String(v.to_string()),
    }
}

/// JSON value for a float; non-finite values become strings.
pub fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(x.to_string()), Value::Number)
}

pub fn count_payload(rows: &[FRow]) -> Payload {
    let mut table = Table { header: vec!["two_k", "j", "count"], rows: Vec::new() };
    let mut out = Vec::new();
    for row in rows {
        for (i, &c) in row.counts().iter().enumerate() {
            let j = i + 1;
            out.push(json!({
                "two_k": row.two_k(),
                "j": j,
                "count": int_value(&c.into()),
            }));
            table.rows.push(vec![row.two_k().into(), j.into(), c.into()]);
        }
    }
    Payload { results: json!({ "rows": out }), table }
}

pub fn poly_payload(polys: &[MomentPolynomial]) -> Payload {
    let mut table = Table { header: vec!["k", "basis", "power", "coefficient"], rows: Vec::new() };
    let mut out = Vec::new();
    for p in polys {
        for (basis, coeffs) in [("pochhammer", p.pochhammer_coeffs()), ("monomial", p.monomial_coeffs())] {
            for (i, c) in coeffs.iter().enumerate() {
                table.rows.push(vec![p.k().into(), Cell::Text(basis.into()), (i + 1).into(), c.into()]);
            }
        }
        out.push(json!({
            "k": p.k(),
            "pochhammer": p.pochhammer_coeffs().iter().map(int_value).collect::<Vec<_>>(),
            "monomial": p.monomial_coeffs().iter().map(int_value).collect::<Vec<_>>(),
            "polynomial": p.to_monomial_string(),
        }));
    }
    Payload { results: json!({ "polynomials": out }), table }
}

pub fn conjecture_payload(rows: &[FRow], disproofs: &[Disproof]) -> Payload {
    let mut table = Table {
        header: vec!["two_k", "j", "actual", "conjectured", "difference"],
        rows: Vec::new(),
    };
    let mut comparison = Vec::new();
    for row in rows {
        for (j, conjectured, actual) in compare_row(row) {
            let diff = &actual - &conjectured;
            comparison.push(json!({
                "two_k": row.two_k(),
                "j": j,
                "actual": int_value(&actual),
                "conjectured": int_value(&conjectured),
                "difference": int_value(&diff),
            }));
            table.rows.push(vec![
                row.two_k().into(),
                j.into(),
                (&actual).into(),
                (&conjectured).into(),
                (&diff).into(),
            ]);
        }
    }
    let disproofs: Vec<Value> = disproofs
        .iter()
        .map(|d| {
            json!({
                "k": d.k,
                "j": d.j,
                "conjectured": int_value(&d.conjectured),
                "actual": int_value(&d.actual),
            })
        })
        .collect();
    Payload { results: json!({ "comparison": comparison, "disproofs": disproofs }), table }
}

pub fn mc_payload(estimate: &MomentEstimate, exact: f64, z: f64) -> Payload {
    let table = Table {
        header: vec!["n", "k", "samples", "seed", "mean", "std_error", "exact", "z"],
        rows: vec![vec![
            estimate.n.into(),
            estimate.k.into(),
            Cell::Int(estimate.sample_count.into()),
            Cell::Int(estimate.seed.into()),
            estimate.mean.into(),
            estimate.std_error.into(),
            exact.into(),
            z.into(),
        ]],
    };
    let results = json!({
        "n": estimate.n,
        "k": estimate.k,
        "samples": estimate.sample_count,
        "seed": estimate.seed,
        "mean": float_value(estimate.mean),
        "std_error": float_value(estimate.std_error),
        "exact": float_value(exact),
        "z": float_value(z),
    });
    Payload { results, table }
}

impl Payload {
    pub fn into_record(self, command: &str, parameters: Map<String, Value>, runtime_ms: u64) -> OutputRecord {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            parameters,
            results: self.results,
            runtime_ms,
        }
    }
}

pub fn render_json(record: &OutputRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("records always serialize");
    s.push('\n');
    s
}

/// CSV with a leading `# schema_version=...` comment line.
pub fn render_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii");
    let mut out = String::new();
    let _ = writeln!(out, "# schema_version={SCHEMA_VERSION}");
    out.push_str(&body);
    out
}

/// JSON Schema for the record emitted by `command`.
pub fn schema(command: &str) -> Option<&'static str> {
    match command {
        "count" => Some(include_str!("../schemas/count.schema.json")),
        "poly" => Some(include_str!("../schemas/poly.schema.json")),
        "conjecture" => Some(include_str!("../schemas/conjecture.schema.json")),
        "mc" => Some(include_str!("../schemas/mc.schema.json")),
        _ => None,
    }
}
