//! Canonical text form for solver reports and simulation metrics.
//!
//! One key per line, keys sorted, reals with nine significant digits and never
//! in exponent notation. Arrays of scalars stay on one line, so a report that
//! differs only in elapsed time differs on exactly one line.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use super::{Result, ScenarioError, SCHEMA_VERSION};
use crate::sim::SimMetrics;
use crate::solvers::SolveReport;

const SIGNIFICANT: usize = 9;

/// Nine significant digits, positional notation, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0.0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x.abs());
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exponent.parse::<i32>().expect("integer exponent") + 1;
    let mut text = if point <= 0 {
        format!("0.{}{digits}", "0".repeat((-point) as usize))
    } else if point as usize >= digits.len() {
        format!("{digits}{}.0", "0".repeat(point as usize - digits.len()))
    } else {
        let (whole, frac) = digits.split_at(point as usize);
        format!("{whole}.{frac}")
    };
    while text.ends_with('0') && !text.ends_with(".0") {
        text.pop();
    }
    if x < 0.0 {
        text.insert(0, '-');
    }
    text
}

fn write_scalar(out: &mut String, value: &Value) {
    match value {
        Value::Number(n) if n.is_f64() => out.push_str(&format_real(n.as_f64().unwrap_or(0.0))),
        other => out.push_str(&other.to_string()),
    }
}

fn is_scalar(value: &Value) -> bool {
    !matches!(value, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match value {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_scalar(out, item);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*key], indent + 1);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        scalar => write_scalar(out, scalar),
    }
}

/// Canonical text of any serializable record, tagged with `kind` and the schema version.
pub fn to_canonical<T: Serialize>(kind: &str, record: &T) -> String {
    let mut map = match serde_json::to_value(record).expect("records serialize") {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("value".into(), other);
            map
        }
    };
    map.insert("kind".into(), Value::String(kind.into()));
    map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    let mut out = String::new();
    write_value(&mut out, &Value::Object(map), 0);
    out.push('\n');
    out
}

pub fn save_report(report: &SolveReport) -> String {
    to_canonical("solve_report", report)
}

pub fn save_metrics(metrics: &SimMetrics) -> String {
    to_canonical("sim_metrics", metrics)
}

fn load_tagged<T: DeserializeOwned>(text: &str, kind: &str) -> Result<T> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
    let map = value.as_object_mut().ok_or_else(|| ScenarioError::Syntax("expected a JSON object".into()))?;
    match map.remove("schema_version").and_then(|v| v.as_i64()) {
        Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(ScenarioError::UnsupportedVersion(other)),
        None => return Err(ScenarioError::Syntax("missing schema_version".into())),
    }
    match map.remove("kind") {
        Some(Value::String(k)) if k == kind => {}
        Some(other) => return Err(ScenarioError::UnknownKind(other.to_string())),
        None => return Err(ScenarioError::Syntax("missing kind".into())),
    }
    serde_json::from_value(value).map_err(|e| ScenarioError::Syntax(e.to_string()))
}

pub fn load_report(text: &str) -> Result<SolveReport> {
    load_tagged(text, "solve_report")
}

pub fn load_metrics(text: &str) -> Result<SimMetrics> {
    load_tagged(text, "sim_metrics")
}

/// Blanks the value on every `elapsed_ms` line so runs can be compared byte-for-byte.
pub fn mask_elapsed(text: &str) -> String {
    text.lines()
        .map(|line| match line.split_once("\"elapsed_ms\": ") {
            Some((head, tail)) => format!("{head}\"elapsed_ms\": 0{}", if tail.ends_with(',') { "," } else { "" }),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
        + if text.ends_with('\n') { "\n" } else { "" }
}
