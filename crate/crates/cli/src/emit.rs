//! Deterministic report emission.
//!
//! JSON objects are serialized with alphabetically ordered keys and every
//! floating-point number rendered with twelve significant digits, so a report
//! built from the same inputs is byte-identical across runs. Non-finite
//! numbers are rejected: they always indicate an upstream bug.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

/// One CSV cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

/// A rectangular table with a header row.
#[derive(Clone, Debug)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// Wrap a float for JSON emission, rejecting non-finite values.
pub fn float(x: f64) -> Result<Value, CliError> {
    // Canonicalize -0.0 so sign noise never reaches the output bytes.
    let x = if x == 0.0 { 0.0 } else { x };
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| CliError::Runtime(format!("cannot serialize non-finite number {x}")))
}

/// Wrap an optional float; `None` becomes JSON null.
pub fn opt_float(x: Option<f64>) -> Result<Value, CliError> {
    match x {
        Some(v) => float(v),
        None => Ok(Value::Null),
    }
}

fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn push_json_string(s: &str, out: &mut String) {
    // serde_json's escaping of a bare string is exactly the JSON string token.
    out.push_str(&serde_json::to_string(s).expect("string serialization is infallible"));
}

fn push_json(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let pad_in = "  ".repeat(indent + 1);
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| n.is_f64()) {
                out.push_str(&format_float(x));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => push_json_string(s, out),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                out.push('\n');
                out.push_str(&pad_in);
                push_json(item, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
            }
            out.push('\n');
            out.push_str(&pad);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                out.push('\n');
                out.push_str(&pad_in);
                push_json_string(key, out);
                out.push_str(": ");
                push_json(item, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
            }
            out.push('\n');
            out.push_str(&pad);
            out.push('}');
        }
    }
}

/// Render a JSON document: sorted keys, two-space indent, trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    push_json(value, 0, &mut out);
    out.push('\n');
    out
}

fn push_csv_field(cell: &Cell, out: &mut String) {
    match cell {
        Cell::Null => {}
        Cell::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Cell::Int(i) => out.push_str(&i.to_string()),
        Cell::Float(x) => out.push_str(&format_float(*x)),
        Cell::Str(s) => {
            if s.contains([',', '"', '\n', '\r']) {
                out.push('"');
                out.push_str(&s.replace('"', "\"\""));
                out.push('"');
            } else {
                out.push_str(s);
            }
        }
    }
}

/// Render a CSV document with a header row and a trailing newline.
pub fn render_csv(table: &Table) -> Result<String, CliError> {
    let mut out = String::new();
    for (i, column) in table.header.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_csv_field(&Cell::Str(column.clone()), &mut out);
    }
    out.push('\n');
    for row in &table.rows {
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            if let Cell::Float(x) = cell {
                if !x.is_finite() {
                    return Err(CliError::Runtime(format!(
                        "cannot serialize non-finite number {x}"
                    )));
                }
            }
            push_csv_field(cell, &mut out);
        }
        out.push('\n');
    }
    Ok(out)
}

fn flatten_value(prefix: &str, value: &Value, rows: &mut Vec<Vec<Cell>>) {
    let leaf = |cell: Cell, rows: &mut Vec<Vec<Cell>>| {
        rows.push(vec![Cell::Str(prefix.to_string()), cell]);
    };
    match value {
        Value::Null => leaf(Cell::Null, rows),
        Value::Bool(b) => leaf(Cell::Bool(*b), rows),
        Value::Number(n) => {
            if n.is_f64() {
                leaf(Cell::Float(n.as_f64().unwrap()), rows);
            } else if let Some(i) = n.as_i64() {
                leaf(Cell::Int(i), rows);
            } else {
                leaf(Cell::Str(n.to_string()), rows);
            }
        }
        Value::String(s) => leaf(Cell::Str(s.clone()), rows),
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten_value(&format!("{prefix}.{i}"), item, rows);
            }
        }
        Value::Object(map) => {
            for (key, item) in map {
                let path =
                    if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten_value(&path, item, rows);
            }
        }
    }
}

/// Flatten a JSON document into a two-column key/value table (dotted paths).
pub fn flatten(value: &Value) -> Table {
    let mut rows = Vec::new();
    flatten_value("", value, &mut rows);
    Table { header: vec!["key".into(), "value".into()], rows }
}

/// Lowercase hex SHA-256 of the raw input bytes.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write one rendered report into `out_dir` and return its path.
pub fn write_report(out_dir: &Path, file_name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", out_dir.display())))?;
    let path = out_dir.join(file_name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}
