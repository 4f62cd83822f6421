//! Text rendering of reports.
//!
//! Every subcommand produces one JSON tree; `--format json` pretty-prints it
//! and `--format text` renders the same tree here. Because both modes start
//! from the identical tree, they carry the same data field for field.

use serde_json::Value;
use sublat_core::fp::{Matrix, Subspace};

/// Rows of a matrix as a JSON array of arrays.
pub fn rows_value(m: &Matrix) -> Value {
    Value::from(m.row_vecs())
}

/// Canonical basis rows of a subspace; the zero space renders as `[]`.
pub fn basis_value(s: &Subspace) -> Value {
    rows_value(s.basis())
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Scalars, and flat arrays of scalars (vectors, matrix rows), print inline.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    if let Value::Array(items) = v {
        if items.is_empty() {
            return Some("[]".to_string());
        }
        let parts: Vec<String> = items.iter().map(scalar).collect::<Option<_>>()?;
        return Some(parts.join(" "));
    }
    None
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match inline(val) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        walk(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        walk(item, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let s = scalar(other).expect("non-composite values are scalar");
            out.push_str(&format!("{pad}{s}\n"));
        }
    }
}

/// Every scalar leaf of a JSON tree, for data-equivalence checks between the
/// two output formats.
#[cfg(test)]
pub fn scalar_leaves(v: &Value) -> Vec<String> {
    fn collect(v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(map) => map.values().for_each(|val| collect(val, out)),
            Value::Array(items) => items.iter().for_each(|item| collect(item, out)),
            other => out.push(scalar(other).expect("leaf values are scalar")),
        }
    }
    let mut out = Vec::new();
    collect(v, &mut out);
    out
}
