//! Deterministic serialization: JSON with full-precision floats and sorted
//! keys, plus the two small CSV layouts the CLI emits.

use serde_json::Value;
use std::fmt::Write as _;

/// serde_json prints floats with shortest round-trip formatting, which is
/// fine for machines but makes diffs of near-equal runs noisy to eyeball.
/// Pin every non-integer float to one fixed 17-significant-digit form.
fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                let f = n.as_f64().unwrap();
                if f == f.trunc() && f.abs() < 1e15 {
                    let _ = write!(out, "{f:.1}");
                } else {
                    let _ = write!(out, "{f:.16e}");
                }
            }
        }
        Value::String(s) => {
            let _ = write!(out, "{}", Value::String(s.clone()));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            // BTreeMap iteration order: keys already sorted
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                let _ = write!(out, "{}: ", Value::String((*k).clone()));
                write_value(out, &map[*k], indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

pub fn json_of<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Two-column sample dump, header `x,psi`.
pub fn vector_csv(xs: &[f64], psi: &[f64]) -> String {
    assert_eq!(xs.len(), psi.len());
    let mut out = String::from("x,psi\n");
    for (x, p) in xs.iter().zip(psi) {
        let _ = writeln!(out, "{},{}", csv_float(*x), csv_float(*p));
    }
    out
}

/// Eigenvalue listing, header `index,eigenvalue`.
pub fn eigenvalue_csv(vals: &[f64]) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, v) in vals.iter().enumerate() {
        let _ = writeln!(out, "{i},{}", csv_float(*v));
    }
    out
}

/// Parse a two-column CSV produced by `vector_csv` (or by hand, same shape).
pub fn parse_vector_csv(text: &str) -> crate::error::Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 && line.starts_with('x') {
            continue;
        }
        let mut it = line.split(',');
        let (a, b) = (it.next(), it.next());
        match (a, b) {
            (Some(a), Some(b)) => {
                let x: f64 = a.trim().parse().map_err(|_| {
                    crate::error::Error::BadConfig(format!("bad float on line {}", lineno + 1))
                })?;
                let y: f64 = b.trim().parse().map_err(|_| {
                    crate::error::Error::BadConfig(format!("bad float on line {}", lineno + 1))
                })?;
                rows.push((x, y));
            }
            _ => {
                return Err(crate::error::Error::BadConfig(format!(
                    "need two comma-separated columns on line {}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(rows)
}
