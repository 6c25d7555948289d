//! Plain-text rendering of a JSON report.

use serde_json::Value;
use std::fmt::Write;

/// Objects that carry a `display` field print as that string.
fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(m) => m.get("display").and_then(|d| d.as_str()).map(String::from),
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in m {
                match scalar(x) {
                    Some(s) if !s.contains('\n') => {
                        let _ = writeln!(out, "{pad}{k:<width$}  {s}");
                    }
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for line in s.lines() {
                            let _ = writeln!(out, "{pad}  {line}");
                        }
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_into(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        render_into(out, x, indent + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligned_and_nested() {
        let v = json!({"a": 1, "long_key": {"display": "-dx"}, "nested": {"b": [1, 2]}});
        assert_eq!(render(&v), "a         1\nlong_key  -dx\nnested:\n  b  [1, 2]\n");
    }
}
