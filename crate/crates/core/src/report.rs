//! Report rendering.
//!
//! A report is a JSON object with insertion-ordered keys. The machine form is
//! pretty-printed JSON. The text form flattens it into `path = value` lines:
//! nested object keys are joined with `.`, arrays whose elements are all
//! scalars are printed inline as `[a, b, c]`, and other arrays are flattened
//! by element index. Strings are JSON-quoted, integers and booleans bare,
//! `null` as `null`. An empty object prints as `path = {}`.

use serde_json::Value;

pub fn render_json(report: &Value) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports are always serializable");
    out.push('\n');
    out
}

pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    flatten(report, String::new(), &mut out);
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn flatten(value: &Value, path: String, out: &mut String) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                flatten(v, join(&path, k), out);
            }
        }
        Value::Object(_) => line(out, &path, "{}"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            line(out, &path, &format!("[{}]", inner.join(", ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, join(&path, &i.to_string()), out);
            }
        }
        scalar => line(out, &path, &scalar.to_string()),
    }
}

fn line(out: &mut String, path: &str, value: &str) {
    out.push_str(path);
    out.push_str(" = ");
    out.push_str(value);
    out.push('\n');
}
