use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

/// `%.17g`-style decimal: 17 significant digits, trailing zeros dropped.
pub fn g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0.0" } else { "0.0" }.to_owned();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, v);
        let trimmed = if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.')
        } else {
            &fixed
        };
        if trimmed.contains('.') {
            trimmed.to_owned()
        } else {
            format!("{trimmed}.0")
        }
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

struct G17Formatter;

impl Formatter for G17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(g17(value).as_bytes())
    }
}

/// Compact JSON with every float written by [`g17`], newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value.serialize(&mut ser).expect("report serializes");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Human-readable rendering of a JSON document, numbers exactly as in the JSON.
pub fn to_text(json: &str) -> String {
    let value: Value = serde_json::from_str(json).expect("valid JSON");
    let mut out = String::new();
    render_object_body(&value, 0, &mut out);
    out
}

fn number(n: &serde_json::Number) -> String {
    if n.is_f64() {
        g17(n.as_f64().expect("f64"))
    } else {
        n.to_string()
    }
}

fn scalar(v: &Value) -> Option<String> {
    Some(match v {
        Value::Null => "-".to_owned(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => number(n),
        Value::String(s) => s.clone(),
        _ => return None,
    })
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    match v {
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn pad(depth: usize) -> String {
    "  ".repeat(depth)
}

fn render_object_body(v: &Value, depth: usize, out: &mut String) {
    let Value::Object(map) = v else {
        let _ = writeln!(out, "{}{}", pad(depth), inline(v).unwrap_or_default());
        return;
    };
    for (key, val) in map {
        if key == "points" {
            if let Value::Array(points) = val {
                for (i, p) in points.iter().enumerate() {
                    let _ = writeln!(out, "{}point {}:", pad(depth), i + 1);
                    render_object_body(p, depth + 1, out);
                }
                continue;
            }
        }
        match inline(val) {
            Some(s) => {
                let _ = writeln!(out, "{}{key}: {s}", pad(depth));
            }
            None => {
                let _ = writeln!(out, "{}{key}:", pad(depth));
                render_nested(val, depth + 1, out);
            }
        }
    }
}

fn render_nested(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::Object(_) => render_object_body(v, depth, out),
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match inline(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{}[{i}] {s}", pad(depth));
                    }
                    None => {
                        let _ = writeln!(out, "{}[{i}]", pad(depth));
                        render_nested(item, depth + 1, out);
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{}{}", pad(depth), inline(v).unwrap_or_default());
        }
    }
}
