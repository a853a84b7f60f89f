use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Renders a report. JSON keeps field order; CSV flattens nested objects to
/// dotted column names and integer arrays to semicolon-joined cells.
pub fn render<T: Serialize>(report: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let value = serde_json::to_value(report)?;
            let rows = match &value {
                Value::Object(map) => match map.get("rows") {
                    Some(Value::Array(rows)) => rows.iter().map(flatten).collect(),
                    _ => vec![flatten(&value)],
                },
                _ => vec![flatten(&value)],
            };
            to_csv(&rows)
        }
    }
}

fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn walk(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_u64) => {
            let cell = items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            out.push((prefix.to_string(), cell));
        }
        Value::Array(_) => out.push((prefix.to_string(), value.to_string())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn to_csv(rows: &[Vec<(String, String)>]) -> Result<String> {
    let mut header: Vec<String> = Vec::new();
    for row in rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in rows {
        let cells = header.iter().map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()));
        w.write_record(cells)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_flattening() {
        let v = serde_json::json!({"a": [1, 2, 3], "b": {"c": null, "d": "x"}, "e": [[1]]});
        assert_eq!(render(&v, Format::Csv).unwrap(), "a,b.c,b.d,e\n1;2;3,,x,[[1]]\n");
    }

    #[test]
    fn csv_rows() {
        let v = serde_json::json!({"rows": [{"k": 1}, {"k": 2, "z": true}]});
        assert_eq!(render(&v, Format::Csv).unwrap(), "k,z\n1,\n2,true\n");
    }
}
