//! Text, JSON and CSV rendering of command reports.

use anyhow::Result;
use serde_json::{json, Map, Value};

use crate::commands::Outcome;
use crate::config::OutputFormat;

pub const SCHEMA: u32 = 1;

/// Flattens nested objects into dotted keys; arrays of scalars are joined
/// with `;`, arrays of objects are indexed.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), item, out);
            }
        }
        Value::Array(items) => out.push((
            prefix.to_string(),
            items.iter().map(scalar).collect::<Vec<_>>().join(";"),
        )),
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(command: &str, outcome: &Outcome, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "command": command,
                "reports": outcome.reports,
                "failures": outcome.failures,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<(String, String)>> = outcome
                .reports
                .iter()
                .map(|r| {
                    let mut row = Vec::new();
                    flatten("", r, &mut row);
                    row
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for row in &rows {
                for (k, _) in row {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for row in &rows {
                let map: Map<String, Value> = row.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                w.write_record(header.iter().map(|k| map.get(k).map(scalar).unwrap_or_default()))?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for (i, r) in outcome.reports.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                let mut rows = Vec::new();
                flatten("", r, &mut rows);
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in rows {
                    s.push_str(&format!("{k:<width$}  {v}\n"));
                }
            }
            if !outcome.failures.is_empty() {
                s.push_str("\nFAILED\n");
                for f in &outcome.failures {
                    s.push_str(&format!("  {f}\n"));
                }
            }
            Ok(s)
        }
    }
}
