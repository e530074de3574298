//! Report assembly and emission.

use serde_json::{json, Value};

use crate::OutputFormat;

/// Standard report shape: command, canonical input echo, outputs, and the
/// attestation flags (always present, possibly empty).
pub fn command_report(
    command: &str,
    input: Value,
    output: Value,
    attestations: Vec<String>,
) -> Value {
    json!({
        "command": command,
        "input": input,
        "output": output,
        "attestations": attestations,
    })
}

pub fn emit(report: &Value, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{report:#}"),
        OutputFormat::Table => {
            let mut lines = Vec::new();
            flatten("", report, &mut lines);
            for (key, value) in lines {
                println!("{key:<40} {value}");
            }
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, inner, out);
            }
        }
        Value::Array(items) => {
            if items
                .iter()
                .all(|item| !item.is_object() && !item.is_array())
            {
                let rendered: Vec<String> = items.iter().map(render_scalar).collect();
                out.push((prefix.to_owned(), format!("[{}]", rendered.join(", "))));
            } else {
                for (index, item) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{index}]"), item, out);
                }
                if items.is_empty() {
                    out.push((prefix.to_owned(), "[]".to_owned()));
                }
            }
        }
        scalar => out.push((prefix.to_owned(), render_scalar(scalar))),
    }
}

fn render_scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
