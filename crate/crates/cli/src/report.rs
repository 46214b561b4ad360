//! Run reports and their JSON and CSV renderings.
//!
//! The CSV form is the JSON tree flattened to `key,value` rows, with nested keys
//! joined by `.` and array elements addressed by index, so both renderings carry
//! the same numbers digit for digit.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Command line as invoked.
    pub command: Vec<String>,
    /// RFC 3339 time at which the report was produced.
    pub timestamp: String,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: Vec<String>, results: Value, warnings: Vec<String>) -> Self {
        Self {
            command,
            timestamp: chrono::Utc::now().to_rfc3339(),
            results,
            warnings,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| CliError::Io(e.to_string())),
            Format::Csv => {
                let tree = serde_json::to_value(self).map_err(|e| CliError::Io(e.to_string()))?;
                let mut rows = Vec::new();
                flatten("", &tree, &mut rows);
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io(e.to_string());
                w.write_record(["key", "value"]).map_err(io)?;
                for (k, v) in rows {
                    w.write_record([k, v]).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

/// Leaves of a JSON tree as `(dotted.key, text)` pairs. Empty containers become a
/// single row holding `[]` or `{}` so that they are not silently dropped.
pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
