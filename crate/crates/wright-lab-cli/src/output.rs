//! CSV/JSON serialization with byte-stable formatting.
//!
//! Floats are written in Rust's shortest round-trip decimal form, so a rerun
//! with the same configuration produces byte-identical data files. JSON
//! objects use alphabetically ordered keys (serde_json's default map order).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => anyhow::bail!("invalid --format '{other}': expected csv or json"),
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// One cell of an output table.
#[derive(Debug, Clone)]
pub enum Field {
    Str(String),
    F64(f64),
    U64(u64),
    Bool(bool),
    /// Absent value: empty CSV cell, JSON null.
    None,
}

impl Field {
    pub fn opt_f64(v: Option<f64>) -> Self {
        v.map(Field::F64).unwrap_or(Field::None)
    }

    pub fn opt_u32(v: Option<u32>) -> Self {
        v.map(|n| Field::U64(u64::from(n))).unwrap_or(Field::None)
    }

    fn write_csv(&self, out: &mut String) {
        match self {
            Field::Str(s) => out.push_str(s),
            Field::F64(v) => {
                // shortest round-trip decimal, same rendering the JSON path uses
                let mut buf = ryu::Buffer::new();
                out.push_str(buf.format(*v));
            }
            Field::U64(v) => {
                let _ = write!(out, "{v}");
            }
            Field::Bool(v) => {
                let _ = write!(out, "{v}");
            }
            Field::None => {}
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Field::Str(s) => Value::String(s.clone()),
            Field::F64(v) => json!(v),
            Field::U64(v) => json!(v),
            Field::Bool(v) => json!(v),
            Field::None => Value::Null,
        }
    }
}

/// A rectangular result table with a fixed header.
#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, field) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                field.write_csv(&mut out);
            }
            out.push('\n');
        }
        out
    }

    fn to_json(&self, meta: &Value) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, field) in self.header.iter().zip(row) {
                    obj.insert((*name).to_string(), field.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "records": records, "meta": meta });
        let mut s = serde_json::to_string_pretty(&doc).expect("tables serialize");
        s.push('\n');
        s
    }
}

/// Writes the data file plus the `<output>.meta.json` sidecar. The data file
/// is deterministic; the sidecar carries run time and versions.
pub fn write_output(path: &Path, format: OutputFormat, table: &Table, meta: &Value) -> Result<()> {
    let body = match format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(meta),
    };
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;

    let created_unix_ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    let sidecar = json!({
        "created_unix_ms": created_unix_ms,
        "meta": meta,
        "tool": "wright-lab",
        "version": env!("CARGO_PKG_VERSION"),
    });
    let mut sidecar_path = path.as_os_str().to_owned();
    sidecar_path.push(".meta.json");
    let mut body = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    body.push('\n');
    fs::write(&sidecar_path, body)
        .with_context(|| format!("writing {}", Path::new(&sidecar_path).display()))?;
    Ok(())
}
