//! Output plumbing: CSV with `#`-prefixed metadata headers, JSON reports,
//! and stable float formatting so identical runs are byte-identical.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// 17 significant digits: round-trips every f64 and keeps outputs stable.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.17e}")
}

/// Key/value metadata recorded on every output.
pub struct Meta {
    entries: Vec<(String, String)>,
}

impl Meta {
    pub fn new(command: &str, seed: u64) -> Self {
        let mut entries = vec![
            ("tool".to_string(), format!("pspin {}", env!("CARGO_PKG_VERSION"))),
            ("command".to_string(), command.to_string()),
        ];
        entries.push(("seed".to_string(), seed.to_string()));
        Meta { entries }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn csv_header(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            s.push_str(&format!("# {k} = {v}\n"));
        }
        s
    }

    pub fn json_value(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// A simple rectangular table that renders to either format.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, meta: &Meta, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = meta.csv_header();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let map: serde_json::Map<String, serde_json::Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.clone(), serde_json::Value::String(v.clone())))
                            .collect();
                        serde_json::Value::Object(map)
                    })
                    .collect();
                let doc = serde_json::json!({ "meta": meta.json_value(), "rows": rows });
                let mut s = serde_json::to_string_pretty(&doc).expect("json render");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes to `--output` when given, stdout otherwise; errors carry the path.
pub fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            let mut f = File::create(path)
                .with_context(|| format!("cannot create output file {}", path.display()))?;
            f.write_all(content.as_bytes())
                .with_context(|| format!("cannot write output file {}", path.display()))?;
        }
        None => {
            io::stdout().write_all(content.as_bytes()).context("cannot write to stdout")?;
        }
    }
    Ok(())
}

/// Missing seeds are generated from the clock and announced on stderr so the
/// run can be reproduced.
pub fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let s = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_nanos() as u64)
                .unwrap_or(0)
                ^ (std::process::id() as u64).rotate_left(32);
            eprintln!("no --seed given; generated seed = {s}");
            s
        }
    }
}
