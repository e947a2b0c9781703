//! Tables, summaries and manifests written by every run.

use crate::config::{hex, Format, RunConfig};
use crate::error::CliResult;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // Shortest round-trip representation, exponent for extreme values.
            Cell::Real(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) if v.is_finite() => json!(v),
            Cell::Real(v) => json!(format!("{v:?}")),
            Cell::Text(s) => json!(s),
        }
    }
}

/// A named table; column names carry units in brackets where relevant.
#[derive(Debug, Clone)]
pub struct Table {
    /// Empty for the main table of a run.
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {:?}", self.name);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(Cell::csv).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                self.columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.clone(), v.json()))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "columns": self.columns, "rows": rows }))
            .expect("table serialises");
        s.push('\n');
        s
    }
}

/// Data produced by a command before it is written out.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub results: Value,
}

#[derive(Debug, Clone)]
pub struct Written {
    pub file: String,
    pub sha256: String,
    pub bytes: usize,
}

fn write_file(dir: &Path, file: String, contents: &str) -> CliResult<Written> {
    std::fs::write(dir.join(&file), contents)?;
    Ok(Written {
        sha256: hex(&Sha256::digest(contents.as_bytes())),
        bytes: contents.len(),
        file,
    })
}

pub fn summary(config: &RunConfig, results: &Value) -> Value {
    json!({
        "tool": "nipoly",
        "version": env!("CARGO_PKG_VERSION"),
        "command": config.command,
        "params": config.params.to_json(),
        "seed": config.seed,
        "replicas": config.replicas,
        "results": results,
    })
}

/// Writes the data tables, the JSON summary and the manifest; returns the
/// manifest.
pub fn write_run(config: &RunConfig, output: &RunOutput, started_unix: f64, elapsed: f64) -> CliResult<Value> {
    std::fs::create_dir_all(&config.out)?;
    let stem = config.stem();
    let mut written = Vec::new();
    for t in &output.tables {
        let base = if t.name.is_empty() {
            stem.clone()
        } else {
            format!("{stem}-{}", t.name)
        };
        let file = format!("{base}.{}", config.format.extension());
        let body = match config.format {
            Format::Csv => t.to_csv(),
            Format::Json => t.to_json(),
        };
        written.push(write_file(&config.out, file, &body)?);
    }
    let mut body = serde_json::to_string_pretty(&summary(config, &output.results)).expect("summary serialises");
    body.push('\n');
    written.push(write_file(&config.out, format!("{stem}.summary.json"), &body)?);
    let manifest = json!({
        "tool": "nipoly",
        "version": env!("CARGO_PKG_VERSION"),
        "command": config.command,
        "config": {
            "params": config.params.to_json(),
            "seed": config.seed,
            "replicas": config.replicas,
            "format": config.format.extension(),
            "threads": config.threads,
            "out": config.out.display().to_string(),
        },
        "fingerprint": config.fingerprint(),
        "started_unix_seconds": started_unix,
        "wall_clock_seconds": elapsed,
        "outputs": written
            .iter()
            .map(|w| json!({ "file": w.file, "sha256": w.sha256, "bytes": w.bytes }))
            .collect::<Vec<_>>(),
    });
    let mut body = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    body.push('\n');
    std::fs::write(config.out.join(format!("{stem}.manifest.json")), body)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new("", &["k", "value"]);
        t.push(vec![1usize.into(), 0.5.into()]);
        t.push(vec![2usize.into(), 1e-300.into()]);
        assert_eq!(t.to_csv(), "k,value\n1,0.5\n2,1e-300\n");
        let j: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(j["rows"][0]["value"], json!(0.5));
    }
}
