//! Output plumbing: deterministic tables (CSV or JSON) and JSON reports.

use crate::fmtnum::fmt_g17;
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_g17(*v),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
        }
    }
}

/// Tabular command output with a fixed column set.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Trailing comment lines (CSV only), e.g. a singularity flag.
    pub trailers: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new(), trailers: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut s = String::new();
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                for t in &self.trailers {
                    s.push_str("# ");
                    s.push_str(t);
                    s.push('\n');
                }
                s
            }
            OutputFormat::Json => {
                let rows: Vec<Vec<serde_json::Value>> =
                    self.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect();
                let doc = serde_json::json!({
                    "columns": self.columns,
                    "rows": rows,
                    "flags": self.trailers,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

/// Property-check report emitted by the solder/invariants/duality commands.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub comparison: &'static str,
    pub pass: bool,
}

impl Check {
    /// `value <= threshold` check.
    pub fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        Self { name, value, threshold, comparison: "<=", pass: value <= threshold }
    }

    /// `value >= threshold` check (e.g. a non-invariance witness).
    pub fn at_least(name: &'static str, value: f64, threshold: f64) -> Self {
        Self { name, value, threshold, comparison: ">=", pass: value >= threshold }
    }
}

impl Report {
    pub fn new(command: &'static str, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { command, pass, checks }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Write to the path, or stdout when no path is given.
pub fn write_out(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, content),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
        }
    }
}

/// Sidecar path `<out>.drift.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_os_string();
    os.push(".drift.json");
    PathBuf::from(os)
}
