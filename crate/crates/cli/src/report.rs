//! Report document and its JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clifford_ur::{RenyiOrder, Tolerances};
use serde::Serialize;

use crate::args::Format;

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceOverride {
    pub name: &'static str,
    pub default: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub n: Option<usize>,
    #[serde(rename = "K")]
    pub k: Option<usize>,
    pub alpha: RenyiOrder,
    pub samples: usize,
    pub seed: u64,
    pub k_min: Option<usize>,
    pub k_max: Option<usize>,
    pub tolerances: Tolerances,
    pub tolerance_overrides: Vec<ToleranceOverride>,
    pub format: Format,
    pub out: Option<String>,
    pub timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub command: &'static str,
    pub config: RunConfig,
    pub results: serde_json::Value,
    pub residuals: BTreeMap<String, f64>,
    pub wall_time_ms: Option<f64>,
}

/// Rows for CSV and text output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Shortest round-trip decimal; empty for a missing value.
pub fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(table: &Table) -> String {
    let mut out = String::new();
    let line = |cells: Vec<String>| cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
    out.push_str(&line(table.header.iter().map(|s| s.to_string()).collect()));
    out.push('\n');
    for row in &table.rows {
        out.push_str(&line(row.clone()));
        out.push('\n');
    }
    out
}

fn render_text(report: &Report, table: &Table, failed: bool) -> String {
    let mut widths: Vec<usize> = table.header.iter().map(|h| h.len()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "cliffur {} {}", report.tool_version, report.command);
    let fmt_row = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let header: Vec<String> = table.header.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "{}", fmt_row(&header));
    for row in &table.rows {
        let _ = writeln!(out, "{}", fmt_row(row));
    }
    for (k, v) in &report.residuals {
        let _ = writeln!(out, "residual {k}: {v:e}");
    }
    if let Some(ms) = report.wall_time_ms {
        let _ = writeln!(out, "wall time: {ms:.1} ms");
    }
    let _ = writeln!(out, "status: {}", if failed { "FAIL" } else { "ok" });
    out
}

pub fn render(report: &Report, table: &Table, failed: bool) -> String {
    match report.config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(table),
        Format::Text => render_text(report, table, failed),
    }
}
