//! CSV snapshot emission and parsing.
//!
//! Layout: header `x,t=<t1>,t=<t2>,...` with times ascending in fixed
//! 6-decimal form, then one row per node carrying the coordinate and the
//! snapshot values in shortest round-trip decimal. ASCII, `\n` newlines.

use std::path::Path;

use mfg_core::solvers::SolutionTrace;

use crate::runner::write_atomic;
use crate::{CliError, Result};

pub fn render_csv(trace: &SolutionTrace) -> Result<String> {
    if trace.snapshots.is_empty() {
        return Err(CliError::Config(
            "trace has no snapshots; nothing to emit".into(),
        ));
    }
    // trace stores snapshots by descending t; columns go ascending
    let cols: Vec<&(f64, mfg_core::numerics::Field)> = trace.snapshots.iter().rev().collect();
    let mut out = String::from("x");
    for (t, _) in &cols {
        out.push_str(&format!(",t={t:.6}"));
    }
    out.push('\n');
    for j in 0..trace.grid.node_count() {
        out.push_str(&format!("{}", trace.grid.node(j)));
        for (_, field) in &cols {
            out.push_str(&format!(",{}", field.value(j)));
        }
        out.push('\n');
    }
    debug_assert!(out.is_ascii());
    Ok(out)
}

pub fn emit_csv(trace: &SolutionTrace, path: &Path) -> Result<()> {
    write_atomic(path, render_csv(trace)?.as_bytes())
}

/// Parsed CSV table: the `x` column plus one value column per header.
#[derive(Clone, Debug)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub x: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.headers
            .iter()
            .position(|h| h == name)
            .map(|k| self.columns[k].as_slice())
    }
}

pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Config("empty CSV".into()))?;
    let mut parts = header.split(',');
    if parts.next() != Some("x") {
        return Err(CliError::Config(
            "malformed CSV: first header field must be `x`".into(),
        ));
    }
    let headers: Vec<String> = parts.map(str::to_string).collect();
    if headers.is_empty() {
        return Err(CliError::Config("malformed CSV: no value columns".into()));
    }
    let mut x = Vec::new();
    let mut columns = vec![Vec::new(); headers.len()];
    for (row, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != headers.len() + 1 {
            return Err(CliError::Config(format!(
                "malformed CSV: row {} has {} fields, expected {}",
                row + 2,
                fields.len(),
                headers.len() + 1
            )));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| CliError::Config(format!("malformed CSV: bad number `{s}`")))
        };
        x.push(parse(fields[0])?);
        for (k, field) in fields[1..].iter().enumerate() {
            columns[k].push(parse(field)?);
        }
    }
    if x.len() < 2 {
        return Err(CliError::Config("malformed CSV: fewer than two rows".into()));
    }
    Ok(CsvTable { headers, x, columns })
}

pub fn read_csv(path: &Path) -> Result<CsvTable> {
    parse_csv(&std::fs::read_to_string(path)?)
}
