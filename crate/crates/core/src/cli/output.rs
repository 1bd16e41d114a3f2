//! CSV and JSON artifacts of a run.
//!
//! Floats in CSV files use scientific notation with 17 significant digits,
//! which round-trips every `f64`. Data files carry no timestamps, so equal
//! inputs give byte-identical outputs.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{l2_norm, LogConvexityReport, NormCurve};
use crate::error::{Error, Result};
use crate::operator::Grid1D;
use crate::solver::SolutionField;
use crate::symmetrization::AssumptionHReport;

pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// `0.1` → `alpha0.1`; used in every per-order file name.
pub fn alpha_tag(alpha: f64) -> String {
    format!("alpha{alpha}")
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Header row of node coordinates, then one row per time level.
pub fn format_field_csv(field: &SolutionField) -> String {
    let grid = field.grid();
    let mut s = grid.nodes().iter().map(|x| fmt_float(*x)).collect::<Vec<_>>().join(",");
    s.push('\n');
    for row in field.rows() {
        s.push_str(&row.iter().map(|v| fmt_float(*v)).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

/// Rows of a field CSV (header skipped).
pub fn parse_field_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            column: 1,
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(c, f)| {
                f.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    column: c + 1,
                    message: format!("invalid number {f:?}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn format_norms_csv(curve: &NormCurve) -> String {
    let mut s = String::from("t,norm,log_norm\n");
    for ((t, n), l) in curve.times.iter().zip(&curve.norms).zip(&curve.log_norms) {
        let log = l.map(fmt_float).unwrap_or_default();
        let _ = writeln!(s, "{},{},{}", fmt_float(*t), fmt_float(*n), log);
    }
    s
}

/// Per level: max and L² error against a reference, and the reference norm.
pub fn format_error_csv(field: &SolutionField, exact: &[Vec<f64>]) -> String {
    let grid = field.grid();
    let mut s = String::from("t,max_abs_error,l2_error,exact_norm\n");
    for (k, reference) in exact.iter().enumerate() {
        let diff: Vec<f64> = field.row(k).iter().zip(reference).map(|(u, e)| u - e).collect();
        let max = diff.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt_float(grid.t(k)),
            fmt_float(max),
            fmt_float(l2_norm(&diff, grid.dx())),
            fmt_float(l2_norm(reference, grid.dx()))
        );
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssumptionHJson {
    pub feasible: bool,
    pub smooth_flag: bool,
}

impl From<&AssumptionHReport> for AssumptionHJson {
    fn from(r: &AssumptionHReport) -> Self {
        AssumptionHJson {
            feasible: r.feasible,
            smooth_flag: r.smooth_flag,
        }
    }
}

/// `report_alpha<k>.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub alpha: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "T")]
    pub t_final: f64,
    pub norms: Vec<f64>,
    pub log_norms: Vec<Option<f64>>,
    pub min_second_difference: f64,
    pub is_log_convex: bool,
    pub kappa_fit: f64,
    pub b_sup_norm: f64,
    pub assumption_h: AssumptionHJson,
}

impl ReportJson {
    pub fn new(grid: &Grid1D, report: &LogConvexityReport, assumption_h: &AssumptionHReport) -> Self {
        ReportJson {
            alpha: report.alpha,
            n: grid.n(),
            m: grid.m(),
            t_final: grid.t_final(),
            norms: report.curve.norms.clone(),
            log_norms: report.curve.log_norms.clone(),
            min_second_difference: report.min_second_difference,
            is_log_convex: report.is_log_convex,
            kappa_fit: report.kappa_fit,
            b_sup_norm: report.b_sup_norm,
            assumption_h: assumption_h.into(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
