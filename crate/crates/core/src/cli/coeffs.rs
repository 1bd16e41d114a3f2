//! Coefficient tables: a header row `x,A,B,p` (optionally `,u0`) followed by
//! one row per grid node `x_i = i/M`, `i = 0..=M`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::operator::{CoefficientSet, Grid1D};

use super::output::fmt_float;

const REQUIRED: [&str; 4] = ["x", "A", "B", "p"];
const INITIAL: &str = "u0";
/// Allowed distance between a listed `x` and the node `i/M`.
const NODE_TOL: f64 = 1e-9;

/// A parsed coefficient file.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    /// Number of intervals `M` implied by the row count.
    pub m_intervals: usize,
    pub coeffs: CoefficientSet,
    /// Initial datum, when the file carries a `u0` column.
    pub initial: Option<Vec<f64>>,
}

fn parse_err(line: u64, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_coefficient_table(text: &str) -> Result<CoefficientTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| parse_err(1, 1, e.to_string()))?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    let has_initial = match names.as_slice() {
        [x, a, b, p] if [*x, *a, *b, *p] == REQUIRED => false,
        [x, a, b, p, u] if [*x, *a, *b, *p] == REQUIRED && *u == INITIAL => true,
        _ => {
            let line = headers.position().map_or(1, |p| p.line());
            return Err(parse_err(
                line,
                1,
                format!("header must be `x,A,B,p` or `x,A,B,p,u0`, found `{}`", names.join(",")),
            ));
        }
    };
    let width = if has_initial { 5 } else { 4 };

    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); width];
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, 1, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            return Err(parse_err(
                line,
                record.len().min(width) + 1,
                format!("expected {width} fields, found {}", record.len()),
            ));
        }
        for (c, field) in record.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(line, c + 1, format!("invalid number {field:?}")))?;
            if !v.is_finite() {
                return Err(parse_err(line, c + 1, format!("non-finite value {field:?}")));
            }
            cols[c].push(v);
        }
        lines.push(line);
    }
    let rows = cols[0].len();
    if rows < 3 {
        return Err(parse_err(
            lines.last().copied().unwrap_or(1),
            1,
            format!("need at least 3 node rows, found {rows}"),
        ));
    }
    let m = rows - 1;
    for (i, x) in cols[0].iter().enumerate() {
        let node = i as f64 / m as f64;
        if (x - node).abs() > NODE_TOL {
            return Err(parse_err(
                lines[i],
                1,
                format!("x = {x} is not the uniform node {node} (row {i} of {rows})"),
            ));
        }
    }
    let initial = has_initial.then(|| cols.pop().expect("u0 column"));
    let p = cols.pop().expect("p column");
    let b = cols.pop().expect("B column");
    let a = cols.pop().expect("A column");
    let coeffs = CoefficientSet::new(a, b, p);
    // t_final and N are irrelevant for ellipticity
    coeffs.validate(&Grid1D::new(m, 1, 1.0)?)?;
    Ok(CoefficientTable {
        m_intervals: m,
        coeffs,
        initial,
    })
}

pub fn read_coefficient_table(path: &Path) -> Result<CoefficientTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_coefficient_table(&text)
}

/// Renders a table that [`parse_coefficient_table`] reads back bit-exactly.
pub fn format_coefficient_table(grid: &Grid1D, coeffs: &CoefficientSet, initial: Option<&[f64]>) -> String {
    let mut s = String::from(if initial.is_some() { "x,A,B,p,u0\n" } else { "x,A,B,p\n" });
    for i in 0..=grid.m() {
        let _ = write!(
            s,
            "{},{},{},{}",
            fmt_float(grid.x(i)),
            fmt_float(coeffs.a_diff[i]),
            fmt_float(coeffs.b_drift[i]),
            fmt_float(coeffs.p_pot[i])
        );
        if let Some(u) = initial {
            let _ = write!(s, ",{}", fmt_float(u[i]));
        }
        s.push('\n');
    }
    s
}
