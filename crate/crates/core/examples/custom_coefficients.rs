//! Reads a coefficient table, runs the full pipeline and prints the report
//! that `fracdiff solve --coeffs <file>` would write.
//!
//! ```text
//! cargo run --example custom_coefficients
//! ```

use std::f64::consts::PI;

use fracdiff::cli::coeffs::{format_coefficient_table, parse_coefficient_table};
use fracdiff::cli::output::ReportJson;
use fracdiff::operator::{CoefficientSet, Grid1D};
use fracdiff::pipeline::{run_pipeline, AnalysisSettings};
use fracdiff::solver::FractionalDiffusionProblem;

fn main() -> fracdiff::Result<()> {
    // variable diffusion, a smooth drift and a mild potential
    let grid = Grid1D::new(40, 20, 0.05)?;
    let coeffs = CoefficientSet::from_fns(
        &grid,
        |x| 1.0 + 0.5 * (2.0 * PI * x).sin(),
        |x| (PI * x).sin(),
        |x| -1.0 - x,
    );
    let initial = grid.sample(|x| x * (1.0 - x) * 4.0);
    let text = format_coefficient_table(&grid, &coeffs, Some(&initial));
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("...\n");

    let table = parse_coefficient_table(&text)?;
    let problem = FractionalDiffusionProblem::new(grid, table.coeffs, 0.4, table.initial.unwrap())?;
    let outcome = run_pipeline(&problem, &AnalysisSettings::default())?;
    println!("{}", ReportJson::new(&grid, &outcome.report, &outcome.assumption_h).to_json()?);
    Ok(())
}
