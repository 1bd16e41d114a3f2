//! Example 1: `A = 1`, no drift, no potential, `u_0 = sin πx`. The exact
//! solution is `E_α(-π² t^α) sin πx`; the norm curve is log-convex.
//!
//! ```text
//! cargo run --example symmetric_exact
//! ```

use fracdiff::analysis::LogConvexityReport;
use fracdiff::presets::{default_grid, symmetric_exact_rows, ExampleId};
use fracdiff::solver::{scheme_residual, solve_forward};

fn main() -> fracdiff::Result<()> {
    let grid = default_grid();
    for alpha in [0.1, 0.3, 0.5, 1.0] {
        let problem = ExampleId::Symmetric.problem(grid, alpha)?;
        let field = solve_forward(&problem)?;
        let exact = symmetric_exact_rows(&grid, alpha)?;
        let err = (0..=grid.n())
            .flat_map(|k| (0..=grid.m()).map(move |i| (k, i)))
            .map(|(k, i)| (field.get(k, i) - exact[k][i]).abs())
            .fold(0.0, f64::max);
        let report = LogConvexityReport::from_field(&field, 0.0, 1e-8)?;
        println!(
            "alpha {alpha}: max error {err:.3e}, residual {:.1e}, min second difference {:.3e}, log-convex {}, kappa {:.6}",
            scheme_residual(&field, &problem)?,
            report.min_second_difference,
            report.is_log_convex,
            report.kappa_fit
        );
    }
    Ok(())
}
