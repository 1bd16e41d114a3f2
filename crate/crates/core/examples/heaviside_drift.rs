//! Example 3: `A = 1`, `B(x) = θ(x - 1/2)`, `p = 0`. The potential
//! `b` is only Lipschitz, which the regularity check detects; the norm curve
//! is still log-convex.
//!
//! ```text
//! cargo run --example heaviside_drift
//! ```

use fracdiff::pipeline::{run_pipeline, AnalysisSettings};
use fracdiff::presets::{default_grid, ExampleId};
use fracdiff::symmetrization::check_assumption_h;

fn main() -> fracdiff::Result<()> {
    let grid = default_grid();
    let coeffs = ExampleId::HeavisideDrift.coefficients(&grid);
    let h = check_assumption_h(&grid, &coeffs);
    let at: Vec<f64> = h.jump_nodes.iter().map(|&i| grid.x(i)).collect();
    println!(
        "smooth {}; second differences above {:.2e} at x = {at:?}",
        h.smooth_flag, h.threshold
    );
    for alpha in [0.1, 0.3, 0.5] {
        let outcome = run_pipeline(&ExampleId::HeavisideDrift.problem(grid, alpha)?, &AnalysisSettings::default())?;
        println!(
            "alpha {alpha}: log-convex {}, min second difference {:.3e}, kappa {:.6}, ||b|| {:.4}",
            outcome.report.is_log_convex,
            outcome.report.min_second_difference,
            outcome.report.kappa_fit,
            outcome.report.b_sup_norm
        );
    }
    Ok(())
}
