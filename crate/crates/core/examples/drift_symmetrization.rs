//! Example 2: `A = 1`, `B = 1`, `p = 0`. The drift is removed by
//! `v = e^{x/2} u`, which leaves `v_t^α = v_xx - v/4`. Both formulations are
//! solved and compared.
//!
//! ```text
//! cargo run --example drift_symmetrization
//! ```

use fracdiff::pipeline::{run_pipeline, symmetrization_check, AnalysisSettings};
use fracdiff::presets::{default_grid, ExampleId};

fn main() -> fracdiff::Result<()> {
    let grid = default_grid();
    for alpha in [0.1, 0.3, 0.5] {
        let problem = ExampleId::GradientDrift.problem(grid, alpha)?;
        let outcome = run_pipeline(&problem, &AnalysisSettings::default())?;
        let (check, _) = symmetrization_check(&problem)?;
        println!("alpha {alpha}");
        println!(
            "  ||b||_inf = {:.6}, q in [{:.15}, {:.15}]",
            outcome.symmetrization.b_sup_norm, check.q_min, check.q_max
        );
        println!(
            "  direct vs symmetrized: {:.3e} (error estimate {:.3e}, within bound {})",
            check.max_discrepancy, check.error_estimate, check.within_bound
        );
        println!(
            "  log-convex {}, kappa {:.6}",
            outcome.report.is_log_convex, outcome.report.kappa_fit
        );
    }
    Ok(())
}
