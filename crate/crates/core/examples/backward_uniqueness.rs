//! Bounds the whole norm history from the initial and the terminal norm:
//! `‖u(t)‖ ≤ κ ‖u_0‖^{1-t/T} ‖u(T)‖^{t/T}`. The smaller the terminal norm,
//! the smaller the bound at interior times.
//!
//! ```text
//! cargo run --example backward_uniqueness
//! ```

use fracdiff::analysis::backward_uniqueness_probe;
use fracdiff::operator::Grid1D;
use fracdiff::presets::ExampleId;
use fracdiff::solver::solve_forward;

fn main() -> fracdiff::Result<()> {
    for t_final in [0.02, 0.2, 1.0] {
        let grid = Grid1D::new(80, 40, t_final)?;
        let field = solve_forward(&ExampleId::Symmetric.problem(grid, 0.5)?)?;
        let probe = backward_uniqueness_probe(&field, 1.0)?;
        let mid = grid.n() / 2;
        println!(
            "T = {t_final}: ||u(T)|| = {:.4e}, kappa = {:.6}, at T/2 norm {:.4e} <= bound {:.4e}",
            probe.terminal_norm,
            probe.kappa.unwrap_or(f64::NAN),
            fracdiff::analysis::l2_norm(field.row(mid), grid.dx()),
            probe.bounds[mid]
        );
    }
    Ok(())
}
