//! Error of the scheme on Example 1 under time and space refinement.
//!
//! The exact solution behaves like `1 - c t^α` near `t = 0`, so on a uniform
//! time mesh the error at the final time decays like `Δt` and the error over
//! all time levels like `Δt^α`. In space the scheme is second order.
//!
//! ```text
//! cargo run --release --example convergence
//! ```

use fracdiff::operator::Grid1D;
use fracdiff::presets::{symmetric_exact_rows, ExampleId};
use fracdiff::solver::solve_forward;

fn errors(n: usize, m: usize, alpha: f64) -> fracdiff::Result<(f64, f64)> {
    let grid = Grid1D::new(m, n, 0.02)?;
    let field = solve_forward(&ExampleId::Symmetric.problem(grid, alpha)?)?;
    let exact = symmetric_exact_rows(&grid, alpha)?;
    let mut all: f64 = 0.0;
    let mut last: f64 = 0.0;
    for (k, row) in exact.iter().enumerate() {
        for (i, e) in row.iter().enumerate() {
            let d = (field.get(k, i) - e).abs();
            all = all.max(d);
            if k == n {
                last = last.max(d);
            }
        }
    }
    Ok((last, all))
}

fn main() -> fracdiff::Result<()> {
    for alpha in [0.3, 0.5, 0.8] {
        println!("alpha = {alpha}, M = 640");
        let mut prev: Option<(f64, f64)> = None;
        for n in [20, 40, 80, 160] {
            let (last, all) = errors(n, 640, alpha)?;
            match prev {
                Some((pl, pa)) => println!(
                    "  N = {n:>3}  at T {last:.3e} (order {:.2})  all t {all:.3e} (order {:.2})",
                    (pl / last).log2(),
                    (pa / all).log2()
                ),
                None => println!("  N = {n:>3}  at T {last:.3e}  all t {all:.3e}"),
            }
            prev = Some((last, all));
        }
    }
    Ok(())
}
