//! The L1 approximation of the Caputo derivative of `t²` at `t = 1`, whose
//! exact value is `2 / Γ(3 - α)`; the error falls like `Δt^{2-α}`.
//!
//! ```text
//! cargo run --example caputo_l1
//! ```

use fracdiff::caputo::{caputo_l1_apply, l1_weights};
use fracdiff::special::gamma;

fn main() -> fracdiff::Result<()> {
    println!("first L1 weights for alpha = 0.5: {:?}", l1_weights(0.5, 5)?);
    for alpha in [0.3, 0.5, 0.8] {
        let exact = 2.0 / gamma(3.0 - alpha)?;
        println!("\nalpha = {alpha}, exact {exact:.12}");
        let mut prev: Option<f64> = None;
        for n in [10, 20, 40, 80, 160, 320] {
            let dt = 1.0 / n as f64;
            let history: Vec<f64> = (0..=n).map(|k| (k as f64 * dt).powi(2)).collect();
            let err = (caputo_l1_apply(&history, alpha, dt)? - exact).abs();
            match prev {
                Some(p) => println!("  N = {n:>4}  error {err:.3e}  order {:.3}", (p / err).log2()),
                None => println!("  N = {n:>4}  error {err:.3e}"),
            }
            prev = Some(err);
        }
    }
    Ok(())
}
