//! Tabulates `E_α(-x)` for a few orders and compares `α = 1/2` with the
//! closed form `e^{x²} erfc(x)`.
//!
//! ```text
//! cargo run --example mittag_leffler
//! ```

use fracdiff::special::{gamma, MlParams};

fn main() -> fracdiff::Result<()> {
    let xs = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0, 100.0];
    let orders = [0.1, 0.3, 0.5, 0.7, 0.9, 1.0];
    print!("{:>8}", "x");
    for a in orders {
        print!("{:>15}", format!("alpha={a}"));
    }
    println!();
    for x in xs {
        print!("{x:>8}");
        for a in orders {
            print!("{:>15.6e}", MlParams::new(a)?.eval(-x)?);
        }
        println!();
    }

    println!("\nGamma at a few points:");
    for x in [0.5, 1.5, 2.5, 5.0, -0.5] {
        println!("  Gamma({x}) = {:.15}", gamma(x)?);
    }
    Ok(())
}
