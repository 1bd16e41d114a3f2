//! L1 discretization of the Caputo derivative on a uniform time grid.
//!
//! With `a_j = (j+1)^{1-α} - j^{1-α}` and `μ = Δt^{-α} / Γ(2-α)`,
//!
//! ```text
//! D^α u(t_k) ≈ μ ( u_k - Σ_{j=1}^{k-1} (a_{k-j-1} - a_{k-j}) u_j - a_{k-1} u_0 )
//! ```
//!
//! The memory sum is evaluated directly, so a run of `N` steps costs
//! `O(N²)` history operations per spatial node.

use crate::error::{Error, Result};
use crate::special::gamma;

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("fractional order {alpha} outside (0, 1]")))
    }
}

/// `[a_0, ..., a_{k-1}]`.
pub fn l1_weights(alpha: f64, k: usize) -> Result<Vec<f64>> {
    check_order(alpha)?;
    if k == 0 {
        return Err(Error::Argument("need at least one L1 weight".into()));
    }
    let e = 1.0 - alpha;
    Ok((0..k)
        .map(|j| match j {
            // 0^{1-α} is 0 here, including α = 1
            0 => 1.0,
            _ => {
                let j = j as f64;
                (j + 1.0).powf(e) - j.powf(e)
            }
        })
        .collect())
}

/// Cached L1 weights and scaling for one run (order, step, horizon).
#[derive(Debug, Clone, PartialEq)]
pub struct L1Weights {
    alpha: f64,
    dt: f64,
    mu: f64,
    weights: Vec<f64>,
}

impl L1Weights {
    /// Weights `a_0..a_{n-1}`, enough for steps `1..=n`.
    pub fn new(alpha: f64, dt: f64, n: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Argument(format!("time step {dt} must be positive")));
        }
        let weights = l1_weights(alpha, n)?;
        let mu = dt.powf(-alpha) / gamma(2.0 - alpha)?;
        Ok(L1Weights {
            alpha,
            dt,
            mu,
            weights,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// `Δt^{-α} / Γ(2-α)`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Coefficient multiplying `u_j` in the memory term at step `k`
    /// (`1 ≤ j ≤ k-1`), or the coefficient of `u_0` when `j == 0`.
    #[inline]
    pub fn history_coeff(&self, k: usize, j: usize) -> f64 {
        let a = &self.weights;
        if j == 0 {
            a[k - 1]
        } else {
            a[k - j - 1] - a[k - j]
        }
    }

    /// Memory combination `Σ_{j=1}^{k-1}(a_{k-j-1} - a_{k-j}) u_j + a_{k-1} u_0`
    /// for a scalar history `u_0..u_{k-1}`.
    pub fn memory(&self, history: &[f64]) -> f64 {
        let k = history.len();
        history
            .iter()
            .enumerate()
            .map(|(j, u)| self.history_coeff(k, j) * u)
            .sum()
    }

    /// Discrete Caputo derivative at `t_k` given `u_0..u_k`.
    pub fn apply(&self, history: &[f64]) -> Result<f64> {
        let k = history.len().checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| {
            Error::Argument(format!(
                "L1 derivative needs at least two history values, got {}",
                history.len()
            ))
        })?;
        if k > self.weights.len() {
            return Err(Error::Argument(format!(
                "history of {} steps exceeds the {} cached weights",
                k,
                self.weights.len()
            )));
        }
        Ok(self.mu * (history[k] - self.memory(&history[..k])))
    }
}

/// One-shot L1 Caputo derivative at the last point of `history`.
///
/// Evaluates the formula term by term from freshly computed weights; it
/// shares no state with [`L1Weights`] and serves as the reference the
/// solver residual is measured with.
pub fn caputo_l1_apply(history: &[f64], alpha: f64, dt: f64) -> Result<f64> {
    if history.len() < 2 {
        return Err(Error::Argument(format!(
            "L1 derivative needs at least two history values, got {}",
            history.len()
        )));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Argument(format!("time step {dt} must be positive")));
    }
    let k = history.len() - 1;
    let a = l1_weights(alpha, k)?;
    let mut acc = history[k];
    for j in 1..k {
        acc -= (a[k - j - 1] - a[k - j]) * history[j];
    }
    acc -= a[k - 1] * history[0];
    Ok(dt.powf(-alpha) / gamma(2.0 - alpha)? * acc)
}
