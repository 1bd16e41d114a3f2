//! Norm curves of discrete solutions and the logarithmic-convexity checks
//! built on them.
//!
//! For a curve `n_k = ‖u(t_k)‖` the checked estimate is
//! `n_k ≤ κ e^{‖b‖∞} n_0^{1-t_k/T} n_N^{t_k/T}`; discrete log-convexity is
//! certified by nonnegative second differences of `ln n_k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::SolutionField;

/// Default relative slack for the log-convexity certificate.
pub const DEFAULT_CONVEXITY_TOL: f64 = 1e-8;

/// `sqrt(∫ u²)` by the trapezoid rule on a uniform grid.
pub fn l2_norm(samples: &[f64], dx: f64) -> f64 {
    assert!(samples.len() >= 2, "need at least two samples for a trapezoid norm");
    let n = samples.len() - 1;
    let ends = 0.5 * (samples[0] * samples[0] + samples[n] * samples[n]);
    let interior: f64 = samples[1..n].iter().map(|v| v * v).sum();
    (dx * (ends + interior)).sqrt()
}

/// `t ↦ ‖u(t, ·)‖` sampled on the time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormCurve {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    /// `None` where the norm vanishes.
    pub log_norms: Vec<Option<f64>>,
}

impl NormCurve {
    pub fn new(times: Vec<f64>, norms: Vec<f64>) -> Result<Self> {
        if times.len() != norms.len() || times.is_empty() {
            return Err(Error::Argument(format!(
                "norm curve has {} times and {} norms",
                times.len(),
                norms.len()
            )));
        }
        if let Some(k) = norms.iter().position(|n| !(*n >= 0.0) || !n.is_finite()) {
            return Err(Error::Argument(format!("norm at level {k} is {}", norms[k])));
        }
        let log_norms = norms.iter().map(|&n| (n > 0.0).then(|| n.ln())).collect();
        Ok(NormCurve {
            times,
            norms,
            log_norms,
        })
    }

    pub fn from_field(field: &SolutionField) -> Self {
        let dx = field.grid().dx();
        let norms = field.rows().map(|r| l2_norm(r, dx)).collect();
        NormCurve::new(field.grid().times(), norms).expect("field rows are finite")
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    /// All log-norms, or a degenerate-curve error if any norm is zero.
    pub fn strict_log_norms(&self) -> Result<Vec<f64>> {
        self.log_norms
            .iter()
            .enumerate()
            .map(|(k, l)| {
                l.ok_or_else(|| Error::DegenerateCurve(format!("norm vanishes at level {k}")))
            })
            .collect()
    }

    /// Multiplies every norm by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        NormCurve::new(self.times.clone(), self.norms.iter().map(|n| n * c).collect())
    }
}

/// `min_k (ℓ_{k-1} - 2ℓ_k + ℓ_{k+1})` over the interior levels of the log-norm curve.
pub fn convexity_defect(curve: &NormCurve) -> Result<f64> {
    let logs = curve.strict_log_norms()?;
    if logs.len() < 3 {
        return Err(Error::DegenerateCurve(format!(
            "need at least three time levels, got {}",
            logs.len()
        )));
    }
    Ok(logs
        .windows(3)
        .map(|w| w[0] - 2.0 * w[1] + w[2])
        .fold(f64::INFINITY, f64::min))
}

/// Slack `rel_tol · max(1, range of ln n_k)` granted to the defect.
pub fn convexity_tolerance(curve: &NormCurve, rel_tol: f64) -> f64 {
    let logs: Vec<f64> = curve.log_norms.iter().flatten().copied().collect();
    let (lo, hi) = logs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let range = if logs.is_empty() { 0.0 } else { hi - lo };
    rel_tol * range.max(1.0)
}

fn chord(n0: f64, nn: f64, t: f64, t_final: f64) -> f64 {
    let w = t / t_final;
    n0.powf(1.0 - w) * nn.powf(w)
}

/// Smallest `κ` with `n_k ≤ κ e^{b} n_0^{1-t_k/T} n_N^{t_k/T}` at every grid time.
pub fn kappa_fit(curve: &NormCurve, b_sup_norm: f64) -> Result<f64> {
    let (n0, nn) = (curve.norms[0], curve.norms[curve.len() - 1]);
    if n0 <= 0.0 || nn <= 0.0 {
        return Err(Error::DegenerateCurve(format!(
            "endpoint norms must be positive (got {n0}, {nn})"
        )));
    }
    let t_final = curve.times[curve.len() - 1];
    let prefactor = b_sup_norm.exp();
    Ok(curve
        .times
        .iter()
        .zip(&curve.norms)
        .map(|(&t, &n)| n / (prefactor * chord(n0, nn, t, t_final)))
        .fold(0.0, f64::max))
}

/// Log-convexity diagnostics of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogConvexityReport {
    pub alpha: f64,
    pub curve: NormCurve,
    pub min_second_difference: f64,
    pub is_log_convex: bool,
    pub kappa_fit: f64,
    pub b_sup_norm: f64,
}

impl LogConvexityReport {
    pub fn from_curve(alpha: f64, curve: NormCurve, b_sup_norm: f64, rel_tol: f64) -> Result<Self> {
        let defect = convexity_defect(&curve)?;
        let tol = convexity_tolerance(&curve, rel_tol);
        let kappa = kappa_fit(&curve, b_sup_norm)?;
        Ok(LogConvexityReport {
            alpha,
            curve,
            min_second_difference: defect,
            is_log_convex: defect >= -tol,
            kappa_fit: kappa,
            b_sup_norm,
        })
    }

    pub fn from_field(field: &SolutionField, b_sup_norm: f64, rel_tol: f64) -> Result<Self> {
        Self::from_curve(field.alpha(), NormCurve::from_field(field), b_sup_norm, rel_tol)
    }
}

/// Quantitative form of backward uniqueness on one field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackwardUniquenessProbe {
    /// `false` when the terminal norm exceeds the threshold.
    pub applicable: bool,
    pub terminal_norm: f64,
    pub initial_norm: f64,
    pub max_norm: f64,
    pub kappa: Option<f64>,
    /// `κ ‖u_0‖^{1-t_k/T} ‖u(T)‖^{t_k/T}` per level.
    pub bounds: Vec<f64>,
    pub max_bound: Option<f64>,
}

/// If `‖u(T)‖ ≤ threshold`, bounds every `‖u(t_k)‖` through the fitted estimate.
pub fn backward_uniqueness_probe(field: &SolutionField, threshold: f64) -> Result<BackwardUniquenessProbe> {
    let curve = NormCurve::from_field(field);
    let n0 = curve.norms[0];
    let nn = curve.norms[curve.len() - 1];
    let max_norm = curve.norms.iter().copied().fold(0.0, f64::max);
    if nn > threshold {
        return Ok(BackwardUniquenessProbe {
            applicable: false,
            terminal_norm: nn,
            initial_norm: n0,
            max_norm,
            kappa: None,
            bounds: Vec::new(),
            max_bound: None,
        });
    }
    // with a vanishing endpoint every κ gives the same bound, take 1
    let kappa = if n0 > 0.0 && nn > 0.0 { kappa_fit(&curve, 0.0)? } else { 1.0 };
    let t_final = field.grid().t_final();
    let bounds: Vec<f64> = curve
        .times
        .iter()
        .map(|&t| kappa * chord(n0, nn, t, t_final))
        .collect();
    let max_bound = bounds.iter().copied().fold(0.0, f64::max);
    Ok(BackwardUniquenessProbe {
        applicable: true,
        terminal_norm: nn,
        initial_norm: n0,
        max_norm,
        kappa: Some(kappa),
        bounds,
        max_bound: Some(max_bound),
    })
}
