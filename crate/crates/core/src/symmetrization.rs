//! Removal of a gradient drift by the substitution `v = e^{b/2} u`.
//!
//! In one dimension any drift can be written as `B = A b'`; the substitution
//! turns `(A u')' + B u' + p u` into the self-adjoint `(A v')' + q v` with
//! `q = p - (A b')'/2 - A (b')²/4`. Whether `b` is regular enough for the
//! associated estimate (`b ∈ W^{2,∞}`) is checked by a discrete jump detector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{CoefficientSet, Grid1D};
use crate::solver::SolutionField;

/// Default ratio between a flagged second difference of `b` and the
/// median second difference.
pub const DEFAULT_JUMP_FACTOR: f64 = 10.0;

/// Direction of the change of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `v = e^{b/2} u`
    ToV,
    /// `u = e^{-b/2} v`
    ToU,
}

impl Direction {
    fn exponent_sign(self) -> f64 {
        match self {
            Direction::ToV => 0.5,
            Direction::ToU => -0.5,
        }
    }
}

/// Everything the symmetrized problem and the estimate need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizationData {
    /// `b`, shifted so that its sup norm over the nodes is minimal.
    pub b_samples: Vec<f64>,
    pub q_samples: Vec<f64>,
    pub b_sup_norm: f64,
    /// `false` when a derivative jump of `B/A` was detected.
    pub smooth_flag: bool,
}

/// Outcome of the discrete regularity check on `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionHReport {
    /// `b` could be constructed (finite samples from admissible coefficients).
    pub feasible: bool,
    pub smooth_flag: bool,
    /// Largest `|b_{i+1} - 2 b_i + b_{i-1}|`.
    pub max_second_difference: f64,
    pub threshold: f64,
    /// Nodes whose second difference exceeds the threshold.
    pub jump_nodes: Vec<usize>,
}

/// `b(x_i) = ∫_0^{x_i} B/A` by the trapezoid rule, with `b(0) = 0`.
pub fn potential_b(grid: &Grid1D, coeffs: &CoefficientSet) -> Result<Vec<f64>> {
    coeffs.validate(grid)?;
    let dx = grid.dx();
    let ratio: Vec<f64> = coeffs
        .b_drift
        .iter()
        .zip(&coeffs.a_diff)
        .map(|(b, a)| b / a)
        .collect();
    let mut b = Vec::with_capacity(ratio.len());
    b.push(0.0);
    let mut acc = 0.0;
    for w in ratio.windows(2) {
        acc += 0.5 * dx * (w[0] + w[1]);
        b.push(acc);
    }
    Ok(b)
}

/// Shifts `b` by the midrange so that `max |b|` is as small as possible.
pub fn center_potential(b: &[f64]) -> (Vec<f64>, f64) {
    let (lo, hi) = b
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let mid = 0.5 * (lo + hi);
    let centered: Vec<f64> = b.iter().map(|v| v - mid).collect();
    let sup = centered.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    (centered, sup)
}

/// Centered first difference, second-order one-sided at both ends.
pub fn centered_difference(values: &[f64], dx: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 3, "need at least three samples to difference");
    let mut d = vec![0.0; n];
    let h2 = 2.0 * dx;
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / h2;
    d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / h2;
    for i in 1..n - 1 {
        d[i] = (values[i + 1] - values[i - 1]) / h2;
    }
    d
}

/// `D_h` of a flux `A D_h b`. The end samples of the flux come from one-sided
/// stencils whose error does not match the interior one, so when there are
/// enough nodes the outer derivative reads interior samples only: centered
/// where possible, one-sided at nodes `1` and `M-1`, and extrapolated from
/// nodes `1, 2, 3` at the ends.
fn flux_derivative(flux: &[f64], dx: f64) -> Vec<f64> {
    let n = flux.len();
    if n < 5 {
        return centered_difference(flux, dx);
    }
    let inner = centered_difference(&flux[1..n - 1], dx);
    let h2 = 2.0 * dx;
    let mut d = Vec::with_capacity(n);
    d.push((-5.0 * flux[1] + 8.0 * flux[2] - 3.0 * flux[3]) / h2);
    d.extend_from_slice(&inner);
    d.push((5.0 * flux[n - 2] - 8.0 * flux[n - 3] + 3.0 * flux[n - 4]) / h2);
    d
}

/// `q_i = p_i - ½ D_h(A D_h b)_i - ¼ A_i (D_h b)_i²`.
pub fn symmetrized_potential(grid: &Grid1D, coeffs: &CoefficientSet, b: &[f64]) -> Result<Vec<f64>> {
    coeffs.validate(grid)?;
    if b.len() != grid.m() + 1 {
        return Err(Error::Argument(format!(
            "b has {} samples, grid has {} nodes",
            b.len(),
            grid.m() + 1
        )));
    }
    let dx = grid.dx();
    let db = centered_difference(b, dx);
    let flux: Vec<f64> = coeffs.a_diff.iter().zip(&db).map(|(a, d)| a * d).collect();
    let dflux = flux_derivative(&flux, dx);
    Ok((0..b.len())
        .map(|i| coeffs.p_pot[i] - 0.5 * dflux[i] - 0.25 * coeffs.a_diff[i] * db[i] * db[i])
        .collect())
}

/// Multiplies node values by `e^{±b/2}`.
pub fn transform(values: &[f64], b: &[f64], direction: Direction) -> Vec<f64> {
    assert_eq!(values.len(), b.len(), "values and b are not aligned");
    let s = direction.exponent_sign();
    values.iter().zip(b).map(|(v, bi)| v * (s * bi).exp()).collect()
}

/// [`transform`] applied to every time level of a field.
pub fn transform_field(field: &SolutionField, b: &[f64], direction: Direction) -> SolutionField {
    assert_eq!(field.grid().m() + 1, b.len(), "field and b are not aligned");
    let s = direction.exponent_sign();
    let factors: Vec<f64> = b.iter().map(|bi| (s * bi).exp()).collect();
    field.map_nodes(|i, v| v * factors[i])
}

/// Coefficients of the symmetric operator: same `A`, no drift, potential `q`.
pub fn symmetrized_coefficients(coeffs: &CoefficientSet, q: &[f64]) -> CoefficientSet {
    CoefficientSet::new(coeffs.a_diff.clone(), vec![0.0; q.len()], q.to_vec())
}

fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn jump_scan(grid: &Grid1D, coeffs: &CoefficientSet, b: &[f64], jump_factor: f64) -> AssumptionHReport {
    let second: Vec<f64> = b.windows(3).map(|w| (w[2] - 2.0 * w[1] + w[0]).abs()).collect();
    let max_second = second.iter().fold(0.0_f64, |m, &s| m.max(s));
    // keeps round-off in a linear b from being read as a jump
    let slope_scale = coeffs
        .b_drift
        .iter()
        .zip(&coeffs.a_diff)
        .fold(0.0_f64, |m, (bv, a)| m.max((bv / a).abs()));
    let floor = 1e-10 * grid.dx() * slope_scale;
    let threshold = jump_factor * median(&second).max(floor);
    let jump_nodes: Vec<usize> = second
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > threshold)
        .map(|(i, _)| i + 1)
        .collect();
    AssumptionHReport {
        feasible: true,
        smooth_flag: jump_nodes.is_empty(),
        max_second_difference: max_second,
        threshold,
        jump_nodes,
    }
}

/// Discrete regularity check of the drift potential with a custom jump factor.
pub fn check_assumption_h_with(grid: &Grid1D, coeffs: &CoefficientSet, jump_factor: f64) -> AssumptionHReport {
    match potential_b(grid, coeffs) {
        Ok(b) if b.iter().all(|v| v.is_finite()) => jump_scan(grid, coeffs, &b, jump_factor),
        _ => AssumptionHReport {
            feasible: false,
            smooth_flag: false,
            max_second_difference: f64::NAN,
            threshold: f64::NAN,
            jump_nodes: Vec::new(),
        },
    }
}

pub fn check_assumption_h(grid: &Grid1D, coeffs: &CoefficientSet) -> AssumptionHReport {
    check_assumption_h_with(grid, coeffs, DEFAULT_JUMP_FACTOR)
}

/// Builds `b` (centered), `q` and the regularity flag in one pass.
pub fn symmetrize(grid: &Grid1D, coeffs: &CoefficientSet, jump_factor: f64) -> Result<SymmetrizationData> {
    let b = potential_b(grid, coeffs)?;
    let q = symmetrized_potential(grid, coeffs, &b)?;
    let report = jump_scan(grid, coeffs, &b, jump_factor);
    let (b_samples, b_sup_norm) = center_potential(&b);
    Ok(SymmetrizationData {
        b_samples,
        q_samples: q,
        b_sup_norm,
        smooth_flag: report.smooth_flag,
    })
}
