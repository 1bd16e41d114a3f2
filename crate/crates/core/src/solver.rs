//! Implicit time stepping of the fully discrete scheme.
//!
//! Step `k` solves `(μI - L_h) u^k = μ (Σ_{j=1}^{k-1} (a_{k-j-1} - a_{k-j}) u^j + a_{k-1} u^0)`.
//! The step matrix does not depend on `k`, so it is factored once.

use serde::{Deserialize, Serialize};

use crate::caputo::{caputo_l1_apply, L1Weights};
use crate::error::{Error, Result};
use crate::operator::{apply_operator, assemble, CoefficientSet, Grid1D};

/// Relative size below which boundary samples of the initial datum are
/// treated as round-off and snapped to zero.
const BOUNDARY_SNAP: f64 = 1e-12;

/// A forward problem `D^α u = L u` with homogeneous Dirichlet data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalDiffusionProblem {
    grid: Grid1D,
    coeffs: CoefficientSet,
    alpha: f64,
    initial: Vec<f64>,
}

impl FractionalDiffusionProblem {
    /// Validates the inputs. Boundary samples of `initial` within round-off
    /// of zero (e.g. `sin(π·1)`) are set to exactly zero.
    pub fn new(grid: Grid1D, coeffs: CoefficientSet, alpha: f64, mut initial: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain(format!("fractional order {alpha} outside (0, 1]")));
        }
        coeffs.validate(&grid)?;
        let m = grid.m();
        if initial.len() != m + 1 {
            return Err(Error::Argument(format!(
                "initial datum has {} samples, grid has {} nodes",
                initial.len(),
                m + 1
            )));
        }
        if let Some(i) = initial.iter().position(|v| !v.is_finite()) {
            return Err(Error::Argument(format!("initial datum is not finite at node {i}")));
        }
        let scale = initial.iter().fold(1.0_f64, |s, v| s.max(v.abs()));
        for i in [0, m] {
            if initial[i].abs() > BOUNDARY_SNAP * scale {
                return Err(Error::Argument(format!(
                    "initial datum violates the Dirichlet condition at node {i} (value {})",
                    initial[i]
                )));
            }
            initial[i] = 0.0;
        }
        Ok(FractionalDiffusionProblem {
            grid,
            coeffs,
            alpha,
            initial,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn coeffs(&self) -> &CoefficientSet {
        &self.coeffs
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    /// Same grid and coefficients, different order.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.grid, self.coeffs.clone(), alpha, self.initial.clone())
    }

    /// Same grid and coefficients, different initial datum.
    pub fn with_initial(&self, initial: Vec<f64>) -> Result<Self> {
        Self::new(self.grid, self.coeffs.clone(), self.alpha, initial)
    }
}

/// Discrete solution `u(t_k, x_i)`, stored row-major with one row per time level.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    grid: Grid1D,
    alpha: f64,
    values: Vec<f64>,
}

impl SolutionField {
    /// Builds a field from `N+1` rows of `M+1` values each.
    pub fn from_rows(grid: Grid1D, alpha: f64, rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = grid.m() + 1;
        if rows.len() != grid.n() + 1 {
            return Err(Error::Argument(format!(
                "field has {} rows, grid needs {}",
                rows.len(),
                grid.n() + 1
            )));
        }
        let mut values = Vec::with_capacity(width * rows.len());
        for (k, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::Argument(format!(
                    "field row {k} has {} values, grid needs {width}",
                    row.len()
                )));
            }
            values.extend(row);
        }
        Ok(SolutionField { grid, alpha, values })
    }

    pub fn zeros(grid: Grid1D, alpha: f64) -> Self {
        SolutionField {
            grid,
            alpha,
            values: vec![0.0; (grid.n() + 1) * (grid.m() + 1)],
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn width(&self) -> usize {
        self.grid.m() + 1
    }

    pub fn row(&self, k: usize) -> &[f64] {
        let w = self.width();
        &self.values[k * w..(k + 1) * w]
    }

    pub fn row_mut(&mut self, k: usize) -> &mut [f64] {
        let w = self.width();
        &mut self.values[k * w..(k + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.width())
    }

    pub fn get(&self, k: usize, i: usize) -> f64 {
        self.values[k * self.width() + i]
    }

    /// Time history `u(t_0..t_k, x_i)` of one node.
    pub fn column_prefix(&self, i: usize, k: usize) -> Vec<f64> {
        (0..=k).map(|j| self.get(j, i)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest pointwise difference to another field on the same grid.
    pub fn max_abs_diff(&self, other: &SolutionField) -> f64 {
        assert_eq!(self.values.len(), other.values.len(), "field shapes differ");
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Applies `f(i, value)` to every entry.
    pub fn map_nodes(&self, f: impl Fn(usize, f64) -> f64) -> SolutionField {
        let w = self.width();
        SolutionField {
            grid: self.grid,
            alpha: self.alpha,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(idx, &v)| f(idx % w, v))
                .collect(),
        }
    }
}

/// Marches the scheme from `t_0` to `t_N`.
pub fn solve_forward(problem: &FractionalDiffusionProblem) -> Result<SolutionField> {
    let grid = *problem.grid();
    let (m, n) = (grid.m(), grid.n());
    let weights = L1Weights::new(problem.alpha(), grid.dt(), n)?;
    let mu = weights.mu();
    let lh = assemble(&grid, problem.coeffs())?;
    let factors = lh.shifted_negation(mu).factor().map_err(|e| match e {
        Error::Singular { row } => Error::StepSolve { step: 1, row },
        other => other,
    })?;

    let mut field = SolutionField::zeros(grid, problem.alpha());
    field.row_mut(0).copy_from_slice(problem.initial());
    let mut rhs = vec![0.0; m - 1];
    for k in 1..=n {
        rhs.iter_mut().for_each(|r| *r = 0.0);
        for j in 0..k {
            let c = mu * weights.history_coeff(k, j);
            let past = &field.row(j)[1..m];
            for (r, u) in rhs.iter_mut().zip(past) {
                *r += c * u;
            }
        }
        factors.solve_in_place(&mut rhs);
        if let Some(r) = rhs.iter().position(|v| !v.is_finite()) {
            return Err(Error::Blowup { step: k, node: r + 1 });
        }
        field.row_mut(k)[1..m].copy_from_slice(&rhs);
    }
    Ok(field)
}

/// `max_{k≥1, 0<i<M} |D^α u_i^k - (L_h u^k)_i|`, with the time derivative taken
/// from [`caputo_l1_apply`] node by node.
pub fn scheme_residual(field: &SolutionField, problem: &FractionalDiffusionProblem) -> Result<f64> {
    let grid = problem.grid();
    if field.grid().m() != grid.m() || field.grid().n() != grid.n() {
        return Err(Error::Argument(format!(
            "field is {}x{}, problem grid is {}x{}",
            field.grid().n() + 1,
            field.grid().m() + 1,
            grid.n() + 1,
            grid.m() + 1
        )));
    }
    let lh = assemble(grid, problem.coeffs())?;
    let (m, dt, alpha) = (grid.m(), grid.dt(), problem.alpha());
    let mut worst = 0.0_f64;
    for k in 1..=grid.n() {
        let lu = apply_operator(&lh, field.row(k));
        for (i, lu_i) in lu.iter().enumerate().take(m).skip(1) {
            let d = caputo_l1_apply(&field.column_prefix(i, k), alpha, dt)?;
            worst = worst.max((d - lu_i).abs());
        }
    }
    Ok(worst)
}
