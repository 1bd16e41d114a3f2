//! The three reference problems on `[0, 0.02] × [0, 1]` with `u_0 = sin(πx)`:
//!
//! 1. `D^α u = u_xx` (symmetric; exact solution `E_α(-π² t^α) sin(πx)`),
//! 2. `D^α u = u_xx + u_x` (gradient drift, `b(x) = x`),
//! 3. `D^α u = u_xx + θ(x - 1/2) u_x` (Heaviside drift, `b ∉ W^{2,∞}`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{CoefficientSet, Grid1D};
use crate::solver::FractionalDiffusionProblem;
use crate::special::MlParams;

pub const DEFAULT_STEPS: usize = 20;
pub const DEFAULT_INTERVALS: usize = 80;
pub const DEFAULT_T_FINAL: f64 = 0.02;
pub const DEFAULT_ALPHAS: [f64; 3] = [0.1, 0.3, 0.5];

/// Heaviside step with `θ(0) = 1`.
pub fn heaviside(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExampleId {
    Symmetric,
    GradientDrift,
    HeavisideDrift,
}

impl ExampleId {
    pub const ALL: [ExampleId; 3] = [
        ExampleId::Symmetric,
        ExampleId::GradientDrift,
        ExampleId::HeavisideDrift,
    ];

    pub fn number(self) -> u8 {
        match self {
            ExampleId::Symmetric => 1,
            ExampleId::GradientDrift => 2,
            ExampleId::HeavisideDrift => 3,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(ExampleId::Symmetric),
            2 => Ok(ExampleId::GradientDrift),
            3 => Ok(ExampleId::HeavisideDrift),
            _ => Err(Error::Config(format!("unknown example id {n} (expected 1, 2 or 3)"))),
        }
    }

    pub fn coefficients(self, grid: &Grid1D) -> CoefficientSet {
        match self {
            ExampleId::Symmetric => CoefficientSet::laplacian(grid),
            ExampleId::GradientDrift => CoefficientSet::from_fns(grid, |_| 1.0, |_| 1.0, |_| 0.0),
            ExampleId::HeavisideDrift => {
                CoefficientSet::from_fns(grid, |_| 1.0, |x| heaviside(x - 0.5), |_| 0.0)
            }
        }
    }

    pub fn problem(self, grid: Grid1D, alpha: f64) -> Result<FractionalDiffusionProblem> {
        FractionalDiffusionProblem::new(grid, self.coefficients(&grid), alpha, sine_initial(&grid))
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n: u8 = s
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("unknown example id {s:?} (expected 1, 2 or 3)")))?;
        ExampleId::from_number(n)
    }
}

/// `sin(π x_i)`.
pub fn sine_initial(grid: &Grid1D) -> Vec<f64> {
    grid.sample(|x| (PI * x).sin())
}

/// Default grid: `M = 80`, `N = 20`, `T = 0.02`.
pub fn default_grid() -> Grid1D {
    Grid1D::new(DEFAULT_INTERVALS, DEFAULT_STEPS, DEFAULT_T_FINAL).expect("valid default grid")
}

/// `E_α(-π² t_k^α) sin(π x_i)` on every grid node.
pub fn symmetric_exact_rows(grid: &Grid1D, alpha: f64) -> Result<Vec<Vec<f64>>> {
    let ml = MlParams::new(alpha)?;
    let shape = sine_initial(grid);
    grid.times()
        .iter()
        .map(|&t| {
            let e = ml.eval(-PI * PI * t.powf(alpha))?;
            Ok(shape.iter().map(|s| e * s).collect())
        })
        .collect()
}
