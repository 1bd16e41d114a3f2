//! Uniform space-time grid, sampled coefficients and the discrete operator
//!
//! ```text
//! (L_h u)_i = [A_{i-1/2} u_{i-1} - (A_{i-1/2} + A_{i+1/2}) u_i + A_{i+1/2} u_{i+1}] / Δx²
//!           + B_i (u_{i+1} - u_{i-1}) / (2Δx) + p_i u_i
//! ```
//!
//! on the interior nodes of `[0, 1]` with `u_0 = u_M = 0`. Half-node
//! diffusion values are arithmetic means of the adjacent node samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform discretization of `[0, T] × [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    m: usize,
    n: usize,
    t_final: f64,
}

impl Grid1D {
    /// `m` spatial intervals, `n` time steps, horizon `t_final`.
    pub fn new(m: usize, n: usize, t_final: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Argument(format!("need at least 2 spatial intervals, got {m}")));
        }
        if n < 1 {
            return Err(Error::Argument("need at least one time step".into()));
        }
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::Argument(format!("final time {t_final} must be positive")));
        }
        Ok(Grid1D { m, n, t_final })
    }

    /// Number of spatial intervals `M`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of time steps `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.m as f64
    }

    pub fn dt(&self) -> f64 {
        self.t_final / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 / self.m as f64
    }

    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.t_final / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.m).map(|i| self.x(i)).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.n).map(|k| self.t(k)).collect()
    }

    /// Samples `f(x_i)` for `i = 0..=M`.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..=self.m).map(|i| f(self.x(i))).collect()
    }
}

/// Node samples of the diffusion `A`, drift `B` and potential `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub a_diff: Vec<f64>,
    pub b_drift: Vec<f64>,
    pub p_pot: Vec<f64>,
}

impl CoefficientSet {
    pub fn new(a_diff: Vec<f64>, b_drift: Vec<f64>, p_pot: Vec<f64>) -> Self {
        CoefficientSet {
            a_diff,
            b_drift,
            p_pot,
        }
    }

    /// Samples closures on the grid nodes.
    pub fn from_fns(
        grid: &Grid1D,
        a: impl Fn(f64) -> f64,
        b: impl Fn(f64) -> f64,
        p: impl Fn(f64) -> f64,
    ) -> Self {
        CoefficientSet::new(grid.sample(a), grid.sample(b), grid.sample(p))
    }

    /// `A ≡ 1`, `B ≡ 0`, `p ≡ 0`.
    pub fn laplacian(grid: &Grid1D) -> Self {
        Self::from_fns(grid, |_| 1.0, |_| 0.0, |_| 0.0)
    }

    pub fn len(&self) -> usize {
        self.a_diff.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_diff.is_empty()
    }

    pub fn has_drift(&self) -> bool {
        self.b_drift.iter().any(|&b| b != 0.0)
    }

    /// Sample counts match the grid, every value is finite and `A > 0`.
    pub fn validate(&self, grid: &Grid1D) -> Result<()> {
        let want = grid.m() + 1;
        for (name, v) in [("A", &self.a_diff), ("B", &self.b_drift), ("p", &self.p_pot)] {
            if v.len() != want {
                return Err(Error::Argument(format!(
                    "coefficient {name} has {} samples, grid has {want} nodes",
                    v.len()
                )));
            }
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::Argument(format!("coefficient {name} is not finite at node {i}")));
            }
        }
        if let Some(i) = self.a_diff.iter().position(|&a| a <= 0.0) {
            return Err(Error::Ellipticity {
                node: i,
                x: grid.x(i),
                value: self.a_diff[i],
            });
        }
        Ok(())
    }
}

/// Tridiagonal matrix acting on the `M-1` interior nodes.
///
/// Row `r` reads `lower[r] x[r-1] + diagonal[r] x[r] + upper[r] x[r+1]`;
/// `lower[0]` and `upper[n-1]` are stored but never referenced.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    pub lower: Vec<f64>,
    pub diagonal: Vec<f64>,
    pub upper: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(lower: Vec<f64>, diagonal: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = diagonal.len();
        if n == 0 || lower.len() != n || upper.len() != n {
            return Err(Error::Argument(format!(
                "tridiagonal bands have lengths {}, {}, {}",
                lower.len(),
                n,
                upper.len()
            )));
        }
        Ok(TridiagonalMatrix {
            lower,
            diagonal,
            upper,
        })
    }

    pub fn identity(n: usize) -> Self {
        TridiagonalMatrix {
            lower: vec![0.0; n],
            diagonal: vec![1.0; n],
            upper: vec![0.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n, "dimension mismatch in tridiagonal product");
        (0..n)
            .map(|r| {
                let mut y = self.diagonal[r] * x[r];
                if r > 0 {
                    y += self.lower[r] * x[r - 1];
                }
                if r + 1 < n {
                    y += self.upper[r] * x[r + 1];
                }
                y
            })
            .collect()
    }

    /// `shift * I - self`.
    pub fn shifted_negation(&self, shift: f64) -> Self {
        TridiagonalMatrix {
            lower: self.lower.iter().map(|v| -v).collect(),
            diagonal: self.diagonal.iter().map(|v| shift - v).collect(),
            upper: self.upper.iter().map(|v| -v).collect(),
        }
    }

    /// Forward-elimination factors, reusable across right-hand sides.
    pub fn factor(&self) -> Result<ThomasFactors> {
        let n = self.dim();
        let mut c_prime = vec![0.0; n];
        let mut pivots = vec![0.0; n];
        for r in 0..n {
            let pivot = if r == 0 {
                self.diagonal[0]
            } else {
                self.diagonal[r] - self.lower[r] * c_prime[r - 1]
            };
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::Singular { row: r });
            }
            pivots[r] = pivot;
            if r + 1 < n {
                c_prime[r] = self.upper[r] / pivot;
            }
        }
        Ok(ThomasFactors {
            lower: self.lower.clone(),
            c_prime,
            pivots,
        })
    }
}

/// Thomas-algorithm factorization of a [`TridiagonalMatrix`].
#[derive(Debug, Clone)]
pub struct ThomasFactors {
    lower: Vec<f64>,
    c_prime: Vec<f64>,
    pivots: Vec<f64>,
}

impl ThomasFactors {
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = self.pivots.len();
        assert_eq!(rhs.len(), n, "dimension mismatch in tridiagonal solve");
        rhs[0] /= self.pivots[0];
        for r in 1..n {
            rhs[r] = (rhs[r] - self.lower[r] * rhs[r - 1]) / self.pivots[r];
        }
        for r in (0..n - 1).rev() {
            rhs[r] -= self.c_prime[r] * rhs[r + 1];
        }
    }
}

/// Solves `mat * x = rhs` without pivoting.
pub fn thomas_solve(mat: &TridiagonalMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != mat.dim() {
        return Err(Error::Argument(format!(
            "right-hand side has length {}, matrix has dimension {}",
            rhs.len(),
            mat.dim()
        )));
    }
    let factors = mat.factor()?;
    let mut x = rhs.to_vec();
    factors.solve_in_place(&mut x);
    Ok(x)
}

/// Assembles `L_h` on the interior nodes.
pub fn assemble(grid: &Grid1D, coeffs: &CoefficientSet) -> Result<TridiagonalMatrix> {
    coeffs.validate(grid)?;
    let m = grid.m();
    let dx = grid.dx();
    let inv_dx2 = 1.0 / (dx * dx);
    let inv_2dx = 0.5 / dx;
    let a = &coeffs.a_diff;
    let n = m - 1;
    let mut lower = vec![0.0; n];
    let mut diagonal = vec![0.0; n];
    let mut upper = vec![0.0; n];
    for i in 1..m {
        let r = i - 1;
        let a_west = 0.5 * (a[i - 1] + a[i]);
        let a_east = 0.5 * (a[i] + a[i + 1]);
        let drift = coeffs.b_drift[i] * inv_2dx;
        diagonal[r] = -(a_west + a_east) * inv_dx2 + coeffs.p_pot[i];
        if r > 0 {
            lower[r] = a_west * inv_dx2 - drift;
        }
        if r + 1 < n {
            upper[r] = a_east * inv_dx2 + drift;
        }
    }
    TridiagonalMatrix::new(lower, diagonal, upper)
}

/// Applies `L_h` to a full node vector (boundary values ignored, output
/// boundary entries zero).
pub fn apply_operator(mat: &TridiagonalMatrix, u: &[f64]) -> Vec<f64> {
    let m = mat.dim() + 1;
    assert_eq!(u.len(), m + 1, "node vector length does not match operator");
    let mut out = vec![0.0; m + 1];
    out[1..m].copy_from_slice(&mat.mul_vec(&u[1..m]));
    out
}
