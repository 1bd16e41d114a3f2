//! Time-fractional diffusion `D_t^α u = (A u_x)_x + B u_x + p u` on `(0, T) × (0, 1)`
//! with homogeneous Dirichlet data.
//!
//! The crate covers the whole chain from special functions to experiment
//! output:
//!
//! * [`special`]: Euler gamma and the Mittag-Leffler function `E_α`;
//! * [`caputo`]: L1 weights and the discrete Caputo derivative;
//! * [`operator`]: grid, sampled coefficients, the tridiagonal operator `L_h`
//!   and the Thomas solver;
//! * [`solver`]: implicit L1 time stepping and an independent residual check;
//! * [`symmetrization`]: the `v = e^{b/2} u` change of variables that removes a
//!   gradient drift, and a discrete regularity check on `b`;
//! * [`analysis`]: norm curves, log-convexity certificates and the fitted
//!   constant of the interpolation estimate;
//! * [`presets`] and [`pipeline`]: the three reference problems and the
//!   solve/analyze pipeline;
//! * [`cli`]: configuration, file formats and the `fracdiff` command driver.
//!
//! ```
//! use fracdiff::presets::{default_grid, ExampleId};
//! use fracdiff::solver::solve_forward;
//! use fracdiff::analysis::{convexity_defect, NormCurve};
//!
//! let problem = ExampleId::Symmetric.problem(default_grid(), 0.5).unwrap();
//! let field = solve_forward(&problem).unwrap();
//! let curve = NormCurve::from_field(&field);
//! assert!(convexity_defect(&curve).unwrap() > -1e-8);
//! ```

pub mod analysis;
pub mod caputo;
pub mod cli;
pub mod error;
pub mod operator;
pub mod pipeline;
pub mod presets;
pub mod solver;
pub mod special;
pub mod symmetrization;

pub use error::{Error, Result};
