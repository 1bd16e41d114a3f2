//! Solve, symmetrize and analyze one problem; compare the direct and the
//! symmetrized formulation of a drift problem.

use serde::{Deserialize, Serialize};

use crate::analysis::{LogConvexityReport, DEFAULT_CONVEXITY_TOL};
use crate::error::{Error, Result};
use crate::operator::{CoefficientSet, Grid1D};
use crate::solver::{solve_forward, FractionalDiffusionProblem, SolutionField};
use crate::symmetrization::{
    check_assumption_h_with, potential_b, symmetrize, symmetrized_coefficients, symmetrized_potential,
    transform, transform_field, AssumptionHReport, Direction, SymmetrizationData, DEFAULT_JUMP_FACTOR,
};

/// Thresholds used by the analysis stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSettings {
    pub convexity_rel_tol: f64,
    pub jump_factor: f64,
}

impl Default for AnalysisSettings {
    fn default() -> Self {
        AnalysisSettings {
            convexity_rel_tol: DEFAULT_CONVEXITY_TOL,
            jump_factor: DEFAULT_JUMP_FACTOR,
        }
    }
}

/// Everything produced for one fractional order.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub field: SolutionField,
    pub report: LogConvexityReport,
    pub assumption_h: AssumptionHReport,
    pub symmetrization: SymmetrizationData,
}

pub fn run_pipeline(problem: &FractionalDiffusionProblem, settings: &AnalysisSettings) -> Result<RunOutcome> {
    let grid = problem.grid();
    let coeffs = problem.coeffs();
    let symmetrization = symmetrize(grid, coeffs, settings.jump_factor)?;
    let assumption_h = check_assumption_h_with(grid, coeffs, settings.jump_factor);
    let field = solve_forward(problem)?;
    let report = LogConvexityReport::from_field(&field, symmetrization.b_sup_norm, settings.convexity_rel_tol)?;
    Ok(RunOutcome {
        field,
        report,
        assumption_h,
        symmetrization,
    })
}

/// Solves via `v = e^{b/2} u`: the drift-free problem with potential `q`,
/// mapped back to `u`.
pub fn solve_symmetrized(problem: &FractionalDiffusionProblem) -> Result<SolutionField> {
    let grid = *problem.grid();
    let b = potential_b(&grid, problem.coeffs())?;
    let q = symmetrized_potential(&grid, problem.coeffs(), &b)?;
    let v0 = transform(problem.initial(), &b, Direction::ToV);
    let sym = FractionalDiffusionProblem::new(
        grid,
        symmetrized_coefficients(problem.coeffs(), &q),
        problem.alpha(),
        v0,
    )?;
    let v = solve_forward(&sym)?;
    Ok(transform_field(&v, &b, Direction::ToU))
}

/// Direct vs symmetrized solution of the same problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizationCheck {
    pub alpha: f64,
    /// `max |u_direct - u_symmetrized|` over all nodes.
    pub max_discrepancy: f64,
    /// Larger of the two self-convergence error estimates.
    pub error_estimate: f64,
    pub direct_error_estimate: f64,
    pub symmetrized_error_estimate: f64,
    pub within_bound: bool,
    pub q_min: f64,
    pub q_max: f64,
}

/// Every second node in space and time of a problem on a grid with even
/// `M` and `N`.
fn coarsen(problem: &FractionalDiffusionProblem) -> Result<FractionalDiffusionProblem> {
    let g = problem.grid();
    if !g.m().is_multiple_of(2) || !g.n().is_multiple_of(2) || g.m() < 4 {
        return Err(Error::Argument(format!(
            "error estimate needs even N and M (M ≥ 4), got N = {}, M = {}",
            g.n(),
            g.m()
        )));
    }
    let grid = Grid1D::new(g.m() / 2, g.n() / 2, g.t_final())?;
    let even = |v: &[f64]| v.iter().step_by(2).copied().collect::<Vec<f64>>();
    let c = problem.coeffs();
    let coeffs = CoefficientSet::new(even(&c.a_diff), even(&c.b_drift), even(&c.p_pot));
    FractionalDiffusionProblem::new(grid, coeffs, problem.alpha(), even(problem.initial()))
}

/// `max |u_h - u_{2h}|` on the coarse nodes.
fn self_convergence_gap(fine: &SolutionField, coarse: &SolutionField) -> f64 {
    let mut gap = 0.0_f64;
    for (k, row) in coarse.rows().enumerate() {
        let fine_row = fine.row(2 * k);
        for (i, v) in row.iter().enumerate() {
            gap = gap.max((fine_row[2 * i] - v).abs());
        }
    }
    gap
}

/// Solves `problem` both ways and compares against twice the estimated
/// discretization error. Also returns the symmetrized-path field.
pub fn symmetrization_check(problem: &FractionalDiffusionProblem) -> Result<(SymmetrizationCheck, SolutionField)> {
    let direct = solve_forward(problem)?;
    let via_v = solve_symmetrized(problem)?;
    let coarse = coarsen(problem)?;
    let direct_est = self_convergence_gap(&direct, &solve_forward(&coarse)?);
    let sym_est = self_convergence_gap(&via_v, &solve_symmetrized(&coarse)?);
    let error_estimate = direct_est.max(sym_est);
    let max_discrepancy = direct.max_abs_diff(&via_v);

    let b = potential_b(problem.grid(), problem.coeffs())?;
    let q = symmetrized_potential(problem.grid(), problem.coeffs(), &b)?;
    let interior = &q[1..q.len() - 1];
    let q_min = interior.iter().copied().fold(f64::INFINITY, f64::min);
    let q_max = interior.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((
        SymmetrizationCheck {
            alpha: problem.alpha(),
            max_discrepancy,
            error_estimate,
            direct_error_estimate: direct_est,
            symmetrized_error_estimate: sym_est,
            within_bound: max_discrepancy <= 2.0 * error_estimate,
            q_min,
            q_max,
        },
        via_v,
    ))
}
