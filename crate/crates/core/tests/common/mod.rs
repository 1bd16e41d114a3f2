//! Property checks shared by the proptest target and the acceptance suite.
#![allow(dead_code)]

use fracdiff::analysis::{convexity_defect, kappa_fit, NormCurve};
use fracdiff::caputo::l1_weights;
use fracdiff::operator::{CoefficientSet, Grid1D};
use fracdiff::solver::{solve_forward, FractionalDiffusionProblem};
use fracdiff::symmetrization::{transform, Direction};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type CaseResult = Result<(), TestCaseError>;

/// Interior values plus zero boundary values.
pub fn with_boundary(interior: &[f64]) -> Vec<f64> {
    let mut v = Vec::with_capacity(interior.len() + 2);
    v.push(0.0);
    v.extend_from_slice(interior);
    v.push(0.0);
    v
}

#[derive(Debug, Clone)]
pub struct LinearityCase {
    pub alpha: f64,
    pub m: usize,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub p: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub c1: f64,
    pub c2: f64,
}

pub fn linearity_case() -> impl Strategy<Value = LinearityCase> {
    (0.05f64..=1.0, 4usize..24, 1usize..12).prop_flat_map(|(alpha, m, n)| {
        (
            prop::collection::vec(0.2f64..3.0, m + 1),
            prop::collection::vec(-2.0f64..2.0, m + 1),
            prop::collection::vec(-2.0f64..2.0, m + 1),
            prop::collection::vec(-1.0f64..1.0, m - 1),
            prop::collection::vec(-1.0f64..1.0, m - 1),
            -3.0f64..3.0,
            -3.0f64..3.0,
        )
            .prop_map(move |(a, b, p, u, w, c1, c2)| LinearityCase {
                alpha,
                m,
                n,
                a,
                b,
                p,
                u: with_boundary(&u),
                w: with_boundary(&w),
                c1,
                c2,
            })
    })
}

pub fn check_linearity(case: &LinearityCase) -> CaseResult {
    let grid = Grid1D::new(case.m, case.n, 0.1).unwrap();
    let coeffs = CoefficientSet::new(case.a.clone(), case.b.clone(), case.p.clone());
    let solve = |init: Vec<f64>| {
        solve_forward(&FractionalDiffusionProblem::new(grid, coeffs.clone(), case.alpha, init).unwrap()).unwrap()
    };
    let combo: Vec<f64> = case.u.iter().zip(&case.w).map(|(u, w)| case.c1 * u + case.c2 * w).collect();
    let fu = solve(case.u.clone());
    let fw = solve(case.w.clone());
    let fc = solve(combo);
    let scale = 1.0 + fu.max_abs() * case.c1.abs() + fw.max_abs() * case.c2.abs();
    for (i, (&c, (&u, &w))) in fc.values().iter().zip(fu.values().iter().zip(fw.values())).enumerate() {
        let diff = (c - (case.c1 * u + case.c2 * w)).abs();
        prop_assert!(diff <= 1e-10 * scale, "entry {i}: discrepancy {diff:e}");
    }
    Ok(())
}

pub fn check_telescoping(alpha: f64, k: usize) -> CaseResult {
    let w = l1_weights(alpha, k).unwrap();
    let sum: f64 = w.iter().sum();
    let expected = (k as f64).powf(1.0 - alpha);
    prop_assert!(
        (sum - expected).abs() <= 1e-12 * expected.max(1.0),
        "sum {sum} vs {expected}"
    );
    Ok(())
}

pub fn transform_case() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..60).prop_flat_map(|n| {
        (
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(-5.0f64..5.0, n),
        )
    })
}

pub fn check_round_trip(values: &[f64], b: &[f64]) -> CaseResult {
    let back = transform(&transform(values, b, Direction::ToV), b, Direction::ToU);
    for (v, r) in values.iter().zip(&back) {
        prop_assert!((v - r).abs() <= 1e-14 * v.abs().max(1.0), "{v} -> {r}");
    }
    Ok(())
}

pub fn log_linear_case() -> impl Strategy<Value = (usize, f64, f64, f64)> {
    (3usize..40, 0.01f64..5.0, 1e-3f64..1e3, -5.0f64..5.0)
}

pub fn log_linear_curve(levels: usize, t_final: f64, n0: f64, slope: f64) -> NormCurve {
    let times: Vec<f64> = (0..levels).map(|k| t_final * k as f64 / (levels - 1) as f64).collect();
    let norms = times.iter().map(|t| n0 * (slope * t).exp()).collect();
    NormCurve::new(times, norms).unwrap()
}

pub fn check_kappa_equality(levels: usize, t_final: f64, n0: f64, slope: f64) -> CaseResult {
    let curve = log_linear_curve(levels, t_final, n0, slope);
    let kappa = kappa_fit(&curve, 0.0).unwrap();
    prop_assert!((kappa - 1.0).abs() <= 1e-12, "kappa {kappa}");
    Ok(())
}

pub fn positive_curve() -> impl Strategy<Value = (NormCurve, f64)> {
    (3usize..30).prop_flat_map(|n| {
        (
            prop::collection::vec(1e-3f64..1e3, n),
            1e-6f64..1e6,
        )
            .prop_map(move |(norms, c)| {
                let times = (0..norms.len()).map(|k| k as f64 * 0.1).collect();
                (NormCurve::new(times, norms).unwrap(), c)
            })
    })
}

pub fn check_defect_scaling(curve: &NormCurve, c: f64) -> CaseResult {
    let d = convexity_defect(curve).unwrap();
    let ds = convexity_defect(&curve.scaled(c).unwrap()).unwrap();
    // ln(c n) = ln c + ln n loses up to a few ulps of the larger magnitude
    let tol = 1e-12 * (1.0 + c.ln().abs() + curve.norms.iter().fold(0.0f64, |m, n| m.max(n.ln().abs())));
    prop_assert!((d - ds).abs() <= tol, "{d} vs {ds}");
    Ok(())
}

/// Deterministic runner for the acceptance suite.
pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

/// Backward Euler for `u_t = A u_xx` with homogeneous Dirichlet data,
/// written out independently of the library operator and factorization.
pub fn backward_euler_heat(m: usize, n: usize, t_final: f64, a: f64, initial: &[f64]) -> Vec<Vec<f64>> {
    let dx = 1.0 / m as f64;
    let dt = t_final / n as f64;
    let r = a * dt / (dx * dx);
    let size = m - 1;
    let mut rows = vec![initial.to_vec()];
    for _ in 0..n {
        let prev = rows.last().unwrap();
        // (1 + 2r) u_i - r u_{i-1} - r u_{i+1} = prev_i
        let mut c = vec![0.0; size];
        let mut d = vec![0.0; size];
        for j in 0..size {
            let sub = if j > 0 { -r } else { 0.0 };
            let denom = 1.0 + 2.0 * r - sub * if j > 0 { c[j - 1] } else { 0.0 };
            c[j] = -r / denom;
            d[j] = (prev[j + 1] - sub * if j > 0 { d[j - 1] } else { 0.0 }) / denom;
        }
        let mut next = vec![0.0; m + 1];
        for j in (0..size).rev() {
            let after = if j + 1 < size { next[j + 2] } else { 0.0 };
            next[j + 1] = d[j] - c[j] * after;
        }
        rows.push(next);
    }
    rows
}
