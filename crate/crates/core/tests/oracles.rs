//! Library results against independent reference computations.

mod common;

use std::f64::consts::PI;

use fracdiff::caputo::caputo_l1_apply;
use fracdiff::operator::{apply_operator, assemble, thomas_solve, CoefficientSet, Grid1D, TridiagonalMatrix};
use fracdiff::presets::{default_grid, sine_initial, ExampleId};
use fracdiff::solver::{solve_forward, FractionalDiffusionProblem};
use fracdiff::special::{gamma, mittag_leffler, MlParams};
use fracdiff::symmetrization::{potential_b, symmetrized_potential};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn e1_is_exp() {
    for k in 0..=100 {
        let z = -5.0 + 0.1 * k as f64;
        assert!(rel(mittag_leffler(1.0, z).unwrap(), z.exp()) <= 1e-12, "z = {z}");
    }
}

/// `E_{1/2}(z) = e^{z²} erfc(-z)`. For `z < -20` the product overflows, so
/// the asymptotic expansion of `erfcx(x) = e^{x²} erfc(x)` is summed instead.
fn e_half(z: f64) -> f64 {
    if z >= -20.0 {
        return (z * z).exp() * libm::erfc(-z);
    }
    let x = -z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..12 {
        term *= -((2 * k - 1) as f64) / (2.0 * x * x);
        sum += term;
    }
    sum / (x * std::f64::consts::PI.sqrt())
}

#[test]
fn e_half_matches_erfc_identity() {
    assert!(rel(mittag_leffler(0.5, -1.0).unwrap(), 1f64.exp() * libm::erfc(1.0)) <= 1e-10);
    for k in 0..=60 {
        let z = -30.0 + 0.5 * k as f64;
        let got = mittag_leffler(0.5, z).unwrap();
        assert!(rel(got, e_half(z)) <= 1e-9, "z = {z}: {got} vs {}", e_half(z));
    }
    // the asymptotic branch
    for z in [-60.0, -120.0, -500.0] {
        assert!(rel(mittag_leffler(0.5, z).unwrap(), e_half(z)) <= 1e-9, "z = {z}");
    }
}

#[test]
fn ml_is_positive_and_decreasing_on_negative_axis() {
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let ml = MlParams::new(alpha).unwrap();
        let mut prev = ml.eval(0.0).unwrap();
        assert_eq!(prev, 1.0);
        for k in 1..=200 {
            let z = -0.5 * k as f64;
            let v = ml.eval(z).unwrap();
            assert!(v > 0.0 && v < prev, "alpha {alpha}, z {z}: {v} after {prev}");
            prev = v;
        }
    }
}

#[test]
fn gamma_recurrence_and_reference() {
    for k in 0..=390 {
        let x = 0.5 + 0.05 * k as f64;
        let lhs = gamma(x + 1.0).unwrap();
        assert!(rel(lhs, x * gamma(x).unwrap()) <= 1e-12, "x = {x}");
    }
    for k in 1..=300 {
        let x = 0.1 * k as f64;
        assert!(rel(gamma(x).unwrap(), libm::tgamma(x)) <= 1e-13, "x = {x}");
    }
}

/// Gaussian elimination with partial pivoting on the dense matrix.
fn dense_solve(mat: &TridiagonalMatrix, rhs: &[f64]) -> Vec<f64> {
    let n = mat.dim();
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        a[i][i] = mat.diagonal[i];
        if i > 0 {
            a[i][i - 1] = mat.lower[i];
        }
        if i + 1 < n {
            a[i][i + 1] = mat.upper[i];
        }
        a[i][n] = rhs[i];
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs())).unwrap();
        a.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..=n {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (a[i][n] - s) / a[i][i];
    }
    x
}

#[test]
fn thomas_matches_dense_elimination() {
    let g = Grid1D::new(51, 1, 1.0).unwrap();
    let c = CoefficientSet::from_fns(&g, |x| 1.0 + 0.5 * (3.0 * x).sin(), |x| 4.0 * x - 2.0, |x| (5.0 * x).cos());
    let step = assemble(&g, &c).unwrap().shifted_negation(40.0);
    let rhs: Vec<f64> = (0..step.dim()).map(|i| ((i * 7 % 11) as f64 - 5.0) / 3.0).collect();
    let fast = thomas_solve(&step, &rhs).unwrap();
    let dense = dense_solve(&step, &rhs);
    for (a, b) in fast.iter().zip(&dense) {
        assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
    }
}

#[test]
fn alpha_one_is_backward_euler() {
    let g = default_grid();
    let u0 = sine_initial(&g);
    let field = solve_forward(&ExampleId::Symmetric.problem(g, 1.0).unwrap()).unwrap();
    let oracle = common::backward_euler_heat(g.m(), g.n(), g.t_final(), 1.0, &u0);
    for (k, row) in oracle.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            assert!((field.get(k, i) - v).abs() <= 1e-10);
        }
    }
}

/// `L_h` applied to smooth data approaches the continuous operator at second order.
#[test]
fn operator_consistency_is_second_order() {
    let u = |x: f64| (PI * x).sin() * (1.0 + x);
    let du = |x: f64| PI * (PI * x).cos() * (1.0 + x) + (PI * x).sin();
    let d2u = |x: f64| -PI * PI * (PI * x).sin() * (1.0 + x) + 2.0 * PI * (PI * x).cos();
    let a = |x: f64| 1.0 + 0.5 * x * x;
    let da = |x: f64| x;
    let b = |x: f64| (2.0 * x).cos();
    let p = |x: f64| x - 0.3;
    let exact = |x: f64| da(x) * du(x) + a(x) * d2u(x) + b(x) * du(x) + p(x) * u(x);
    let err = |m: usize| {
        let g = Grid1D::new(m, 1, 1.0).unwrap();
        let c = CoefficientSet::from_fns(&g, a, b, p);
        let lu = apply_operator(&assemble(&g, &c).unwrap(), &g.sample(u));
        (1..m).map(|i| (lu[i] - exact(g.x(i))).abs()).fold(0.0, f64::max)
    };
    let (e1, e2, e3) = (err(40), err(80), err(160));
    for order in [(e1 / e2).log2(), (e2 / e3).log2()] {
        assert!((order - 2.0).abs() < 0.1, "order {order}");
    }
}

#[test]
fn symmetrized_potential_is_second_order() {
    // analytic triple: A = 1 + x², b = sin 2x, p = cos x
    let exact = |x: f64| {
        let (a, da) = (1.0 + x * x, 2.0 * x);
        let (db, d2b) = (2.0 * (2.0 * x).cos(), -4.0 * (2.0 * x).sin());
        x.cos() - 0.5 * (da * db + a * d2b) - 0.25 * a * db * db
    };
    let err = |m: usize| {
        let g = Grid1D::new(m, 1, 1.0).unwrap();
        let c = CoefficientSet::from_fns(&g, |x| 1.0 + x * x, |_| 0.0, |x| x.cos());
        let q = symmetrized_potential(&g, &c, &g.sample(|x| (2.0 * x).sin())).unwrap();
        (0..=m).map(|i| (q[i] - exact(g.x(i))).abs()).fold(0.0, f64::max)
    };
    let (e1, e2, e3) = (err(40), err(80), err(160));
    for order in [(e1 / e2).log2(), (e2 / e3).log2()] {
        assert!(order > 1.8, "order {order} ({e1:e}, {e2:e}, {e3:e})");
    }

    // through the potential: A = 1 + x, B = 1, p = 0 gives b = ln(1 + x),
    // (A b')' = 0 and q = -1 / (4 (1 + x))
    let exact = |x: f64| -0.25 / (1.0 + x);
    let err = |m: usize| {
        let g = Grid1D::new(m, 1, 1.0).unwrap();
        let c = CoefficientSet::from_fns(&g, |x| 1.0 + x, |_| 1.0, |_| 0.0);
        let b = potential_b(&g, &c).unwrap();
        let q = symmetrized_potential(&g, &c, &b).unwrap();
        (0..=m).map(|i| (q[i] - exact(g.x(i))).abs()).fold(0.0, f64::max)
    };
    let (e1, e2, e3) = (err(40), err(80), err(160));
    for order in [(e1 / e2).log2(), (e2 / e3).log2()] {
        assert!(order > 1.8, "order {order} ({e1:e}, {e2:e}, {e3:e})");
    }
}

/// The L1 approximation of `D^α t²` converges at order `2 - α`.
#[test]
fn l1_truncation_order_on_smooth_data() {
    for alpha in [0.3, 0.5, 0.7] {
        let exact = 2.0 / gamma(3.0 - alpha).unwrap();
        let err = |n: usize| {
            let dt = 1.0 / n as f64;
            let h: Vec<f64> = (0..=n).map(|k| (k as f64 * dt).powi(2)).collect();
            (caputo_l1_apply(&h, alpha, dt).unwrap() - exact).abs()
        };
        let errs: Vec<f64> = [40, 80, 160, 320].iter().map(|&n| err(n)).collect();
        for w in errs.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - (2.0 - alpha)).abs() < 0.05, "alpha {alpha}: order {order}");
        }
    }
}

/// Sine data stays a sine mode under the scheme, so the discrete field equals
/// `c_k sin(π x_i)` with `c_k` from the scalar L1 recurrence at the discrete
/// eigenvalue. With the continuous eigenvalue the gap is `O(Δx²)`.
#[test]
fn spatial_error_is_second_order() {
    let alpha = 0.5;
    let scalar = |lambda: f64, n: usize, dt: f64| -> f64 {
        let w = fracdiff::caputo::l1_weights(alpha, n).unwrap();
        let mu = dt.powf(-alpha) / gamma(2.0 - alpha).unwrap();
        let mut c = vec![1.0];
        for k in 1..=n {
            let mut mem = w[k - 1] * c[0];
            for j in 1..k {
                mem += (w[k - j - 1] - w[k - j]) * c[j];
            }
            c.push(mu * mem / (mu + lambda));
        }
        c[n]
    };
    let n = 20;
    let t = 0.02;
    let dt = t / n as f64;
    let reference = scalar(PI * PI, n, dt);
    let err = |m: usize| {
        let g = Grid1D::new(m, n, t).unwrap();
        let f = solve_forward(&ExampleId::Symmetric.problem(g, alpha).unwrap()).unwrap();
        let lambda_h = 4.0 / g.dx().powi(2) * (PI * g.dx() / 2.0).sin().powi(2);
        let discrete = scalar(lambda_h, n, dt);
        let shape = sine_initial(&g);
        let mut gap: f64 = 0.0;
        for i in 0..=m {
            assert!((f.get(n, i) - discrete * shape[i]).abs() <= 1e-13);
            gap = gap.max((f.get(n, i) - reference * shape[i]).abs());
        }
        gap
    };
    let (e1, e2, e3) = (err(20), err(40), err(80));
    for order in [(e1 / e2).log2(), (e2 / e3).log2()] {
        assert!((order - 2.0).abs() < 0.05, "order {order}");
    }
}

#[test]
fn drift_problem_residual_is_round_off() {
    let g = default_grid();
    for id in ExampleId::ALL {
        let p: FractionalDiffusionProblem = id.problem(g, 0.3).unwrap();
        let f = solve_forward(&p).unwrap();
        let r = fracdiff::solver::scheme_residual(&f, &p).unwrap();
        assert!(r <= 1e-9 * f.max_abs(), "{id}: residual {r:e}");
    }
}
