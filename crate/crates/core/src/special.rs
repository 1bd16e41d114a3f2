//! Euler gamma function and the one-parameter Mittag-Leffler function.
//!
//! `E_α(z) = Σ_k z^k / Γ(αk + 1)` is evaluated on the real line by one of
//! three routes:
//!
//! * the power series with compensated summation, whenever its terms stay
//!   small enough that cancellation cannot eat the requested accuracy;
//! * the algebraic asymptotic expansion `-Σ_{k=1..K} z^{-k} / Γ(1 - αk)`
//!   for `z < -50`;
//! * for `-50 ≤ z < 0` with `α < 1` where the series is ill-conditioned, the
//!   spectral (completely monotone) representation
//!   `E_α(-x) = sin(απ)/(απ) ∫_0^∞ exp(-(s x)^{1/α}) / (s² + 2 s cos(απ) + 1) ds`,
//!   integrated with adaptive Gauss-Kronrod quadrature.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `|z|` above which negative arguments use the asymptotic expansion.
pub const ASYMPTOTIC_SWITCH: f64 = 50.0;
/// Number of terms kept in the asymptotic expansion.
pub const ASYMPTOTIC_TERMS: usize = 30;
/// Largest term magnitude tolerated in an alternating series before the
/// evaluation is handed to the integral representation.
const SERIES_GROWTH_LIMIT: f64 = 1.0e4;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(πx)` with exact argument reduction.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

fn lanczos_sum(xm1: f64) -> f64 {
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    acc
}

fn gamma_unchecked(x: f64) -> f64 {
    if x == x.floor() && (1.0..=171.0).contains(&x) {
        return (2..x as u32).fold(1.0, |acc, i| acc * i as f64);
    }
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_unchecked(1.0 - x))
    } else {
        let xm1 = x - 1.0;
        let t = xm1 + LANCZOS_G + 0.5;
        // split the power so t^(x - 1/2) does not overflow before e^{-t} is applied
        let half = t.powf(0.5 * (xm1 + 0.5));
        (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(xm1)
    }
}

/// Euler gamma function, Lanczos approximation (g = 7, nine terms) with the
/// reflection formula below 1/2.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("gamma has a pole at {x}")));
    }
    Ok(gamma_unchecked(x))
}

/// `ln Γ(x)` for `x > 0`.
fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        (PI / sin_pi(x)).ln() - ln_gamma(1.0 - x)
    } else {
        let xm1 = x - 1.0;
        let t = xm1 + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln()
    }
}

/// `1/Γ(x)`, which is entire: zero at the poles of Γ and for huge `x`.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else if x < 0.5 {
        sin_pi(x) * gamma_unchecked(1.0 - x) / PI
    } else if x > 171.0 {
        (-ln_gamma(x)).exp()
    } else {
        1.0 / gamma_unchecked(x)
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Parameters of a Mittag-Leffler evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    /// Maximum number of series terms.
    pub series_cutoff: usize,
    /// The series stops once two consecutive terms fall below
    /// `tail_tolerance * max(1, |partial sum|)`.
    pub tail_tolerance: f64,
}

enum SeriesOutcome {
    Converged(f64),
    IllConditioned,
}

impl MlParams {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_limits(alpha, 4000, 1.0e-17)
    }

    pub fn with_limits(alpha: f64, series_cutoff: usize, tail_tolerance: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain(format!("Mittag-Leffler order {alpha} outside (0, 1]")));
        }
        if series_cutoff == 0 {
            return Err(Error::Domain("series cutoff must be positive".into()));
        }
        if !(tail_tolerance > 0.0) {
            return Err(Error::Domain(format!("tail tolerance {tail_tolerance} must be positive")));
        }
        Ok(MlParams {
            alpha,
            series_cutoff,
            tail_tolerance,
        })
    }

    /// `E_α(z)` for real `z`.
    pub fn eval(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::Domain(format!("Mittag-Leffler argument {z} is not finite")));
        }
        if z == 0.0 {
            return Ok(1.0);
        }
        if self.alpha == 1.0 {
            return Ok(z.exp());
        }
        if z < -ASYMPTOTIC_SWITCH {
            return Ok(self.asymptotic(z));
        }
        match self.series(z)? {
            SeriesOutcome::Converged(v) => Ok(v),
            SeriesOutcome::IllConditioned => Ok(self.spectral_integral(-z)),
        }
    }

    fn term(&self, z: f64, k: usize) -> f64 {
        let arg = self.alpha * k as f64 + 1.0;
        let direct = if arg < 170.0 {
            z.powi(k as i32) / gamma_unchecked(arg)
        } else {
            f64::NAN
        };
        if direct.is_finite() {
            direct
        } else {
            let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            sign * (k as f64 * z.abs().ln() - ln_gamma(arg)).exp()
        }
    }

    fn series(&self, z: f64) -> Result<SeriesOutcome> {
        let mut acc = CompensatedSum::default();
        let mut small_run = 0;
        let mut last = 0.0;
        for k in 0..self.series_cutoff {
            let term = self.term(z, k);
            if z < 0.0 && term.abs() > SERIES_GROWTH_LIMIT {
                return Ok(SeriesOutcome::IllConditioned);
            }
            acc.add(term);
            let sum = acc.value();
            if !sum.is_finite() {
                return Err(Error::Domain(format!(
                    "E_{}({z}) overflows double precision",
                    self.alpha
                )));
            }
            last = term.abs();
            if last < self.tail_tolerance * sum.abs().max(1.0) {
                small_run += 1;
                if small_run == 2 {
                    return Ok(SeriesOutcome::Converged(sum));
                }
            } else {
                small_run = 0;
            }
        }
        Err(Error::Accuracy {
            terms: self.series_cutoff,
            last_term: last,
        })
    }

    /// Algebraic expansion valid for large negative arguments and `α < 1`.
    pub fn asymptotic(&self, z: f64) -> f64 {
        let mut acc = CompensatedSum::default();
        let inv = 1.0 / z;
        let mut p = 1.0;
        for k in 1..=ASYMPTOTIC_TERMS {
            p *= inv;
            acc.add(-p * rgamma(1.0 - self.alpha * k as f64));
        }
        acc.value()
    }

    /// `E_α(-x)` for `x > 0`, `0 < α < 1`, from the spectral representation.
    fn spectral_integral(&self, x: f64) -> f64 {
        let a = self.alpha;
        let c = (a * PI).cos();
        let inv_a = 1.0 / a;
        // s in [0, 1]
        let near = |s: f64| (-(s * x).powf(inv_a)).exp() / (s * s + 2.0 * s * c + 1.0);
        // s = 1/w in [1, ∞)
        let far = |w: f64| {
            if w <= 0.0 {
                0.0
            } else {
                (-(x / w).powf(inv_a)).exp() / (1.0 + 2.0 * w * c + w * w)
            }
        };
        let total = adaptive_gauss_kronrod(&near, 0.0, 1.0, 1e-16, 1e-14)
            + adaptive_gauss_kronrod(&far, 0.0, 1.0, 1e-16, 1e-14);
        sin_pi(a) / (a * PI) * total
    }
}

/// `E_α(z)` with default series limits.
pub fn mittag_leffler(alpha: f64, z: f64) -> Result<f64> {
    MlParams::new(alpha)?.eval(z)
}

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK qk15).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One K15 panel; returns (Kronrod estimate, |Kronrod - Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive bisection on the panel with the largest error estimate.
pub(crate) fn adaptive_gauss_kronrod<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    const MAX_PANELS: usize = 4000;
    let (v, e) = gk15(f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) || panels.len() >= MAX_PANELS {
            let mut acc = CompensatedSum::default();
            panels.iter().for_each(|p| acc.add(p.2));
            return acc.value();
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty panel list");
        let (lo, hi, _, _) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}
