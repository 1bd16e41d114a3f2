//! Minimal SVG line plots: log-norm curves and wireframe solution surfaces.

use std::fmt::Write as _;

use crate::analysis::NormCurve;
use crate::solver::SolutionField;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{title}</text>\n",
        WIDTH / 2.0
    )
}

fn polyline(points: &[(f64, f64)], stroke: &str, width: f64) -> String {
    let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    format!(
        "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\" points=\"{}\"/>\n",
        pts.join(" ")
    )
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// `ln ‖u(t,·)‖` against `t`. Levels with a vanishing norm are skipped.
pub fn lognorm_svg(alpha: f64, curve: &NormCurve) -> String {
    let pts: Vec<(f64, f64)> = curve
        .times
        .iter()
        .zip(&curve.log_norms)
        .filter_map(|(t, l)| l.map(|l| (*t, l)))
        .collect();
    let (t0, t1) = range(pts.iter().map(|p| p.0));
    let (l0, l1) = range(pts.iter().map(|p| p.1));
    let sx = |t: f64| MARGIN + (t - t0) / (t1 - t0) * (WIDTH - 2.0 * MARGIN);
    let sy = |l: f64| HEIGHT - MARGIN - (l - l0) / (l1 - l0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = header(&format!("log ‖u(t,·)‖, α = {alpha}"));
    let axes = [
        (MARGIN, HEIGHT - MARGIN),
        (WIDTH - MARGIN, HEIGHT - MARGIN),
    ];
    s.push_str(&polyline(&axes, "black", 1.0));
    s.push_str(&polyline(&[(MARGIN, MARGIN), (MARGIN, HEIGHT - MARGIN)], "black", 1.0));
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
        MARGIN,
        HEIGHT - MARGIN + 20.0,
        format_args!("t = {t0}")
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">t = {t1}</text>",
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 20.0
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"12\">{l1:.6}</text>",
        5.0,
        MARGIN
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"12\">{l0:.6}</text>",
        5.0,
        HEIGHT - MARGIN
    );
    let mapped: Vec<(f64, f64)> = pts.iter().map(|(t, l)| (sx(*t), sy(*l))).collect();
    s.push_str(&polyline(&mapped, "steelblue", 2.0));
    for (x, y) in &mapped {
        let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"2.5\" fill=\"steelblue\"/>");
    }
    s.push_str("</svg>\n");
    s
}

/// Wireframe of `u(t, x)` under a fixed isometric projection: `x` to the
/// right, `t` receding up-right, `u` up.
pub fn surface_svg(field: &SolutionField) -> String {
    let grid = field.grid();
    let (u0, u1) = range(field.values().iter().copied());
    let depth = 0.35 * WIDTH;
    let span_x = WIDTH - 2.0 * MARGIN - depth * 0.866;
    let span_u = HEIGHT - 2.0 * MARGIN - depth * 0.5;
    let project = |k: usize, i: usize| {
        let xs = grid.x(i);
        let ts = grid.t(k) / grid.t_final();
        let us = (field.get(k, i) - u0) / (u1 - u0);
        (
            MARGIN + xs * span_x + ts * depth * 0.866,
            HEIGHT - MARGIN - us * span_u - ts * depth * 0.5,
        )
    };
    let mut s = header(&format!("u(t, x), α = {}", field.alpha()));
    // back rows first so nearer rows are drawn on top
    for k in (0..=grid.n()).rev() {
        let pts: Vec<(f64, f64)> = (0..=grid.m()).map(|i| project(k, i)).collect();
        s.push_str(&polyline(&pts, "steelblue", 1.0));
    }
    let stride = (grid.m() / 16).max(1);
    for i in (0..=grid.m()).step_by(stride) {
        let pts: Vec<(f64, f64)> = (0..=grid.n()).map(|k| project(k, i)).collect();
        s.push_str(&polyline(&pts, "lightsteelblue", 0.7));
    }
    s.push_str("</svg>\n");
    s
}
