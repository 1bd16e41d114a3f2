//! Drivers behind the `example`, `solve`, `report` and `ml-eval` commands.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::analysis::{LogConvexityReport, NormCurve};
use crate::error::{Error, Result};
use crate::operator::Grid1D;
use crate::pipeline::{run_pipeline, symmetrization_check, AnalysisSettings, SymmetrizationCheck};
use crate::presets::{sine_initial, symmetric_exact_rows, ExampleId};
use crate::solver::{FractionalDiffusionProblem, SolutionField};
use crate::special::mittag_leffler;

use super::coeffs::read_coefficient_table;
use super::config::{ExampleChoice, RunConfig};
use super::output::{
    alpha_tag, format_error_csv, format_field_csv, format_norms_csv, parse_field_csv, write_file, ReportJson,
};
use super::svg::{lognorm_svg, surface_svg};

/// Files and headline numbers of one fractional order.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaArtifacts {
    pub alpha: f64,
    pub files: Vec<PathBuf>,
    pub report: ReportJson,
    pub symmetrization_check: Option<SymmetrizationCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub example: String,
    pub output_dir: PathBuf,
    pub runs: Vec<AlphaArtifacts>,
}

#[derive(Clone, Copy)]
enum Extras {
    None,
    ExactSymmetric,
    SymmetrizedPath,
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn check_field(field: &SolutionField, initial: &[f64]) -> Result<()> {
    let grid = field.grid();
    if field.row(0) != initial {
        return Err(Error::Invariant("first time level differs from the initial datum".into()));
    }
    for (k, row) in field.rows().enumerate() {
        if row[0] != 0.0 || row[grid.m()] != 0.0 {
            return Err(Error::Invariant(format!("Dirichlet condition broken at level {k}")));
        }
        if let Some(i) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::Invariant(format!("non-finite value at level {k}, node {i}")));
        }
    }
    if field.rows().count() != grid.n() + 1 {
        return Err(Error::Invariant("field row count differs from N + 1".into()));
    }
    Ok(())
}

fn run_one(
    problem: &FractionalDiffusionProblem,
    settings: &AnalysisSettings,
    out: &Path,
    plots: bool,
    extras: Extras,
) -> Result<AlphaArtifacts> {
    let grid = *problem.grid();
    let alpha = problem.alpha();
    let tag = alpha_tag(alpha);
    let outcome = run_pipeline(problem, settings)?;
    check_field(&outcome.field, problem.initial())?;

    let mut files = Vec::new();
    let mut emit = |name: String, contents: String| -> Result<()> {
        let path = out.join(name);
        write_file(&path, &contents)?;
        files.push(path);
        Ok(())
    };
    emit(format!("field_{tag}.csv"), format_field_csv(&outcome.field))?;
    emit(format!("norms_{tag}.csv"), format_norms_csv(&outcome.report.curve))?;
    let report = ReportJson::new(&grid, &outcome.report, &outcome.assumption_h);
    emit(format!("report_{tag}.json"), report.to_json()?)?;

    let mut symm = None;
    match extras {
        Extras::None => {}
        Extras::ExactSymmetric => {
            let exact = symmetric_exact_rows(&grid, alpha)?;
            emit(format!("error_vs_exact_{tag}.csv"), format_error_csv(&outcome.field, &exact))?;
        }
        Extras::SymmetrizedPath => {
            let (check, via_v) = symmetrization_check(problem)?;
            emit(format!("field_symm_{tag}.csv"), format_field_csv(&via_v))?;
            let mut json = serde_json::to_string_pretty(&check)?;
            json.push('\n');
            emit(format!("symm_check_{tag}.json"), json)?;
            symm = Some(check);
        }
    }
    if plots {
        emit(format!("lognorm_{tag}.svg"), lognorm_svg(alpha, &outcome.report.curve))?;
        emit(format!("surface_{tag}.svg"), surface_svg(&outcome.field))?;
    }
    Ok(AlphaArtifacts {
        alpha,
        files,
        report,
        symmetrization_check: symm,
    })
}

/// Runs every order concurrently; results come back in input order.
fn sweep(
    problems: Vec<FractionalDiffusionProblem>,
    cfg: &RunConfig,
    extras: Extras,
) -> Result<Vec<AlphaArtifacts>> {
    ensure_dir(&cfg.output_dir)?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = problems
            .iter()
            .map(|p| scope.spawn(move || run_one(p, &cfg.tolerances, &cfg.output_dir, cfg.emit_plots, extras)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("alpha worker panicked"))
            .collect()
    })
}

/// One of the three reference problems for every configured order.
pub fn run_example(cfg: &RunConfig) -> Result<RunSummary> {
    let id = match cfg.example {
        ExampleChoice::Preset(id) => id,
        ExampleChoice::Custom => return run_custom(cfg),
    };
    let grid = cfg.grid()?;
    let problems = cfg
        .alphas
        .iter()
        .map(|&a| id.problem(grid, a))
        .collect::<Result<Vec<_>>>()?;
    let extras = match id {
        ExampleId::Symmetric => Extras::ExactSymmetric,
        ExampleId::GradientDrift => Extras::SymmetrizedPath,
        ExampleId::HeavisideDrift => Extras::None,
    };
    Ok(RunSummary {
        example: id.to_string(),
        output_dir: cfg.output_dir.clone(),
        runs: sweep(problems, cfg, extras)?,
    })
}

/// The same pipeline on coefficients read from `cfg.coeffs_file`.
pub fn run_custom(cfg: &RunConfig) -> Result<RunSummary> {
    let path = cfg
        .coeffs_file
        .as_ref()
        .ok_or_else(|| Error::Config("a custom run needs a coefficient file (--coeffs)".into()))?;
    let table = read_coefficient_table(path)?;
    if table.m_intervals != cfg.m_intervals {
        return Err(Error::Config(format!(
            "coefficient file has M = {} intervals but the run is configured for M = {}",
            table.m_intervals, cfg.m_intervals
        )));
    }
    let grid = cfg.grid()?;
    let initial = table.initial.clone().unwrap_or_else(|| sine_initial(&grid));
    let problems = cfg
        .alphas
        .iter()
        .map(|&a| FractionalDiffusionProblem::new(grid, table.coeffs.clone(), a, initial.clone()))
        .collect::<Result<Vec<_>>>()?;
    let extras = if table.coeffs.has_drift() && grid.m().is_multiple_of(2) && grid.n().is_multiple_of(2) {
        Extras::SymmetrizedPath
    } else {
        Extras::None
    };
    Ok(RunSummary {
        example: "custom".into(),
        output_dir: cfg.output_dir.clone(),
        runs: sweep(problems, cfg, extras)?,
    })
}

/// A report recomputed from a stored field.
#[derive(Debug, Clone, Serialize)]
pub struct ReportCheck {
    pub field_file: PathBuf,
    pub report: ReportJson,
    /// Recomputed values agree with the stored report.
    pub consistent: bool,
}

fn reports_agree(a: &ReportJson, b: &ReportJson) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300);
    a.is_log_convex == b.is_log_convex
        && a.n == b.n
        && a.m == b.m
        && close(a.kappa_fit, b.kappa_fit)
        && a.norms.len() == b.norms.len()
        && a.norms.iter().zip(&b.norms).all(|(x, y)| close(*x, *y))
}

/// Recomputes the analysis for every `field_alpha*.csv` in `dir`, using the
/// neighbouring `report_alpha*.json` for `T`, `‖b‖∞` and the regularity flags.
pub fn run_report(dir: &Path, settings: &AnalysisSettings) -> Result<Vec<ReportCheck>> {
    let mut fields: Vec<(String, PathBuf)> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter_map(|p| {
            let name = p.file_name()?.to_str()?.to_owned();
            let tag = name.strip_prefix("field_alpha")?.strip_suffix(".csv")?.to_owned();
            Some((tag, p))
        })
        .collect();
    if fields.is_empty() {
        return Err(Error::Argument(format!("no field_alpha*.csv files in {}", dir.display())));
    }
    fields.sort();
    let mut checks = Vec::new();
    for (tag, path) in fields {
        let report_path = dir.join(format!("report_alpha{tag}.json"));
        let stored_text = std::fs::read_to_string(&report_path).map_err(|e| Error::io(&report_path, e))?;
        let stored: ReportJson = serde_json::from_str(&stored_text)?;
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let rows = parse_field_csv(&text)?;
        let m = rows.first().map_or(0, |r| r.len()).saturating_sub(1);
        let grid = Grid1D::new(m, rows.len().saturating_sub(1), stored.t_final)?;
        let field = SolutionField::from_rows(grid, stored.alpha, rows)?;
        let curve = NormCurve::from_field(&field);
        let report = LogConvexityReport::from_curve(stored.alpha, curve, stored.b_sup_norm, settings.convexity_rel_tol)?;
        let recomputed = ReportJson {
            alpha: stored.alpha,
            n: grid.n(),
            m: grid.m(),
            t_final: grid.t_final(),
            norms: report.curve.norms.clone(),
            log_norms: report.curve.log_norms.clone(),
            min_second_difference: report.min_second_difference,
            is_log_convex: report.is_log_convex,
            kappa_fit: report.kappa_fit,
            b_sup_norm: report.b_sup_norm,
            assumption_h: stored.assumption_h,
        };
        let consistent = reports_agree(&recomputed, &stored);
        checks.push(ReportCheck {
            field_file: path,
            report: recomputed,
            consistent,
        });
    }
    Ok(checks)
}

/// `E_α(z)`.
pub fn ml_eval(alpha: f64, z: f64) -> Result<f64> {
    mittag_leffler(alpha, z)
}
