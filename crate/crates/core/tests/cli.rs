//! End-to-end runs of the `fracdiff` binary.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fracdiff::analysis::backward_uniqueness_probe;
use fracdiff::cli::coeffs::format_coefficient_table;
use fracdiff::cli::output::ReportJson;
use fracdiff::operator::{CoefficientSet, Grid1D};
use fracdiff::presets::{default_grid, ExampleId};
use fracdiff::solver::solve_forward;
use fracdiff::symmetrization::{center_potential, potential_b};

fn fracdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracdiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = fracdiff(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn read_report(path: &Path) -> ReportJson {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn sorted_files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        ok(&["example", "2", "--out", dir.path().to_str().unwrap(), "--plots"]);
    }
    let names = sorted_files(a.path());
    assert_eq!(names, sorted_files(b.path()));
    assert_eq!(names.len(), 3 * 7);
    for name in names {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn every_example_is_log_convex_and_flags_the_heaviside_jump() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["1", "2", "3"] {
        let out = dir.path().join(id);
        ok(&["example", id, "--out", out.to_str().unwrap()]);
        for alpha in ["0.1", "0.3", "0.5"] {
            let r = read_report(&out.join(format!("report_alpha{alpha}.json")));
            assert!(r.is_log_convex, "example {id}, alpha {alpha}");
            assert_eq!((r.n, r.m, r.t_final), (20, 80, 0.02));
            assert!(r.assumption_h.feasible);
            assert_eq!(r.assumption_h.smooth_flag, id != "3", "example {id}");
            let field = fs::read_to_string(out.join(format!("field_alpha{alpha}.csv"))).unwrap();
            assert_eq!(field.lines().count(), 1 + 21);
            assert!(field.lines().all(|l| l.split(',').count() == 81));
            let norms = fs::read_to_string(out.join(format!("norms_alpha{alpha}.csv"))).unwrap();
            assert_eq!(norms.lines().count(), 1 + 21);
        }
    }
    assert!(dir.path().join("1/error_vs_exact_alpha0.5.csv").exists());
    assert!(dir.path().join("2/symm_check_alpha0.1.json").exists());
    assert!(dir.path().join("2/field_symm_alpha0.3.csv").exists());
}

#[test]
fn custom_table_reproduces_example_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = default_grid();
    let table = dir.path().join("coeffs.csv");
    fs::write(&table, format_coefficient_table(&g, &ExampleId::Symmetric.coefficients(&g), None)).unwrap();
    let preset = dir.path().join("preset");
    let custom = dir.path().join("custom");
    ok(&["example", "1", "--alpha", "0.3,0.5", "--out", preset.to_str().unwrap()]);
    ok(&[
        "solve",
        "--coeffs",
        table.to_str().unwrap(),
        "--alpha",
        "0.3,0.5",
        "--out",
        custom.to_str().unwrap(),
    ]);
    for name in ["report_alpha0.3.json", "field_alpha0.5.csv", "norms_alpha0.5.csv"] {
        assert_eq!(
            fs::read(preset.join(name)).unwrap(),
            fs::read(custom.join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn zero_diffusion_is_reported_as_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("bad.csv");
    fs::write(&table, "x,A,B,p\n0,1,0,0\n0.25,1,0,0\n0.5,0,0,0\n0.75,1,0,0\n1,1,0,0\n").unwrap();
    let out = fracdiff(&["solve", "--coeffs", table.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "ellipticity");
    assert!(!dir.path().join("report_alpha0.1.json").exists());
}

#[test]
fn sine_drift_potential_matches_closed_form() {
    // B = sin(πx), A = 1: b = (1 - cos πx)/π up to a constant
    let m = 64;
    let g = Grid1D::new(m, 10, 0.02).unwrap();
    let c = CoefficientSet::from_fns(&g, |_| 1.0, |x| (PI * x).sin(), |_| 0.0);
    let b = potential_b(&g, &c).unwrap();
    for i in 0..=m {
        let exact = (1.0 - (PI * g.x(i)).cos()) / PI;
        assert!((b[i] - exact).abs() <= 2.0 * g.dx().powi(2), "node {i}");
    }
    let (_, sup) = center_potential(&b);
    assert!((sup - 1.0 / PI).abs() <= 2.0 * g.dx().powi(2));

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("sine.csv");
    fs::write(&table, format_coefficient_table(&g, &c, None)).unwrap();
    let out = dir.path().join("out");
    ok(&["solve", "--coeffs", table.to_str().unwrap(), "--nt", "10", "--alpha", "0.5", "--out", out.to_str().unwrap()]);
    let r = read_report(&out.join("report_alpha0.5.json"));
    assert_eq!(r.m, m);
    assert!((r.b_sup_norm - 1.0 / PI).abs() <= 2.0 * g.dx().powi(2));
    assert!(r.assumption_h.smooth_flag);
    assert!(out.join("symm_check_alpha0.5.json").exists());
}

#[test]
fn report_recomputes_stored_results() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["example", "3", "--alpha", "0.3", "--out", dir.path().to_str().unwrap()]);
    let text = ok(&["report", dir.path().to_str().unwrap()]);
    let checks: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(checks.as_array().unwrap().len(), 1);
    assert_eq!(checks[0]["consistent"], true);
    assert_eq!(checks[0]["report"]["assumption_h"]["smooth_flag"], false);

    // a tampered field no longer matches its report
    let field = dir.path().join("field_alpha0.3.csv");
    let text = fs::read_to_string(&field).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut cells: Vec<&str> = lines[5].split(',').collect();
    cells[3] = "1.0e0";
    lines[5] = cells.join(",");
    fs::write(&field, lines.join("\n") + "\n").unwrap();
    let out = fracdiff(&["report", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn ml_eval_and_config_file() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["ml-eval", "--alpha", "1", "--z", "-2"])).unwrap();
    assert!((v["value"].as_f64().unwrap() - (-2f64).exp()).abs() <= 1e-15);
    let out = fracdiff(&["ml-eval", "--alpha", "1.5", "--z", "-2"]);
    assert!(!out.status.success());

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out_dir = dir.path().join("out");
    fs::write(
        &cfg,
        format!("alpha = [0.7]\nnt = 8\nnx = 16\nout = {:?}\n", out_dir.to_str().unwrap()),
    )
    .unwrap();
    ok(&["example", "1", "--config", cfg.to_str().unwrap(), "--nt", "12"]);
    let r = read_report(&out_dir.join("report_alpha0.7.json"));
    assert_eq!((r.n, r.m), (12, 16));
}

#[test]
fn probe_bounds_example_one_history() {
    let g = default_grid();
    let field = solve_forward(&ExampleId::Symmetric.problem(g, 0.5).unwrap()).unwrap();
    let probe = backward_uniqueness_probe(&field, 1.0).unwrap();
    assert!(probe.applicable);
    let kappa = probe.kappa.unwrap();
    // a log-convex decreasing curve lies on or below its chord
    assert!(kappa <= 1.0 + 1e-12, "kappa {kappa}");
    assert!(probe.max_bound.unwrap() >= probe.max_norm * (1.0 - 1e-12));
}
