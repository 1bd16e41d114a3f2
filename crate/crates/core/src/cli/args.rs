//! Argument parsing and dispatch for the `fracdiff` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::presets::ExampleId;

use super::coeffs::read_coefficient_table;
use super::config::{ConfigFile, ExampleChoice, FlagOverrides, RunConfig};
use super::run::{ml_eval, run_custom, run_example, run_report};

#[derive(Debug, Parser)]
#[command(name = "fracdiff", version, about = "Time-fractional diffusion solver and log-convexity analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one of the reference problems (1, 2 or 3).
    Example {
        #[arg(value_parser = parse_example)]
        id: ExampleId,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Solve with user-supplied coefficients (`--coeffs`).
    Solve {
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Evaluate the Mittag-Leffler function E_alpha(z).
    MlEval {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    /// Recompute reports from the field files of an earlier run.
    Report {
        dir: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonFlags {
    /// Comma-separated fractional orders, e.g. `0.1,0.3,0.5`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alpha: Option<Vec<f64>>,
    /// Number of time steps N.
    #[arg(long)]
    pub nt: Option<usize>,
    /// Number of spatial intervals M.
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub t_final: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long)]
    pub plots: bool,
    /// Coefficient table `x,A,B,p[,u0]`.
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
    /// TOML file with run parameters; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_example(s: &str) -> std::result::Result<ExampleId, String> {
    s.parse::<ExampleId>().map_err(|e| e.to_string())
}

impl CommonFlags {
    fn overrides(&self) -> FlagOverrides {
        FlagOverrides {
            alphas: self.alpha.clone(),
            n_steps: self.nt,
            m_intervals: self.nx,
            t_final: self.t_final,
            output_dir: self.out.clone(),
            emit_plots: self.plots,
            coeffs_file: self.coeffs.clone(),
        }
    }

    fn config_file(&self) -> Result<Option<ConfigFile>> {
        self.config.as_deref().map(ConfigFile::load).transpose()
    }
}

/// Resolves the configuration of a `solve` run. Without an explicit `nx`
/// the interval count is taken from the coefficient table.
pub fn solve_config(common: &CommonFlags) -> Result<RunConfig> {
    let file = common.config_file()?;
    let mut flags = common.overrides();
    let file_nx = file.as_ref().and_then(|f| f.nx);
    if flags.m_intervals.is_none() && file_nx.is_none() {
        let path = flags
            .coeffs_file
            .clone()
            .or_else(|| file.as_ref().and_then(|f| f.coeffs.clone()))
            .ok_or_else(|| Error::Config("solve needs a coefficient file (--coeffs)".into()))?;
        flags.m_intervals = Some(read_coefficient_table(&path)?.m_intervals);
    }
    RunConfig::resolve(Some(ExampleChoice::Custom), file.as_ref(), &flags)
}

pub fn example_config(id: ExampleId, common: &CommonFlags) -> Result<RunConfig> {
    let file = common.config_file()?;
    RunConfig::resolve(Some(ExampleChoice::Preset(id)), file.as_ref(), &common.overrides())
}

fn pretty(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Runs a parsed command and returns what goes to stdout.
pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Example { id, common } => pretty(&run_example(&example_config(*id, common)?)?),
        Command::Solve { common } => pretty(&run_custom(&solve_config(common)?)?),
        Command::MlEval { alpha, z } => {
            let value = ml_eval(*alpha, *z)?;
            pretty(&json!({ "alpha": alpha, "z": z, "value": value }))
        }
        Command::Report { dir, config } => {
            let file = config.as_deref().map(ConfigFile::load).transpose()?;
            let settings = RunConfig::resolve(None, file.as_ref(), &FlagOverrides::default())?.tolerances;
            let checks = run_report(dir, &settings)?;
            if let Some(bad) = checks.iter().find(|c| !c.consistent) {
                return Err(Error::Invariant(format!(
                    "{} does not reproduce its stored report",
                    bad.field_file.display()
                )));
            }
            pretty(&checks)
        }
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            println!("{out}");
            0
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            1
        }
    }
}
