//! Run configuration: defaults, an optional TOML file, then command flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::operator::Grid1D;
use crate::pipeline::AnalysisSettings;
use crate::presets::{ExampleId, DEFAULT_ALPHAS, DEFAULT_INTERVALS, DEFAULT_STEPS, DEFAULT_T_FINAL};

/// Which problem to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleChoice {
    Preset(ExampleId),
    Custom,
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub example: ExampleChoice,
    pub alphas: Vec<f64>,
    pub n_steps: usize,
    pub m_intervals: usize,
    pub t_final: f64,
    pub output_dir: PathBuf,
    pub emit_plots: bool,
    pub coeffs_file: Option<PathBuf>,
    pub tolerances: AnalysisSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            example: ExampleChoice::Preset(ExampleId::Symmetric),
            alphas: DEFAULT_ALPHAS.to_vec(),
            n_steps: DEFAULT_STEPS,
            m_intervals: DEFAULT_INTERVALS,
            t_final: DEFAULT_T_FINAL,
            output_dir: PathBuf::from("out"),
            emit_plots: false,
            coeffs_file: None,
            tolerances: AnalysisSettings::default(),
        }
    }
}

/// On-disk form; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub example: Option<toml::Value>,
    pub alpha: Option<Vec<f64>>,
    pub nt: Option<usize>,
    pub nx: Option<usize>,
    pub t_final: Option<f64>,
    pub out: Option<PathBuf>,
    pub plots: Option<bool>,
    pub coeffs: Option<PathBuf>,
    pub tolerances: Option<ToleranceOverrides>,
}

#[derive(Debug, Default, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub convexity_rel_tol: Option<f64>,
    pub jump_factor: Option<f64>,
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Default, Clone)]
pub struct FlagOverrides {
    pub alphas: Option<Vec<f64>>,
    pub n_steps: Option<usize>,
    pub m_intervals: Option<usize>,
    pub t_final: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub emit_plots: bool,
    pub coeffs_file: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    fn example_choice(&self) -> Result<Option<ExampleChoice>> {
        match &self.example {
            None => Ok(None),
            Some(toml::Value::Integer(n)) => {
                let n = u8::try_from(*n).map_err(|_| Error::Config(format!("unknown example id {n}")))?;
                Ok(Some(ExampleChoice::Preset(ExampleId::from_number(n)?)))
            }
            Some(toml::Value::String(s)) if s == "custom" => Ok(Some(ExampleChoice::Custom)),
            Some(toml::Value::String(s)) => Ok(Some(ExampleChoice::Preset(s.parse()?))),
            Some(other) => Err(Error::Config(format!("invalid example value {other}"))),
        }
    }
}

impl RunConfig {
    /// Defaults, overlaid by `file`, overlaid by `flags`.
    pub fn resolve(example: Option<ExampleChoice>, file: Option<&ConfigFile>, flags: &FlagOverrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(f) = file {
            if let Some(e) = f.example_choice()? {
                cfg.example = e;
            }
            if let Some(a) = &f.alpha {
                cfg.alphas = a.clone();
            }
            if let Some(n) = f.nt {
                cfg.n_steps = n;
            }
            if let Some(m) = f.nx {
                cfg.m_intervals = m;
            }
            if let Some(t) = f.t_final {
                cfg.t_final = t;
            }
            if let Some(o) = &f.out {
                cfg.output_dir = o.clone();
            }
            if let Some(p) = f.plots {
                cfg.emit_plots = p;
            }
            if let Some(c) = &f.coeffs {
                cfg.coeffs_file = Some(c.clone());
            }
            if let Some(t) = f.tolerances {
                if let Some(v) = t.convexity_rel_tol {
                    cfg.tolerances.convexity_rel_tol = v;
                }
                if let Some(v) = t.jump_factor {
                    cfg.tolerances.jump_factor = v;
                }
            }
        }
        if let Some(e) = example {
            cfg.example = e;
        }
        if let Some(a) = &flags.alphas {
            cfg.alphas = a.clone();
        }
        if let Some(n) = flags.n_steps {
            cfg.n_steps = n;
        }
        if let Some(m) = flags.m_intervals {
            cfg.m_intervals = m;
        }
        if let Some(t) = flags.t_final {
            cfg.t_final = t;
        }
        if let Some(o) = &flags.output_dir {
            cfg.output_dir = o.clone();
        }
        cfg.emit_plots |= flags.emit_plots;
        if let Some(c) = &flags.coeffs_file {
            cfg.coeffs_file = Some(c.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::Config("alpha list is empty".into()));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && **a <= 1.0)) {
            return Err(Error::Config(format!("alpha {a} outside (0, 1]")));
        }
        if !(self.tolerances.convexity_rel_tol >= 0.0) || !(self.tolerances.jump_factor > 0.0) {
            return Err(Error::Config("tolerance overrides must be positive".into()));
        }
        if self.example == ExampleChoice::Custom && self.coeffs_file.is_none() {
            return Err(Error::Config("a custom run needs a coefficient file (--coeffs)".into()));
        }
        Grid1D::new(self.m_intervals, self.n_steps, self.t_final).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.m_intervals, self.n_steps, self.t_final)
    }
}

/// Parses `0.1,0.3,0.5`.
pub fn parse_alpha_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("invalid alpha value {part:?}")))
        })
        .collect()
}
