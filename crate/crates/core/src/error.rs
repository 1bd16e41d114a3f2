use thiserror::Error;

/// Errors raised by the numerical kernels and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (last term magnitude {last_term:e})")]
    Accuracy { terms: usize, last_term: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("ellipticity violated: A({x}) = {value} at node {node}")]
    Ellipticity { node: usize, x: f64, value: f64 },

    #[error("zero pivot in tridiagonal solve at row {row}")]
    Singular { row: usize },

    #[error("step {step}: linear solve failed at row {row}")]
    StepSolve { step: usize, row: usize },

    #[error("non-finite value at step {step}, node {node}")]
    Blowup { step: usize, node: usize },

    #[error("degenerate norm curve: {0}")]
    DegenerateCurve(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Accuracy { .. } => "accuracy",
            Error::Argument(_) => "argument",
            Error::Ellipticity { .. } => "ellipticity",
            Error::Singular { .. } => "singular",
            Error::StepSolve { .. } => "solver",
            Error::Blowup { .. } => "blowup",
            Error::DegenerateCurve(_) => "degenerate_curve",
            Error::Parse { .. } => "parse",
            Error::Invariant(_) => "invariant",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
