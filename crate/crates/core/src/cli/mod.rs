//! Command-line front end: configuration, file formats and run drivers.

pub mod args;
pub mod coeffs;
pub mod config;
pub mod output;
pub mod run;
pub mod svg;

pub use args::main_entry;
pub use config::{ExampleChoice, RunConfig};
pub use run::{ml_eval, run_custom, run_example, run_report, RunSummary};
