//! Config-driven experiment runner behind the `fdrlab` binary: named
//! scenarios, free-form (model x procedure) sweeps, and machine-readable
//! CSV/JSON reports.

mod config;
mod report;
mod runner;
mod scenarios;

pub use config::{ExperimentConfig, FileConfig, OutputFormat, Overrides, Params};
pub use report::{write_csv, write_json, ReportRow, CSV_HEADER};
pub use runner::{bound_check, execute, RunSummary};
pub use scenarios::{build_tasks, render_catalog, RunTask, ScenarioInfo, CATALOG};

/// Runner-level failures. Bound violations are not errors; they are
/// reported through [`RunSummary::violations`].
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Lib(#[from] crate::error::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
