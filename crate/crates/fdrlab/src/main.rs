//! `fdrlab`: run multiple-testing FDR scenarios and emit report rows.
//!
//! Exit status: 0 when every bound check passes, 1 on a bound violation
//! (rows are still written), 2 on configuration or construction errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fdrlab::cli::{
    execute, render_catalog, write_csv, write_json, CliError, ExperimentConfig, FileConfig,
    OutputFormat, Overrides,
};

#[derive(Parser)]
#[command(
    name = "fdrlab",
    version,
    about = "Step-up/step-down multiple-testing experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario or a free-form model x procedure experiment.
    Run(RunArgs),
    /// List the named scenarios with the claims they verify.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; command-line flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named scenario (see `fdrlab list`).
    #[arg(long)]
    scenario: Option<String>,
    /// Nominal level of the procedure.
    #[arg(long)]
    alpha: Option<f64>,
    /// Number of hypotheses.
    #[arg(long)]
    m: Option<usize>,
    /// Number of true nulls.
    #[arg(long)]
    m0: Option<usize>,
    /// Monte-Carlo replicates per row (default 100000).
    #[arg(long = "n-reps")]
    n_reps: Option<usize>,
    /// Experiment seed; mandatory, there is no wall-clock default.
    #[arg(long)]
    seed: Option<u64>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: csv (default) or json.
    #[arg(long)]
    format: Option<String>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            print!("{}", render_catalog());
            ExitCode::SUCCESS
        }
        Command::Run(args) => match run(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(error) => {
                eprintln!("fdrlab: {error}");
                ExitCode::from(2)
            }
        },
    }
}

fn run(args: RunArgs) -> Result<bool, CliError> {
    let file = match &args.config {
        Some(path) => Some(FileConfig::parse(&std::fs::read_to_string(path)?)?),
        None => None,
    };
    let overrides = Overrides {
        scenario: args.scenario,
        alpha: args.alpha,
        m: args.m,
        m0: args.m0,
        n_reps: args.n_reps,
        seed: args.seed,
        out: args.out,
        format: args.format,
    };
    let config = ExperimentConfig::resolve(file.as_ref(), &overrides)?;

    let summary = execute(&config)?;
    let rendered = match config.format {
        OutputFormat::Csv => write_csv(&summary.rows),
        OutputFormat::Json => write_json(&summary.rows),
    };
    match &config.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    eprintln!(
        "fdrlab: {} row(s), {} bound violation(s)",
        summary.rows.len(),
        summary.violations
    );
    Ok(summary.all_bounds_satisfied())
}
