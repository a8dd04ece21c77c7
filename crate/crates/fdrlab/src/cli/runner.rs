//! Experiment execution: expands bindings into tasks, runs them on a rayon
//! pool sized by FDRLAB_THREADS, and collects report rows in config order.

use std::time::Instant;

use crate::cli::config::{ExperimentConfig, Params};
use crate::cli::report::ReportRow;
use crate::cli::scenarios::{build_tasks, RunTask};
use crate::cli::CliError;
use crate::estimation::{
    exact_fdr_m2_grid, monotonicity_probe, monte_carlo, EstimateReport, ProcedureSpec,
};
use crate::models::{ModelSpec, RandomSeed};

const DEFAULT_N_REPS: usize = 100_000;
const DEFAULT_GRID_N: usize = 10_000;

/// The bound check applied to every row: the estimate may exceed its
/// analytic bound by at most four standard errors.
pub fn bound_check(fdr_hat: f64, bound: f64, se: f64) -> bool {
    fdr_hat <= bound + 4.0 * se
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub rows: Vec<ReportRow>,
    pub violations: usize,
}

impl RunSummary {
    pub fn all_bounds_satisfied(&self) -> bool {
        self.violations == 0
    }
}

/// Runs the experiment on a thread pool capped by FDRLAB_THREADS (when set).
/// Results do not depend on the pool size.
pub fn execute(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var("FDRLAB_THREADS") {
        let threads: usize = text.parse().map_err(|_| {
            CliError::Config(format!("FDRLAB_THREADS must be a number, got {text}"))
        })?;
        if threads == 0 {
            return Err(CliError::Config("FDRLAB_THREADS must be positive".into()));
        }
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    pool.install(|| execute_on_current_pool(config))
}

fn execute_on_current_pool(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    let mut rows = Vec::new();
    for binding in config.bindings() {
        let tasks = build_tasks(config.scenario.as_deref(), &binding)?;
        for task in tasks {
            run_task(&task, &binding, config.seed, &mut rows)?;
        }
    }
    let violations = rows.iter().filter(|row| !row.bound_satisfied).count();
    Ok(RunSummary { rows, violations })
}

fn run_task(
    task: &RunTask,
    params: &Params,
    seed: u64,
    rows: &mut Vec<ReportRow>,
) -> Result<(), CliError> {
    let n_reps = params.n_reps.unwrap_or(DEFAULT_N_REPS);
    let grid_n = params.grid_n.unwrap_or(DEFAULT_GRID_N);
    match task {
        RunTask::Estimate {
            label,
            model,
            procedure,
            bound,
            oracle,
        } => {
            let start = Instant::now();
            let report = monte_carlo(model, procedure, n_reps, RandomSeed::new(seed))?;
            let oracle_value = if *oracle {
                exact_fdr_m2_grid(model, procedure, grid_n).ok()
            } else {
                None
            };
            let wall_time_ms = start.elapsed().as_millis() as u64;
            rows.push(make_row(
                label.clone(),
                model.m(),
                model.m0(),
                procedure,
                &report,
                *bound,
                oracle_value,
                seed,
                wall_time_ms,
            ));
        }
        RunTask::Probe {
            label,
            procedure,
            m0,
            levels,
            bound,
        } => {
            let start = Instant::now();
            let reports =
                monotonicity_probe(procedure, *m0, levels, n_reps, RandomSeed::new(seed))?;
            let oracles: Vec<Option<f64>> = levels
                .iter()
                .map(|&level| {
                    if *m0 == 1 {
                        let model = ModelSpec::BiUniform {
                            m0: 1,
                            false_nulls: crate::models::FalseNullSpec::Dirac(vec![level]),
                        };
                        exact_fdr_m2_grid(&model, procedure, grid_n).ok()
                    } else {
                        None
                    }
                })
                .collect();
            let wall_time_ms = start.elapsed().as_millis() as u64;
            for ((level, report), oracle_value) in levels.iter().zip(&reports).zip(oracles) {
                rows.push(make_row(
                    format!("{label}:level={level}"),
                    m0 + 1,
                    *m0,
                    procedure,
                    report,
                    *bound,
                    oracle_value,
                    seed,
                    wall_time_ms,
                ));
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn make_row(
    scenario: String,
    m: usize,
    m0: usize,
    procedure: &ProcedureSpec,
    report: &EstimateReport,
    bound: f64,
    oracle_value: Option<f64>,
    seed: u64,
    wall_time_ms: u64,
) -> ReportRow {
    ReportRow {
        scenario,
        m,
        m0,
        alpha: procedure.family.level(),
        procedure: procedure.id(),
        kind: procedure.kind.name().to_string(),
        n_reps: report.n_reps,
        seed,
        fdr_hat: report.fdr_hat,
        fwer_hat: report.fwer_hat,
        se_fdr: report.std_error_fdr,
        bound,
        bound_satisfied: bound_check(report.fdr_hat, bound, report.std_error_fdr),
        oracle_value,
        wall_time_ms,
    }
}
