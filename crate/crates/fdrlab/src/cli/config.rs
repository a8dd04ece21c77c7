//! Experiment configuration: a flat JSON file with one nesting level for
//! sweeps, merged with command-line overrides. The seed is mandatory so
//! every run is reproducible by construction.

use std::path::PathBuf;

use serde::Deserialize;

use crate::cli::CliError;

/// Scenario parameters. Every field is optional; scenarios fill in their
/// own defaults and read only the keys they use.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub n_reps: Option<usize>,
    pub grid_n: Option<usize>,
    pub alpha: Option<f64>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub m: Option<usize>,
    pub m0: Option<usize>,
    /// Position of the dirac false nulls in the independence models.
    pub false_at: Option<f64>,
    /// Lower endpoint of the conservative true-null distribution.
    pub floor: Option<f64>,
    /// False-null positions scanned by the monotonicity probe.
    pub levels: Option<Vec<f64>>,
    pub copula: Option<String>,
    pub variant: Option<String>,
    /// Free-form model name, used when no scenario is given.
    pub model: Option<String>,
    /// Free-form procedure name, e.g. "su-bh" or "sd-explicit".
    pub procedure: Option<String>,
    /// Explicit critical values for the "-explicit" procedures.
    pub crit: Option<Vec<f64>>,
    /// Overrides the analytic bound checked for the row.
    pub bound: Option<f64>,
}

impl Params {
    /// Field-wise overlay: values set in `self` win over `base`.
    pub fn merged_over(&self, base: &Params) -> Params {
        Params {
            n_reps: self.n_reps.or(base.n_reps),
            grid_n: self.grid_n.or(base.grid_n),
            alpha: self.alpha.or(base.alpha),
            alpha1: self.alpha1.or(base.alpha1),
            alpha2: self.alpha2.or(base.alpha2),
            m: self.m.or(base.m),
            m0: self.m0.or(base.m0),
            false_at: self.false_at.or(base.false_at),
            floor: self.floor.or(base.floor),
            levels: self.levels.clone().or_else(|| base.levels.clone()),
            copula: self.copula.clone().or_else(|| base.copula.clone()),
            variant: self.variant.clone().or_else(|| base.variant.clone()),
            model: self.model.clone().or_else(|| base.model.clone()),
            procedure: self.procedure.clone().or_else(|| base.procedure.clone()),
            crit: self.crit.clone().or_else(|| base.crit.clone()),
            bound: self.bound.or(base.bound),
        }
    }
}

/// On-disk configuration. All keys are optional here; `resolve` enforces
/// what must be present after merging with the command line.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub scenario: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub n_reps: Option<usize>,
    pub grid_n: Option<usize>,
    pub alpha: Option<f64>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub m: Option<usize>,
    pub m0: Option<usize>,
    pub false_at: Option<f64>,
    pub floor: Option<f64>,
    pub levels: Option<Vec<f64>>,
    pub copula: Option<String>,
    pub variant: Option<String>,
    pub model: Option<String>,
    pub procedure: Option<String>,
    pub crit: Option<Vec<f64>>,
    pub bound: Option<f64>,
    pub sweep: Option<Vec<Params>>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config parse: {e}")))
    }

    fn params(&self) -> Params {
        Params {
            n_reps: self.n_reps,
            grid_n: self.grid_n,
            alpha: self.alpha,
            alpha1: self.alpha1,
            alpha2: self.alpha2,
            m: self.m,
            m0: self.m0,
            false_at: self.false_at,
            floor: self.floor,
            levels: self.levels.clone(),
            copula: self.copula.clone(),
            variant: self.variant.clone(),
            model: self.model.clone(),
            procedure: self.procedure.clone(),
            crit: self.crit.clone(),
            bound: self.bound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Config(format!(
                "unknown format: {other} (csv or json)"
            ))),
        }
    }
}

/// Command-line overrides, already parsed by clap.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub scenario: Option<String>,
    pub alpha: Option<f64>,
    pub m: Option<usize>,
    pub m0: Option<usize>,
    pub n_reps: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

/// A fully resolved experiment: what `run` executes.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Named scenario; `None` means a free-form model x procedure run.
    pub scenario: Option<String>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub base: Params,
    /// Parameter bindings to run; each is overlaid on `base`.
    /// Empty means a single run of `base`.
    pub sweep: Vec<Params>,
}

impl ExperimentConfig {
    /// Merges the optional config file with the command line (flags win)
    /// and checks the mandatory pieces.
    pub fn resolve(file: Option<&FileConfig>, cli: &Overrides) -> Result<Self, CliError> {
        let empty = FileConfig::default();
        let file = file.unwrap_or(&empty);

        let scenario = cli.scenario.clone().or_else(|| file.scenario.clone());
        let seed = cli.seed.or(file.seed).ok_or_else(|| {
            CliError::Config("seed is mandatory; pass --seed or set it in the config".into())
        })?;
        let format = match cli.format.as_deref().or(file.format.as_deref()) {
            Some(name) => OutputFormat::parse(name)?,
            None => OutputFormat::Csv,
        };
        let out = cli
            .out
            .clone()
            .or_else(|| file.out.as_ref().map(PathBuf::from));

        let flag_params = Params {
            n_reps: cli.n_reps,
            alpha: cli.alpha,
            m: cli.m,
            m0: cli.m0,
            ..Params::default()
        };
        let base = flag_params.merged_over(&file.params());

        if scenario.is_none() && (base.model.is_none() || base.procedure.is_none()) {
            return Err(CliError::Config(
                "no scenario given and no free-form model/procedure pair; pass --scenario or set model and procedure".into(),
            ));
        }

        Ok(ExperimentConfig {
            scenario,
            seed,
            out,
            format,
            base,
            sweep: file.sweep.clone().unwrap_or_default(),
        })
    }

    /// The parameter bindings to execute, in config order.
    pub fn bindings(&self) -> Vec<Params> {
        if self.sweep.is_empty() {
            vec![self.base.clone()]
        } else {
            self.sweep
                .iter()
                .map(|binding| binding.merged_over(&self.base))
                .collect()
        }
    }
}
