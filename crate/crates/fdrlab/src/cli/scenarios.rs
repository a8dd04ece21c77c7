//! The scenario catalog and its translation into runnable tasks.

use crate::cli::config::Params;
use crate::cli::CliError;
use crate::estimation::{CriticalFamily, ProcedureKind, ProcedureSpec};
use crate::models::{CopulaSpec, FalseNullSpec, ModelSpec, NonmonotoneVariant};

/// A catalog entry: stable name plus the claim the scenario verifies.
#[derive(Debug, Clone, Copy)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub claim: &'static str,
}

/// Catalog in stable output order.
pub const CATALOG: &[ScenarioInfo] = &[
    ScenarioInfo {
        name: "bh-equality",
        claim: "step-up with linear values on independent uniforms attains FDR = alpha*m0/m, wherever the false p-values sit",
    },
    ScenarioInfo {
        name: "bh-conservative",
        claim: "conservative true nulls keep the linear-value step-up FDR at or below alpha*m0/m",
    },
    ScenarioInfo {
        name: "bonferroni-sharp",
        claim: "block-copula construction on which the Bonferroni test attains FDR = FWER = alpha for every copula",
    },
    ScenarioInfo {
        name: "by-bound",
        claim: "harmonic-sum bound min(alpha*(1 + 1/2 + ... + 1/m), 1) for linear values under dependence, attained at m = 2",
    },
    ScenarioInfo {
        name: "m2-su-sharp",
        claim: "coupled uniform pair on which the two-value step-up test attains FDR = alpha1 + alpha2",
    },
    ScenarioInfo {
        name: "sd-sharp",
        claim: "p = (U, 0, ..., 0) with one true null: step-up and step-down linear-value FDR both equal alpha/m",
    },
    ScenarioInfo {
        name: "modified-sd",
        claim: "step-down with enlarged first value reaches FDR = 1-(1-alpha)^(m0/m), above alpha*m0/m yet at most alpha",
    },
    ScenarioInfo {
        name: "nonmonotone-sd",
        claim: "four coupled laws of one false p-value showing the step-down FDR is not monotone",
    },
    ScenarioInfo {
        name: "monotonicity-probe",
        claim: "step-up FDR as one false p-value moves; the trend of a_i/i decides the direction",
    },
];

/// One line per scenario, catalog order.
pub fn render_catalog() -> String {
    let mut out = String::new();
    for info in CATALOG {
        out.push_str(info.name);
        out.push_str("  --  ");
        out.push_str(info.claim);
        out.push('\n');
    }
    out
}

/// A unit of work producing one or more report rows.
#[derive(Debug, Clone)]
pub enum RunTask {
    Estimate {
        label: String,
        model: ModelSpec,
        procedure: ProcedureSpec,
        bound: f64,
        /// Try the exact two-hypothesis integrator for the oracle column.
        oracle: bool,
    },
    Probe {
        label: String,
        procedure: ProcedureSpec,
        m0: usize,
        levels: Vec<f64>,
        bound: f64,
    },
}

struct Need<'a>(&'a Params);

impl Need<'_> {
    fn alpha(&self, default: f64) -> f64 {
        self.0.alpha.unwrap_or(default)
    }
    fn m(&self, default: usize) -> usize {
        self.0.m.unwrap_or(default)
    }
    fn m0(&self, default: usize) -> usize {
        self.0.m0.unwrap_or(default)
    }
}

fn harmonic(m: usize) -> f64 {
    (1..=m).map(|k| 1.0 / k as f64).sum()
}

fn dirac_block(count: usize, at: f64) -> FalseNullSpec {
    FalseNullSpec::Dirac(vec![at; count])
}

fn check_counts(m: usize, m0: usize) -> Result<(), CliError> {
    if m == 0 || m0 > m {
        return Err(CliError::Config(format!(
            "need 1 <= m and m0 <= m, got m={m}, m0={m0}"
        )));
    }
    Ok(())
}

/// Expands one (scenario, params) binding into tasks, in output order.
pub fn build_tasks(scenario: Option<&str>, params: &Params) -> Result<Vec<RunTask>, CliError> {
    let need = Need(params);
    match scenario {
        Some("bh-equality") => {
            let (alpha, m, m0) = (need.alpha(0.1), need.m(16), need.m0(8));
            check_counts(m, m0)?;
            let model = ModelSpec::BiUniform {
                m0,
                false_nulls: dirac_block(m - m0, params.false_at.unwrap_or(0.0)),
            };
            Ok(vec![RunTask::Estimate {
                label: "bh-equality".into(),
                model,
                procedure: ProcedureSpec::step_up(CriticalFamily::Bh(alpha)),
                bound: m0 as f64 / m as f64 * alpha,
                oracle: true,
            }])
        }
        Some("bh-conservative") => {
            let (alpha, m, m0) = (need.alpha(0.1), need.m(16), need.m0(8));
            check_counts(m, m0)?;
            let model = ModelSpec::BiConservative {
                m0,
                floor: params.floor.unwrap_or(0.02),
                false_nulls: dirac_block(m - m0, params.false_at.unwrap_or(0.0)),
            };
            Ok(vec![RunTask::Estimate {
                label: "bh-conservative".into(),
                model,
                procedure: ProcedureSpec::step_up(CriticalFamily::Bh(alpha)),
                bound: m0 as f64 / m as f64 * alpha,
                oracle: false,
            }])
        }
        Some("bonferroni-sharp") => {
            let (alpha, m) = (need.alpha(0.25), need.m(5));
            check_counts(m, 0)?;
            let mut copulas = vec![CopulaSpec::Independent, CopulaSpec::Comonotone];
            if m == 2 {
                copulas.push(CopulaSpec::Countermonotone);
            }
            Ok(copulas
                .into_iter()
                .map(|copula| RunTask::Estimate {
                    label: format!("bonferroni-sharp:{}", copula.name()),
                    model: ModelSpec::BonferroniSharp { m, copula },
                    procedure: ProcedureSpec::step_up(CriticalFamily::Bonferroni(alpha)),
                    bound: alpha,
                    oracle: false,
                })
                .collect())
        }
        Some("by-bound") => {
            let alpha = need.alpha(0.4);
            Ok(vec![RunTask::Estimate {
                label: "by-bound".into(),
                model: ModelSpec::M2SuSharp {
                    alpha1: alpha / 2.0,
                    alpha2: alpha,
                },
                procedure: ProcedureSpec::step_up(CriticalFamily::Bh(alpha)),
                bound: (alpha * harmonic(2)).min(1.0),
                oracle: true,
            }])
        }
        Some("m2-su-sharp") => {
            let alpha1 = params.alpha1.unwrap_or(0.1);
            let alpha2 = params.alpha2.unwrap_or(0.3);
            Ok(vec![RunTask::Estimate {
                label: "m2-su-sharp".into(),
                model: ModelSpec::M2SuSharp { alpha1, alpha2 },
                procedure: ProcedureSpec::step_up(CriticalFamily::Explicit(vec![alpha1, alpha2])),
                bound: (alpha1 + alpha2).min(1.0),
                oracle: true,
            }])
        }
        Some("sd-sharp") => {
            let (alpha, m) = (need.alpha(0.2), need.m(4));
            check_counts(m, 1)?;
            let model = ModelSpec::BiUniform {
                m0: 1,
                false_nulls: dirac_block(m - 1, 0.0),
            };
            let bound = alpha / m as f64;
            let procedures = [
                ("su-bh", ProcedureSpec::step_up(CriticalFamily::Bh(alpha))),
                ("sd-bh", ProcedureSpec::step_down(CriticalFamily::Bh(alpha))),
                (
                    "sd-bh-ties",
                    ProcedureSpec::step_down(CriticalFamily::TieAdjustedBh(alpha)),
                ),
            ];
            Ok(procedures
                .into_iter()
                .map(|(tag, procedure)| RunTask::Estimate {
                    label: format!("sd-sharp:{tag}"),
                    model: model.clone(),
                    procedure,
                    bound,
                    oracle: true,
                })
                .collect())
        }
        Some("modified-sd") => {
            let (alpha, m, m0) = (need.alpha(0.19), need.m(2), need.m0(1));
            check_counts(m, m0)?;
            let model = ModelSpec::BiUniform {
                m0,
                false_nulls: dirac_block(m - m0, 1.0),
            };
            Ok(vec![RunTask::Estimate {
                label: "modified-sd".into(),
                model,
                procedure: ProcedureSpec::step_down(CriticalFamily::ModifiedC(alpha)),
                bound: 1.0 - (1.0 - alpha).powf(m0 as f64 / m as f64),
                oracle: true,
            }])
        }
        Some("nonmonotone-sd") => {
            let alpha = need.alpha(0.2);
            Ok(NonmonotoneVariant::all()
                .into_iter()
                .map(|variant| RunTask::Estimate {
                    label: format!("nonmonotone-sd:{}", variant.name()),
                    model: ModelSpec::NonmonotoneSd { variant, alpha },
                    procedure: ProcedureSpec::step_down(CriticalFamily::Bh(alpha)),
                    bound: alpha / 2.0,
                    oracle: true,
                })
                .collect())
        }
        Some("monotonicity-probe") => {
            let (alpha, m0) = (need.alpha(0.3), need.m0(3));
            let levels = params
                .levels
                .clone()
                .unwrap_or_else(|| vec![0.0, 0.3, 0.7, 1.0]);
            Ok(vec![RunTask::Probe {
                label: "monotonicity-probe".into(),
                procedure: ProcedureSpec::step_up(CriticalFamily::Bh(alpha)),
                m0,
                levels,
                bound: m0 as f64 / (m0 + 1) as f64 * alpha,
            }])
        }
        Some(other) => Err(CliError::Config(format!("unknown scenario: {other}"))),
        None => build_free_form(params),
    }
}

/// Free-form run: model and procedure named directly in the config.
fn build_free_form(params: &Params) -> Result<Vec<RunTask>, CliError> {
    let model = parse_model(params)?;
    let procedure = parse_procedure(params)?;
    let bound = params
        .bound
        .unwrap_or_else(|| default_bound(&model, &procedure));
    Ok(vec![RunTask::Estimate {
        label: "custom".into(),
        model,
        procedure,
        bound,
        oracle: true,
    }])
}

fn parse_model(params: &Params) -> Result<ModelSpec, CliError> {
    let name = params
        .model
        .as_deref()
        .ok_or_else(|| CliError::Config("model is required".into()))?;
    let need = Need(params);
    let miss = |key: &str| CliError::Config(format!("model {name} needs the {key} parameter"));
    match name {
        "bi-uniform" => {
            let m = params.m.ok_or_else(|| miss("m"))?;
            let m0 = params.m0.ok_or_else(|| miss("m0"))?;
            check_counts(m, m0)?;
            Ok(ModelSpec::BiUniform {
                m0,
                false_nulls: dirac_block(m - m0, params.false_at.unwrap_or(0.0)),
            })
        }
        "bi-conservative" => {
            let m = params.m.ok_or_else(|| miss("m"))?;
            let m0 = params.m0.ok_or_else(|| miss("m0"))?;
            check_counts(m, m0)?;
            Ok(ModelSpec::BiConservative {
                m0,
                floor: params.floor.unwrap_or(0.02),
                false_nulls: dirac_block(m - m0, params.false_at.unwrap_or(0.0)),
            })
        }
        "bonferroni-sharp" => {
            let m = params.m.ok_or_else(|| miss("m"))?;
            let copula = params
                .copula
                .as_deref()
                .unwrap_or("independent")
                .parse::<CopulaSpec>()
                .map_err(|e| CliError::Config(e.to_string()))?;
            Ok(ModelSpec::BonferroniSharp { m, copula })
        }
        "m2-su-sharp" => Ok(ModelSpec::M2SuSharp {
            alpha1: params.alpha1.ok_or_else(|| miss("alpha1"))?,
            alpha2: params.alpha2.ok_or_else(|| miss("alpha2"))?,
        }),
        "nonmonotone-sd" => Ok(ModelSpec::NonmonotoneSd {
            variant: params
                .variant
                .as_deref()
                .ok_or_else(|| miss("variant"))?
                .parse::<NonmonotoneVariant>()
                .map_err(|e| CliError::Config(e.to_string()))?,
            alpha: need.alpha(0.2),
        }),
        other => Err(CliError::Config(format!("unknown model: {other}"))),
    }
}

fn parse_procedure(params: &Params) -> Result<ProcedureSpec, CliError> {
    let name = params
        .procedure
        .as_deref()
        .ok_or_else(|| CliError::Config("procedure is required".into()))?;
    let (kind, family_name) = match name.split_once('-') {
        Some(("su", rest)) => (ProcedureKind::StepUp, rest),
        Some(("sd", rest)) => (ProcedureKind::StepDown, rest),
        _ => {
            return Err(CliError::Config(format!(
                "procedure {name} must look like su-<family> or sd-<family>"
            )))
        }
    };
    let alpha = || {
        params
            .alpha
            .ok_or_else(|| CliError::Config(format!("procedure {name} needs the alpha parameter")))
    };
    let family =
        match family_name {
            "bh" => CriticalFamily::Bh(alpha()?),
            "by" => CriticalFamily::By(alpha()?),
            "bonferroni" => CriticalFamily::Bonferroni(alpha()?),
            "c" => CriticalFamily::ModifiedC(alpha()?),
            "bh-ties" => CriticalFamily::TieAdjustedBh(alpha()?),
            "c-ties" => CriticalFamily::TieAdjustedC(alpha()?),
            "explicit" => CriticalFamily::Explicit(params.crit.clone().ok_or_else(|| {
                CliError::Config("explicit procedures need the crit list".into())
            })?),
            other => {
                return Err(CliError::Config(format!(
                    "unknown critical-value family: {other}"
                )))
            }
        };
    Ok(ProcedureSpec { kind, family })
}

/// Best generally valid analytic bound for a free-form (model, procedure)
/// pair; 1 when no theorem applies (the FDP never exceeds 1).
fn default_bound(model: &ModelSpec, procedure: &ProcedureSpec) -> f64 {
    let m = model.m();
    let fraction = model.m0() as f64 / m as f64;
    // The independence assumptions hold for the bi models and for the
    // coupled non-monotone pair (its single true null is independent of
    // the false one); the sharpness constructions are dependent.
    let independent_nulls = matches!(
        model,
        ModelSpec::BiUniform { .. }
            | ModelSpec::BiConservative { .. }
            | ModelSpec::NonmonotoneSd { .. }
    );
    match (&procedure.family, procedure.kind) {
        (CriticalFamily::Bonferroni(alpha), _) => fraction * alpha,
        (CriticalFamily::By(alpha), ProcedureKind::StepUp) => *alpha,
        (CriticalFamily::Bh(alpha) | CriticalFamily::TieAdjustedBh(alpha), kind) => {
            if independent_nulls {
                fraction * alpha
            } else if kind == ProcedureKind::StepUp {
                (alpha * harmonic(m)).min(1.0)
            } else {
                1.0
            }
        }
        (
            CriticalFamily::ModifiedC(alpha) | CriticalFamily::TieAdjustedC(alpha),
            ProcedureKind::StepDown,
        ) if independent_nulls => 1.0 - (1.0 - alpha).powf(fraction),
        (CriticalFamily::Explicit(values), ProcedureKind::StepUp) if m == 2 => {
            (values[0] + values[values.len() - 1]).min(1.0)
        }
        _ => 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_stable_and_complete() {
        let names: Vec<&str> = CATALOG.iter().map(|s| s.name).collect();
        assert!(names.len() >= 8);
        for required in [
            "bh-equality",
            "bonferroni-sharp",
            "by-bound",
            "m2-su-sharp",
            "sd-sharp",
            "modified-sd",
            "nonmonotone-sd",
            "monotonicity-probe",
        ] {
            assert!(names.contains(&required), "missing {required}");
        }
        let rendered = render_catalog();
        assert_eq!(rendered, render_catalog());
        assert_eq!(rendered.lines().count(), CATALOG.len());
        for info in CATALOG {
            assert!(!info.claim.is_empty());
        }
    }

    #[test]
    fn default_scenarios_build() {
        for info in CATALOG {
            let tasks = build_tasks(Some(info.name), &Params::default()).unwrap();
            assert!(!tasks.is_empty(), "{} produced no tasks", info.name);
        }
    }

    #[test]
    fn nonmonotone_emits_four_variants_in_order() {
        let tasks = build_tasks(Some("nonmonotone-sd"), &Params::default()).unwrap();
        let labels: Vec<String> = tasks
            .iter()
            .map(|t| match t {
                RunTask::Estimate { label, .. } => label.clone(),
                RunTask::Probe { label, .. } => label.clone(),
            })
            .collect();
        assert_eq!(
            labels,
            vec![
                "nonmonotone-sd:zero",
                "nonmonotone-sd:alpha-u",
                "nonmonotone-sd:u",
                "nonmonotone-sd:shifted"
            ]
        );
    }

    #[test]
    fn countermonotone_only_at_two() {
        let tasks = build_tasks(Some("bonferroni-sharp"), &Params::default()).unwrap();
        assert_eq!(tasks.len(), 2);
        let params = Params {
            m: Some(2),
            ..Params::default()
        };
        let tasks = build_tasks(Some("bonferroni-sharp"), &params).unwrap();
        assert_eq!(tasks.len(), 3);
    }

    #[test]
    fn unknown_scenario_is_a_config_error() {
        assert!(build_tasks(Some("nope"), &Params::default()).is_err());
    }

    #[test]
    fn free_form_round_trip() {
        let params = Params {
            model: Some("m2-su-sharp".into()),
            procedure: Some("su-bh".into()),
            alpha: Some(0.4),
            alpha1: Some(0.2),
            alpha2: Some(0.4),
            ..Params::default()
        };
        let tasks = build_tasks(None, &params).unwrap();
        match &tasks[0] {
            RunTask::Estimate {
                model,
                procedure,
                bound,
                ..
            } => {
                assert_eq!(
                    model,
                    &ModelSpec::M2SuSharp {
                        alpha1: 0.2,
                        alpha2: 0.4
                    }
                );
                assert_eq!(procedure.id(), "su-bh(0.4)");
                // Dependent model, step-up linear family: harmonic bound.
                assert!((bound - 0.6).abs() < 1e-12);
            }
            other => panic!("unexpected task {other:?}"),
        }
    }

    #[test]
    fn free_form_bound_override() {
        let params = Params {
            model: Some("bi-uniform".into()),
            procedure: Some("sd-bh".into()),
            alpha: Some(0.2),
            m: Some(4),
            m0: Some(2),
            bound: Some(0.07),
            ..Params::default()
        };
        let tasks = build_tasks(None, &params).unwrap();
        match &tasks[0] {
            RunTask::Estimate { bound, .. } => assert_eq!(*bound, 0.07),
            other => panic!("unexpected task {other:?}"),
        }
    }

    #[test]
    fn free_form_missing_params_are_reported() {
        let params = Params {
            model: Some("bi-uniform".into()),
            procedure: Some("su-bh".into()),
            alpha: Some(0.1),
            ..Params::default()
        };
        assert!(build_tasks(None, &params).is_err()); // missing m, m0
        let params = Params {
            model: Some("m2-su-sharp".into()),
            alpha1: Some(0.1),
            alpha2: Some(0.3),
            procedure: Some("su-explicit".into()),
            ..Params::default()
        };
        assert!(build_tasks(None, &params).is_err()); // missing crit
    }

    #[test]
    fn default_bounds_cover_the_guarantee_table() {
        let bi = ModelSpec::BiUniform {
            m0: 2,
            false_nulls: FalseNullSpec::Dirac(vec![0.0, 0.0]),
        };
        let dep = ModelSpec::BonferroniSharp {
            m: 4,
            copula: CopulaSpec::Comonotone,
        };
        let su_bh = ProcedureSpec::step_up(CriticalFamily::Bh(0.2));
        let sd_bh = ProcedureSpec::step_down(CriticalFamily::Bh(0.2));
        let sd_c = ProcedureSpec::step_down(CriticalFamily::ModifiedC(0.2));
        let su_by = ProcedureSpec::step_up(CriticalFamily::By(0.2));

        assert!((default_bound(&bi, &su_bh) - 0.1).abs() < 1e-12);
        assert!((default_bound(&bi, &sd_bh) - 0.1).abs() < 1e-12);
        let h4 = 1.0 + 0.5 + 1.0 / 3.0 + 0.25;
        assert!((default_bound(&dep, &su_bh) - 0.2 * h4).abs() < 1e-12);
        assert_eq!(default_bound(&dep, &sd_bh), 1.0);
        assert!((default_bound(&bi, &sd_c) - (1.0 - 0.8_f64.powf(0.5))).abs() < 1e-12);
        assert!((default_bound(&dep, &su_by) - 0.2).abs() < 1e-12);
    }
}
