//! Procedure descriptions: a rejection direction plus a critical-value
//! family, bindable to a p-value vector of any length.

use crate::core::{step_down, step_up, CriticalValues, PValueVector, TestOutcome};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcedureKind {
    StepUp,
    StepDown,
}

impl ProcedureKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProcedureKind::StepUp => "step-up",
            ProcedureKind::StepDown => "step-down",
        }
    }

    fn prefix(&self) -> &'static str {
        match self {
            ProcedureKind::StepUp => "su",
            ProcedureKind::StepDown => "sd",
        }
    }
}

/// Critical-value family, parameterized by its level where one exists.
/// The tie-adjusted families re-index their base sequence through the
/// empirical cdf of the observed p-values.
#[derive(Debug, Clone, PartialEq)]
pub enum CriticalFamily {
    Bh(f64),
    By(f64),
    Bonferroni(f64),
    ModifiedC(f64),
    TieAdjustedBh(f64),
    TieAdjustedC(f64),
    Explicit(Vec<f64>),
}

impl CriticalFamily {
    /// The sequence this family compares order statistics against for the
    /// given p-values. Only the tie-adjusted variants actually look at `p`.
    pub fn build(&self, p: &PValueVector) -> Result<CriticalValues> {
        let m = p.len();
        match self {
            CriticalFamily::Bh(alpha) => CriticalValues::benjamini_hochberg(m, *alpha),
            CriticalFamily::By(alpha) => CriticalValues::benjamini_yekutieli(m, *alpha),
            CriticalFamily::Bonferroni(alpha) => CriticalValues::bonferroni(m, *alpha),
            CriticalFamily::ModifiedC(alpha) => CriticalValues::modified_step_down(m, *alpha),
            CriticalFamily::TieAdjustedBh(alpha) => {
                CriticalValues::benjamini_hochberg(m, *alpha)?.tie_adjusted(p)
            }
            CriticalFamily::TieAdjustedC(alpha) => {
                CriticalValues::modified_step_down(m, *alpha)?.tie_adjusted(p)
            }
            CriticalFamily::Explicit(values) => {
                let crit = CriticalValues::explicit(values.clone())?;
                if crit.len() != m {
                    return Err(Error::LengthMismatch {
                        expected: m,
                        got: crit.len(),
                    });
                }
                Ok(crit)
            }
        }
    }

    /// The data-independent sequence underlying this family, used by the
    /// exact integrator to locate the thresholds where the rejection
    /// pattern can change. For the tie-adjusted variants this is the base
    /// sequence, which they reproduce on untied inputs.
    pub fn base_values(&self, m: usize) -> Result<CriticalValues> {
        match self {
            CriticalFamily::Bh(alpha) | CriticalFamily::TieAdjustedBh(alpha) => {
                CriticalValues::benjamini_hochberg(m, *alpha)
            }
            CriticalFamily::By(alpha) => CriticalValues::benjamini_yekutieli(m, *alpha),
            CriticalFamily::Bonferroni(alpha) => CriticalValues::bonferroni(m, *alpha),
            CriticalFamily::ModifiedC(alpha) | CriticalFamily::TieAdjustedC(alpha) => {
                CriticalValues::modified_step_down(m, *alpha)
            }
            CriticalFamily::Explicit(values) => {
                let crit = CriticalValues::explicit(values.clone())?;
                if crit.len() != m {
                    return Err(Error::LengthMismatch {
                        expected: m,
                        got: crit.len(),
                    });
                }
                Ok(crit)
            }
        }
    }

    /// The nominal level, if the family has one.
    pub fn level(&self) -> Option<f64> {
        match self {
            CriticalFamily::Bh(alpha)
            | CriticalFamily::By(alpha)
            | CriticalFamily::Bonferroni(alpha)
            | CriticalFamily::ModifiedC(alpha)
            | CriticalFamily::TieAdjustedBh(alpha)
            | CriticalFamily::TieAdjustedC(alpha) => Some(*alpha),
            CriticalFamily::Explicit(_) => None,
        }
    }

    fn id(&self) -> String {
        match self {
            CriticalFamily::Bh(alpha) => format!("bh({alpha})"),
            CriticalFamily::By(alpha) => format!("by({alpha})"),
            CriticalFamily::Bonferroni(alpha) => format!("bonferroni({alpha})"),
            CriticalFamily::ModifiedC(alpha) => format!("c({alpha})"),
            CriticalFamily::TieAdjustedBh(alpha) => format!("bh-ties({alpha})"),
            CriticalFamily::TieAdjustedC(alpha) => format!("c-ties({alpha})"),
            CriticalFamily::Explicit(values) => {
                let joined: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                format!("explicit[{}]", joined.join(";"))
            }
        }
    }
}

/// A complete procedure: direction plus critical-value family.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcedureSpec {
    pub kind: ProcedureKind,
    pub family: CriticalFamily,
}

impl ProcedureSpec {
    pub fn step_up(family: CriticalFamily) -> Self {
        Self {
            kind: ProcedureKind::StepUp,
            family,
        }
    }

    pub fn step_down(family: CriticalFamily) -> Self {
        Self {
            kind: ProcedureKind::StepDown,
            family,
        }
    }

    /// Runs the procedure on one p-value vector.
    pub fn apply(&self, p: &PValueVector) -> Result<TestOutcome> {
        let crit = self.family.build(p)?;
        match self.kind {
            ProcedureKind::StepUp => step_up(p, &crit),
            ProcedureKind::StepDown => step_down(p, &crit),
        }
    }

    /// Stable, comma-free descriptor such as `su-bh(0.1)`.
    pub fn id(&self) -> String {
        format!("{}-{}", self.kind.prefix(), self.family.id())
    }
}
