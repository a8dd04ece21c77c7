//! Seeded generators for every p-value model used by the estimators: the
//! basic-independence models and the adversarial dependence constructions.
//!
//! Generators are pure functions of (parameters, seed); there is no global
//! RNG state. Concurrent replicates use distinct stream ids derived from
//! (experiment seed, replicate index).

mod bi;
mod dependent;
mod seed;

pub use bi::{sample_bi, sample_bi_conservative, sample_bi_uniform};
pub(crate) use dependent::validate_m2_levels;
pub use dependent::{sample_bonferroni_sharp, sample_m2_su_sharp, sample_nonmonotone_sd};
pub use seed::RandomSeed;

use crate::core::{HypothesisPartition, PValueVector};
use crate::error::{Error, Result};

/// Distribution of the false-null block.
#[derive(Debug, Clone, PartialEq)]
pub enum FalseNullSpec {
    /// Deterministic p-values, one per entry. An empty list means no false
    /// nulls at all.
    Dirac(Vec<f64>),
    /// p = scale * U with U uniform on [0, 1], scale in (0, 1].
    ScaledUniform { scale: f64, count: usize },
    /// p = shift + scale * U, with shift >= 0 and scale + shift <= 1.
    ShiftedUniform {
        scale: f64,
        shift: f64,
        count: usize,
    },
}

impl FalseNullSpec {
    /// m1, the number of false nulls this spec produces.
    pub fn count(&self) -> usize {
        match self {
            FalseNullSpec::Dirac(points) => points.len(),
            FalseNullSpec::ScaledUniform { count, .. } => *count,
            FalseNullSpec::ShiftedUniform { count, .. } => *count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FalseNullSpec::Dirac(points) => {
                for &point in points {
                    if !point.is_finite() || !(0.0..=1.0).contains(&point) {
                        return Err(Error::ParameterConstraint(format!(
                            "dirac point {point} outside [0, 1]"
                        )));
                    }
                }
            }
            FalseNullSpec::ScaledUniform { scale, .. } => {
                if !scale.is_finite() || *scale <= 0.0 || *scale > 1.0 {
                    return Err(Error::ParameterConstraint(format!(
                        "scale {scale} outside (0, 1]"
                    )));
                }
            }
            FalseNullSpec::ShiftedUniform { scale, shift, .. } => {
                if !scale.is_finite()
                    || !shift.is_finite()
                    || *scale <= 0.0
                    || *shift < 0.0
                    || scale + shift > 1.0
                {
                    return Err(Error::ParameterConstraint(format!(
                        "need scale > 0, shift >= 0, scale + shift <= 1, got ({scale}, {shift})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn id(&self) -> String {
        match self {
            FalseNullSpec::Dirac(points) => {
                let joined: Vec<String> = points.iter().map(|p| p.to_string()).collect();
                format!("dirac[{}]", joined.join(";"))
            }
            FalseNullSpec::ScaledUniform { scale, count } => {
                format!("scaled-uniform({scale})x{count}")
            }
            FalseNullSpec::ShiftedUniform {
                scale,
                shift,
                count,
            } => {
                format!("shifted-uniform({scale};{shift})x{count}")
            }
        }
    }
}

/// Distribution of the true-null block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrueNullSpec {
    /// i.i.d. uniform on [0, 1].
    Uniform,
    /// i.i.d. uniform on [floor, 1]: stochastically larger than uniform,
    /// the one-parameter conservative family used for inequality-direction
    /// checks.
    Conservative { floor: f64 },
}

impl TrueNullSpec {
    pub fn validate(&self) -> Result<()> {
        if let TrueNullSpec::Conservative { floor } = self {
            if !floor.is_finite() || !(0.0..1.0).contains(floor) {
                return Err(Error::ParameterConstraint(format!(
                    "conservative floor {floor} outside [0, 1)"
                )));
            }
        }
        Ok(())
    }
}

/// Copula of the block construction in [`sample_bonferroni_sharp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopulaSpec {
    Independent,
    Comonotone,
    /// U_2 = 1 - U_1; only defined for m = 2.
    Countermonotone,
}

impl CopulaSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CopulaSpec::Independent => "independent",
            CopulaSpec::Comonotone => "comonotone",
            CopulaSpec::Countermonotone => "countermonotone",
        }
    }
}

impl std::str::FromStr for CopulaSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "independent" => Ok(CopulaSpec::Independent),
            "comonotone" => Ok(CopulaSpec::Comonotone),
            "countermonotone" => Ok(CopulaSpec::Countermonotone),
            other => Err(Error::ParameterConstraint(format!(
                "unknown copula: {other}"
            ))),
        }
    }
}

/// The four coupled laws of p_2 in the step-down non-monotonicity example.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonmonotoneVariant {
    /// p_2 = 0.
    Zero,
    /// p_2 = alpha * U.
    AlphaU,
    /// p_2 = U.
    U,
    /// p_2 = (1 - alpha) * U + alpha.
    Shifted,
}

impl NonmonotoneVariant {
    pub fn all() -> [NonmonotoneVariant; 4] {
        [
            NonmonotoneVariant::Zero,
            NonmonotoneVariant::AlphaU,
            NonmonotoneVariant::U,
            NonmonotoneVariant::Shifted,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            NonmonotoneVariant::Zero => "zero",
            NonmonotoneVariant::AlphaU => "alpha-u",
            NonmonotoneVariant::U => "u",
            NonmonotoneVariant::Shifted => "shifted",
        }
    }
}

impl std::str::FromStr for NonmonotoneVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(NonmonotoneVariant::Zero),
            "alpha-u" | "alphau" => Ok(NonmonotoneVariant::AlphaU),
            "u" => Ok(NonmonotoneVariant::U),
            "shifted" => Ok(NonmonotoneVariant::Shifted),
            other => Err(Error::ParameterConstraint(format!(
                "unknown variant: {other}"
            ))),
        }
    }
}

/// One draw: the p-value vector together with the ground-truth partition
/// known to the simulator.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub pvalues: PValueVector,
    pub partition: HypothesisPartition,
}

/// A fully bound model, samplable and describable. This is the form the
/// estimators and the experiment runner consume.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    BiUniform {
        m0: usize,
        false_nulls: FalseNullSpec,
    },
    BiConservative {
        m0: usize,
        floor: f64,
        false_nulls: FalseNullSpec,
    },
    BonferroniSharp {
        m: usize,
        copula: CopulaSpec,
    },
    M2SuSharp {
        alpha1: f64,
        alpha2: f64,
    },
    NonmonotoneSd {
        variant: NonmonotoneVariant,
        alpha: f64,
    },
}

impl ModelSpec {
    pub fn m(&self) -> usize {
        match self {
            ModelSpec::BiUniform { m0, false_nulls } => m0 + false_nulls.count(),
            ModelSpec::BiConservative {
                m0, false_nulls, ..
            } => m0 + false_nulls.count(),
            ModelSpec::BonferroniSharp { m, .. } => *m,
            ModelSpec::M2SuSharp { .. } | ModelSpec::NonmonotoneSd { .. } => 2,
        }
    }

    pub fn m0(&self) -> usize {
        match self {
            ModelSpec::BiUniform { m0, .. } | ModelSpec::BiConservative { m0, .. } => *m0,
            ModelSpec::BonferroniSharp { m, .. } => *m,
            ModelSpec::M2SuSharp { .. } => 2,
            ModelSpec::NonmonotoneSd { .. } => 1,
        }
    }

    pub fn sample(&self, seed: RandomSeed) -> Result<LabeledSample> {
        match self {
            ModelSpec::BiUniform { m0, false_nulls } => sample_bi_uniform(*m0, false_nulls, seed),
            ModelSpec::BiConservative {
                m0,
                floor,
                false_nulls,
            } => sample_bi_conservative(*m0, *floor, false_nulls, seed),
            ModelSpec::BonferroniSharp { m, copula } => sample_bonferroni_sharp(*m, *copula, seed),
            ModelSpec::M2SuSharp { alpha1, alpha2 } => sample_m2_su_sharp(*alpha1, *alpha2, seed),
            ModelSpec::NonmonotoneSd { variant, alpha } => {
                sample_nonmonotone_sd(*variant, *alpha, seed)
            }
        }
    }

    /// Stable descriptor used in reports. Contains no commas so it can sit
    /// unquoted in a CSV cell.
    pub fn id(&self) -> String {
        match self {
            ModelSpec::BiUniform { m0, false_nulls } => {
                format!("bi-uniform(m0={};{})", m0, false_nulls.id())
            }
            ModelSpec::BiConservative {
                m0,
                floor,
                false_nulls,
            } => {
                format!(
                    "bi-conservative(m0={};floor={};{})",
                    m0,
                    floor,
                    false_nulls.id()
                )
            }
            ModelSpec::BonferroniSharp { m, copula } => {
                format!("bonferroni-sharp(m={};{})", m, copula.name())
            }
            ModelSpec::M2SuSharp { alpha1, alpha2 } => {
                format!("m2-su-sharp({alpha1};{alpha2})")
            }
            ModelSpec::NonmonotoneSd { variant, alpha } => {
                format!("nonmonotone-sd({};{})", variant.name(), alpha)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_counts() {
        let spec = ModelSpec::BiUniform {
            m0: 3,
            false_nulls: FalseNullSpec::Dirac(vec![0.0, 0.5]),
        };
        assert_eq!(spec.m(), 5);
        assert_eq!(spec.m0(), 3);

        let spec = ModelSpec::NonmonotoneSd {
            variant: NonmonotoneVariant::U,
            alpha: 0.2,
        };
        assert_eq!((spec.m(), spec.m0()), (2, 1));

        let spec = ModelSpec::BonferroniSharp {
            m: 5,
            copula: CopulaSpec::Independent,
        };
        assert_eq!((spec.m(), spec.m0()), (5, 5));
    }

    #[test]
    fn ids_are_stable_and_comma_free() {
        let specs = [
            ModelSpec::BiUniform {
                m0: 1,
                false_nulls: FalseNullSpec::Dirac(vec![0.0, 0.99]),
            },
            ModelSpec::BiConservative {
                m0: 2,
                floor: 0.5,
                false_nulls: FalseNullSpec::ScaledUniform {
                    scale: 0.3,
                    count: 1,
                },
            },
            ModelSpec::BonferroniSharp {
                m: 5,
                copula: CopulaSpec::Comonotone,
            },
            ModelSpec::M2SuSharp {
                alpha1: 0.1,
                alpha2: 0.3,
            },
            ModelSpec::NonmonotoneSd {
                variant: NonmonotoneVariant::AlphaU,
                alpha: 0.2,
            },
        ];
        for spec in &specs {
            let id = spec.id();
            assert!(!id.contains(','), "{id}");
            assert_eq!(id, spec.id());
        }
        assert_eq!(specs[3].id(), "m2-su-sharp(0.1;0.3)");
    }

    #[test]
    fn sample_dispatch_matches_direct_calls() {
        let seed = RandomSeed::with_stream(17, 4);
        let spec = ModelSpec::M2SuSharp {
            alpha1: 0.1,
            alpha2: 0.3,
        };
        assert_eq!(
            spec.sample(seed).unwrap(),
            sample_m2_su_sharp(0.1, 0.3, seed).unwrap()
        );
    }

    #[test]
    fn variant_parsing_round_trips() {
        for variant in NonmonotoneVariant::all() {
            assert_eq!(
                variant.name().parse::<NonmonotoneVariant>().unwrap(),
                variant
            );
        }
        assert!("typo".parse::<NonmonotoneVariant>().is_err());
        assert_eq!(
            "independent".parse::<CopulaSpec>().unwrap(),
            CopulaSpec::Independent
        );
        assert!("gauss".parse::<CopulaSpec>().is_err());
    }
}
