//! Deterministic FDR computation for the two-hypothesis models whose joint
//! law has a closed-form conditional: a midpoint rule over p_1 combined with
//! exact integration of p_2 over the finitely many intervals on which the
//! rejection pattern is constant.

use crate::core::{false_discovery_proportion, HypothesisPartition, PValueVector};
use crate::error::{Error, Result};
use crate::estimation::procedure::ProcedureSpec;
use crate::models::{FalseNullSpec, ModelSpec, NonmonotoneVariant};

/// Law of p_2 given p_1 = x: either a point mass or a mixture of uniform
/// pieces (lo, hi, mass) with total mass 1.
enum ConditionalLaw {
    Atom(f64),
    Pieces(Vec<(f64, f64, f64)>),
}

struct ClosedFormModel {
    partition: HypothesisPartition,
    law: Box<dyn Fn(f64) -> ConditionalLaw>,
}

/// FDR of `procedure` under a two-hypothesis model with a closed-form
/// conditional law, by numerical integration.
///
/// Only p_1 is discretized: the outer integral uses a midpoint rule with
/// `grid_n` cells, and for each cell the inner integral over p_2 sums the
/// exact mass of every interval between consecutive decision thresholds.
/// The error is O(1/grid_n), driven entirely by the cells in which the
/// conditional FDP jumps as a function of p_1.
pub fn exact_fdr_m2_grid(
    model: &ModelSpec,
    procedure: &ProcedureSpec,
    grid_n: usize,
) -> Result<f64> {
    if grid_n < 1_000 {
        return Err(Error::ParameterConstraint(format!(
            "grid_n must be at least 1000, got {grid_n}"
        )));
    }
    let closed_form = match closed_form(model)? {
        Some(cf) => cf,
        None => return Ok(0.0), // no true nulls: V = 0 in every realization
    };

    // Thresholds at which the rejection pattern in p_2 can change: the two
    // base critical values. The diagonal p_2 = x is added per cell below.
    let base = procedure.family.base_values(2)?;
    let thresholds = [base[0], base[1]];

    let cells = grid_n as f64;
    let mut total = 0.0;
    for k in 0..grid_n {
        let x = (k as f64 + 0.5) / cells;
        total += match (closed_form.law)(x) {
            ConditionalLaw::Atom(value) => fdp_at(x, value, procedure, &closed_form.partition)?,
            ConditionalLaw::Pieces(pieces) => {
                let mut conditional = 0.0;
                for (lo, hi, mass) in pieces {
                    conditional += integrate_piece(
                        x,
                        lo,
                        hi,
                        mass,
                        &thresholds,
                        procedure,
                        &closed_form.partition,
                    )?;
                }
                conditional
            }
        };
    }
    Ok(total / cells)
}

/// Integrates FDP(x, p_2) over p_2 uniform on (lo, hi) carrying `mass`,
/// splitting at the decision thresholds and at the diagonal so the FDP is
/// constant on each open subinterval and can be read off at its midpoint.
fn integrate_piece(
    x: f64,
    lo: f64,
    hi: f64,
    mass: f64,
    thresholds: &[f64],
    procedure: &ProcedureSpec,
    partition: &HypothesisPartition,
) -> Result<f64> {
    let mut cuts = vec![lo, hi];
    for &t in thresholds.iter().chain(std::iter::once(&x)) {
        if t > lo && t < hi {
            cuts.push(t);
        }
    }
    cuts.sort_by(f64::total_cmp);

    let density = mass / (hi - lo);
    let mut acc = 0.0;
    for window in cuts.windows(2) {
        let (a, b) = (window[0], window[1]);
        if b <= a {
            continue;
        }
        acc += fdp_at(x, 0.5 * (a + b), procedure, partition)? * density * (b - a);
    }
    Ok(acc)
}

fn fdp_at(
    p1: f64,
    p2: f64,
    procedure: &ProcedureSpec,
    partition: &HypothesisPartition,
) -> Result<f64> {
    let p = PValueVector::new(vec![p1, p2])?;
    let outcome = procedure.apply(&p)?;
    false_discovery_proportion(&outcome, partition)
}

/// Conditional law of the supported m = 2 models. `None` means the model
/// has no true nulls, making the FDR identically zero.
fn closed_form(model: &ModelSpec) -> Result<Option<ClosedFormModel>> {
    match model {
        ModelSpec::M2SuSharp { alpha1, alpha2 } => {
            crate::models::validate_m2_levels(*alpha1, *alpha2)?;
            let (a1, a2) = (*alpha1, *alpha2);
            Ok(Some(ClosedFormModel {
                partition: HypothesisPartition::all_true_nulls(2)?,
                law: Box::new(move |x| {
                    if x <= a1 {
                        ConditionalLaw::Pieces(vec![(1.0 - a1, 1.0, 1.0)])
                    } else if x <= a2 {
                        ConditionalLaw::Pieces(vec![(a1, a2, 1.0)])
                    } else {
                        let lower_weight = a1 / (1.0 - a2);
                        ConditionalLaw::Pieces(vec![
                            (0.0, a1, lower_weight),
                            (a2, 1.0 - a1, 1.0 - lower_weight),
                        ])
                    }
                }),
            }))
        }
        ModelSpec::NonmonotoneSd { variant, alpha } => {
            if !alpha.is_finite() || *alpha <= 0.0 || *alpha >= 1.0 {
                return Err(Error::InvalidLevel(*alpha));
            }
            let a = *alpha;
            let law: Box<dyn Fn(f64) -> ConditionalLaw> = match variant {
                NonmonotoneVariant::Zero => Box::new(|_| ConditionalLaw::Atom(0.0)),
                NonmonotoneVariant::AlphaU => {
                    Box::new(move |_| ConditionalLaw::Pieces(vec![(0.0, a, 1.0)]))
                }
                NonmonotoneVariant::U => {
                    Box::new(|_| ConditionalLaw::Pieces(vec![(0.0, 1.0, 1.0)]))
                }
                NonmonotoneVariant::Shifted => {
                    Box::new(move |_| ConditionalLaw::Pieces(vec![(a, 1.0, 1.0)]))
                }
            };
            Ok(Some(ClosedFormModel {
                partition: HypothesisPartition::new(2, &[0])?,
                law,
            }))
        }
        ModelSpec::BiUniform { m0, false_nulls } => {
            if m0 + false_nulls.count() != 2 {
                return Err(Error::UnsupportedModel(format!(
                    "{} does not describe two hypotheses",
                    model.id()
                )));
            }
            false_nulls.validate()?;
            match (m0, false_nulls) {
                (0, _) => Ok(None),
                (2, _) => Ok(Some(ClosedFormModel {
                    partition: HypothesisPartition::all_true_nulls(2)?,
                    law: Box::new(|_| ConditionalLaw::Pieces(vec![(0.0, 1.0, 1.0)])),
                })),
                (1, spec) => {
                    let law: Box<dyn Fn(f64) -> ConditionalLaw> = match spec {
                        FalseNullSpec::Dirac(points) => {
                            let point = points[0];
                            Box::new(move |_| ConditionalLaw::Atom(point))
                        }
                        FalseNullSpec::ScaledUniform { scale, .. } => {
                            let s = *scale;
                            Box::new(move |_| ConditionalLaw::Pieces(vec![(0.0, s, 1.0)]))
                        }
                        FalseNullSpec::ShiftedUniform { scale, shift, .. } => {
                            let (s, h) = (*scale, *shift);
                            Box::new(move |_| ConditionalLaw::Pieces(vec![(h, h + s, 1.0)]))
                        }
                    };
                    Ok(Some(ClosedFormModel {
                        partition: HypothesisPartition::new(2, &[0])?,
                        law,
                    }))
                }
                _ => unreachable!("m0 <= 2 by the size check"),
            }
        }
        other => Err(Error::UnsupportedModel(other.id())),
    }
}
