//! Structured probes: the three-event decomposition of the two-hypothesis
//! step-up FDR, and a common-random-numbers scan of the FDR as one false
//! p-value moves.

use rand::Rng;
use rayon::prelude::*;

use crate::core::{false_discovery_proportion, HypothesisPartition, PValueVector};
use crate::error::{Error, Result};
use crate::estimation::monte_carlo::{pairwise_sum, summarize, EstimateReport, ReplicateStat};
use crate::estimation::procedure::{ProcedureKind, ProcedureSpec};
use crate::models::{ModelSpec, RandomSeed};

/// Estimated probabilities of the three disjoint events whose union is
/// "some rejection" for the m = 2 step-up test with values (alpha1, alpha2):
/// the first p-value passes the lower value, only the second does, or both
/// land strictly between the two values.
#[derive(Debug, Clone, PartialEq)]
pub struct EventDecomposition {
    /// P(p_1 <= alpha1).
    pub first_low: f64,
    /// P(p_2 <= alpha1, p_1 > alpha1).
    pub second_low: f64,
    /// P(alpha1 < p_i <= alpha2 for both i).
    pub both_middle: f64,
}

impl EventDecomposition {
    /// The sum of the three probabilities; when both hypotheses are true
    /// nulls this is the step-up FDR with values (alpha1, alpha2).
    pub fn total(&self) -> f64 {
        self.first_low + self.second_low + self.both_middle
    }
}

/// Estimates the three event probabilities over `n_reps` replicates of the
/// model. Replicate r uses `seed.substream(r)`, the same streams
/// [`monte_carlo`](crate::estimation::monte_carlo) uses, so the totals can
/// be compared replicate by replicate with an FDR run on the same seed.
///
/// The decomposition is only an FDR identity when every rejection is false,
/// so the model must describe two hypotheses that are both true nulls.
pub fn event_decomposition_m2(
    model: &ModelSpec,
    alpha1: f64,
    alpha2: f64,
    n_reps: usize,
    seed: RandomSeed,
) -> Result<EventDecomposition> {
    if model.m() != 2 || model.m0() != 2 {
        return Err(Error::PartitionMismatch);
    }
    if !(alpha1.is_finite() && alpha2.is_finite())
        || alpha1 <= 0.0
        || alpha1 >= alpha2
        || alpha2 >= 1.0
    {
        return Err(Error::ParameterConstraint(format!(
            "need 0 < alpha1 < alpha2 < 1, got ({alpha1}, {alpha2})"
        )));
    }
    if n_reps == 0 {
        return Err(Error::NoReplicates);
    }

    let indicators: Vec<[f64; 3]> = (0..n_reps)
        .into_par_iter()
        .map(|r| -> Result<[f64; 3]> {
            let sample = model.sample(seed.substream(r as u64))?;
            let (p1, p2) = (sample.pvalues[0], sample.pvalues[1]);
            let first_low = p1 <= alpha1;
            let second_low = p2 <= alpha1 && p1 > alpha1;
            let both_middle = alpha1 < p1 && p1 <= alpha2 && alpha1 < p2 && p2 <= alpha2;
            Ok([
                f64::from(u8::from(first_low)),
                f64::from(u8::from(second_low)),
                f64::from(u8::from(both_middle)),
            ])
        })
        .collect::<Result<_>>()?;

    let nf = n_reps as f64;
    let column = |j: usize| -> f64 {
        pairwise_sum(&indicators.iter().map(|row| row[j]).collect::<Vec<_>>()) / nf
    };
    Ok(EventDecomposition {
        first_low: column(0),
        second_low: column(1),
        both_middle: column(2),
    })
}

/// FDR estimates for a family of models that differ only in where the single
/// false-null p-value sits: `m0` i.i.d. uniform true nulls plus one false
/// null fixed at each of the (strictly increasing) `false_levels`.
///
/// All levels share the true-null draws of each replicate, so differences
/// between the per-level estimates carry no Monte-Carlo noise from the true
/// nulls. Only step-up procedures are accepted: the direction claims this
/// probe examines are step-up facts, and the step-down analogue is covered
/// by the coupled non-monotone generators instead.
pub fn monotonicity_probe(
    procedure: &ProcedureSpec,
    m0: usize,
    false_levels: &[f64],
    n_reps: usize,
    seed: RandomSeed,
) -> Result<Vec<EstimateReport>> {
    if procedure.kind != ProcedureKind::StepUp {
        return Err(Error::ProbeRequiresStepUp);
    }
    if m0 == 0 {
        return Err(Error::InvalidSize);
    }
    if n_reps == 0 {
        return Err(Error::NoReplicates);
    }
    if false_levels.is_empty() {
        return Err(Error::InvalidLevels("need at least one level".into()));
    }
    if false_levels
        .iter()
        .any(|t| !t.is_finite() || !(0.0..=1.0).contains(t))
    {
        return Err(Error::InvalidLevels("levels must lie in [0, 1]".into()));
    }
    for window in false_levels.windows(2) {
        if window[1] <= window[0] {
            return Err(Error::InvalidLevels(format!(
                "levels must be strictly increasing, got {} then {}",
                window[0], window[1]
            )));
        }
    }

    let m = m0 + 1;
    // Fixed layout: true nulls first, the moving false null last. The FDR
    // does not depend on positions (the engines are permutation
    // equivariant), and a fixed layout keeps the coupling across levels
    // exact.
    let partition = HypothesisPartition::new(m, &(0..m0).collect::<Vec<_>>())?;

    let per_replicate: Vec<Vec<ReplicateStat>> = (0..n_reps)
        .into_par_iter()
        .map(|r| -> Result<Vec<ReplicateStat>> {
            let mut rng = seed.substream(r as u64).rng();
            let mut pvalues: Vec<f64> = (0..m0).map(|_| rng.random()).collect();
            pvalues.push(0.0);
            let mut stats = Vec::with_capacity(false_levels.len());
            for &level in false_levels {
                pvalues[m0] = level;
                let p = PValueVector::new(pvalues.clone())?;
                let outcome = procedure.apply(&p)?;
                let false_rejections = outcome.false_rejections(&partition)?;
                stats.push(ReplicateStat {
                    fdp: false_discovery_proportion(&outcome, &partition)?,
                    any_false: false_rejections > 0,
                    rejections: outcome.num_rejections(),
                    false_rejections,
                });
            }
            Ok(stats)
        })
        .collect::<Result<_>>()?;

    Ok(false_levels
        .iter()
        .enumerate()
        .map(|(k, &level)| {
            let column: Vec<ReplicateStat> = per_replicate
                .iter()
                .map(|row| {
                    let s = &row[k];
                    ReplicateStat {
                        fdp: s.fdp,
                        any_false: s.any_false,
                        rejections: s.rejections,
                        false_rejections: s.false_rejections,
                    }
                })
                .collect();
            summarize(
                &column,
                seed,
                procedure.id(),
                format!("bi-uniform-crn(m0={m0};dirac@{level})"),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::monte_carlo::monte_carlo;
    use crate::estimation::procedure::CriticalFamily;
    use crate::models::{CopulaSpec, FalseNullSpec, NonmonotoneVariant};

    #[test]
    fn decomposition_totals_match_the_fdr_run() {
        let model = ModelSpec::M2SuSharp {
            alpha1: 0.1,
            alpha2: 0.3,
        };
        let seed = RandomSeed::new(101);
        let n = 20_000;
        let parts = event_decomposition_m2(&model, 0.1, 0.3, n, seed).unwrap();
        let spec = ProcedureSpec::step_up(CriticalFamily::Explicit(vec![0.1, 0.3]));
        let report = monte_carlo(&model, &spec, n, seed).unwrap();
        // Identical replicate streams: the sums agree up to the rounding of
        // three separate divisions.
        assert!((parts.total() - report.fdr_hat).abs() < 1e-12);
    }

    #[test]
    fn independent_pair_gives_marginal_probability() {
        let model = ModelSpec::BiUniform {
            m0: 2,
            false_nulls: FalseNullSpec::Dirac(vec![]),
        };
        let parts = event_decomposition_m2(&model, 0.1, 0.3, 50_000, RandomSeed::new(7)).unwrap();
        assert!((parts.first_low - 0.1).abs() < 0.01);
        // Generic cap on the three events: 2 alpha1 + (alpha2 - alpha1).
        assert!(parts.total() <= 2.0 * 0.1 + 0.2 + 0.01);
    }

    #[test]
    fn decomposition_requires_two_true_nulls() {
        let model = ModelSpec::NonmonotoneSd {
            variant: NonmonotoneVariant::U,
            alpha: 0.2,
        };
        assert_eq!(
            event_decomposition_m2(&model, 0.1, 0.3, 10, RandomSeed::new(1)),
            Err(Error::PartitionMismatch)
        );
        let model = ModelSpec::BonferroniSharp {
            m: 3,
            copula: CopulaSpec::Independent,
        };
        assert_eq!(
            event_decomposition_m2(&model, 0.1, 0.3, 10, RandomSeed::new(1)),
            Err(Error::PartitionMismatch)
        );
    }

    #[test]
    fn decomposition_validates_levels() {
        let model = ModelSpec::M2SuSharp {
            alpha1: 0.1,
            alpha2: 0.3,
        };
        assert!(event_decomposition_m2(&model, 0.3, 0.1, 10, RandomSeed::new(1)).is_err());
        assert!(event_decomposition_m2(&model, 0.0, 0.3, 10, RandomSeed::new(1)).is_err());
    }

    #[test]
    fn probe_rejects_bad_inputs() {
        let su = ProcedureSpec::step_up(CriticalFamily::Bh(0.2));
        let sd = ProcedureSpec::step_down(CriticalFamily::Bh(0.2));
        let seed = RandomSeed::new(1);
        assert_eq!(
            monotonicity_probe(&sd, 2, &[0.1, 0.5], 10, seed),
            Err(Error::ProbeRequiresStepUp)
        );
        assert_eq!(
            monotonicity_probe(&su, 0, &[0.1], 10, seed),
            Err(Error::InvalidSize)
        );
        assert!(matches!(
            monotonicity_probe(&su, 2, &[0.5, 0.1], 10, seed),
            Err(Error::InvalidLevels(_))
        ));
        assert!(matches!(
            monotonicity_probe(&su, 2, &[0.1, 0.1], 10, seed),
            Err(Error::InvalidLevels(_))
        ));
        assert!(matches!(
            monotonicity_probe(&su, 2, &[], 10, seed),
            Err(Error::InvalidLevels(_))
        ));
        assert!(matches!(
            monotonicity_probe(&su, 2, &[0.1, 1.5], 10, seed),
            Err(Error::InvalidLevels(_))
        ));
    }

    #[test]
    fn probe_reports_one_entry_per_level() {
        let su = ProcedureSpec::step_up(CriticalFamily::Bh(0.2));
        let reports =
            monotonicity_probe(&su, 2, &[0.0, 0.5, 1.0], 2_000, RandomSeed::new(3)).unwrap();
        assert_eq!(reports.len(), 3);
        for report in &reports {
            assert_eq!(report.n_reps, 2_000);
            assert!(report.fdr_hat <= report.fwer_hat);
        }
    }
}
