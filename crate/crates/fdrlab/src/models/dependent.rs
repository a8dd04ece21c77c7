//! Adversarial dependence constructions: joint p-value laws with uniform
//! marginals that attain the classical FDR bounds with equality, plus the
//! coupled two-hypothesis family on which the step-down FDR fails to be
//! monotone.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::core::{HypothesisPartition, PValueVector};
use crate::error::{Error, Result};
use crate::models::{CopulaSpec, LabeledSample, NonmonotoneVariant, RandomSeed};

/// Block construction making the Bonferroni bound sharp: draw (U_1, ..., U_m)
/// from the copula, place U'_i = (i - 1 + U_i) / m in the i-th block of a
/// partition of [0, 1], and assign the blocks to coordinates through an
/// independent uniform permutation. Every marginal is uniform on [0, 1] and
/// every draw puts exactly one coordinate in each block. All hypotheses are
/// true nulls.
pub fn sample_bonferroni_sharp(
    m: usize,
    copula: CopulaSpec,
    seed: RandomSeed,
) -> Result<LabeledSample> {
    if m == 0 {
        return Err(Error::EmptyProblem);
    }
    if copula == CopulaSpec::Countermonotone && m != 2 {
        return Err(Error::CountermonotoneRequiresTwo(m));
    }
    let mut rng = seed.rng();

    let uniforms: Vec<f64> = match copula {
        CopulaSpec::Independent => (0..m).map(|_| rng.random()).collect(),
        CopulaSpec::Comonotone => {
            let u: f64 = rng.random();
            vec![u; m]
        }
        CopulaSpec::Countermonotone => {
            let u: f64 = rng.random();
            vec![u, 1.0 - u]
        }
    };

    let mf = m as f64;
    let blocks: Vec<f64> = uniforms
        .iter()
        .enumerate()
        .map(|(i, &u)| (i as f64 + u) / mf)
        .collect();

    let mut permutation: Vec<usize> = (0..m).collect();
    permutation.shuffle(&mut rng);

    let pvalues: Vec<f64> = permutation.iter().map(|&j| blocks[j]).collect();
    Ok(LabeledSample {
        pvalues: PValueVector::new(pvalues)?,
        partition: HypothesisPartition::all_true_nulls(m)?,
    })
}

/// The two-hypothesis joint law attaining FDR = alpha1 + alpha2 for the
/// step-up test with critical values (alpha1, alpha2). The first p-value is
/// uniform; given p_1 = x the second is uniform on
///   (1 - alpha1, 1]                 when x <= alpha1,
///   (alpha1, alpha2]                when alpha1 < x <= alpha2,
///   (0, alpha1] or (alpha2, 1 - alpha1]  when x > alpha2,
/// the last case mixing the two intervals with weights proportional to their
/// lengths, which is what makes the p_2 marginal uniform. Both hypotheses
/// are true nulls.
pub fn sample_m2_su_sharp(alpha1: f64, alpha2: f64, seed: RandomSeed) -> Result<LabeledSample> {
    validate_m2_levels(alpha1, alpha2)?;
    let mut rng = seed.rng();
    let p1: f64 = rng.random();
    let mix: f64 = rng.random();
    let position: f64 = rng.random();

    let p2 = if p1 <= alpha1 {
        1.0 - alpha1 + alpha1 * position
    } else if p1 <= alpha2 {
        alpha1 + (alpha2 - alpha1) * position
    } else {
        // Weights alpha1 : (1 - alpha1 - alpha2) over a total of 1 - alpha2.
        if mix < alpha1 / (1.0 - alpha2) {
            alpha1 * position
        } else {
            alpha2 + (1.0 - alpha1 - alpha2) * position
        }
    };

    Ok(LabeledSample {
        pvalues: PValueVector::new(vec![p1, p2])?,
        partition: HypothesisPartition::all_true_nulls(2)?,
    })
}

pub(crate) fn validate_m2_levels(alpha1: f64, alpha2: f64) -> Result<()> {
    if !(alpha1.is_finite() && alpha2.is_finite())
        || alpha1 <= 0.0
        || alpha1 >= alpha2
        || alpha2 >= 1.0
        || alpha1 + alpha2 >= 1.0
    {
        return Err(Error::ParameterConstraint(format!(
            "need 0 < alpha1 < alpha2 < 1 with alpha1 + alpha2 < 1, got ({alpha1}, {alpha2})"
        )));
    }
    Ok(())
}

/// One of the four coupled two-hypothesis samples on which the step-down
/// FDR is not monotone: p_1 and U are independent uniforms, H_1 is the true
/// null, and p_2 is 0, alpha*U, U or (1-alpha)*U + alpha depending on the
/// variant. Samples drawn for different variants from the same seed share
/// the underlying (p_1, U) pair, so comparisons across variants run on
/// common random numbers.
pub fn sample_nonmonotone_sd(
    variant: NonmonotoneVariant,
    alpha: f64,
    seed: RandomSeed,
) -> Result<LabeledSample> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::InvalidLevel(alpha));
    }
    let mut rng = seed.rng();
    let p1: f64 = rng.random();
    let u: f64 = rng.random();
    let p2 = variant.couple(alpha, u);
    Ok(LabeledSample {
        pvalues: PValueVector::new(vec![p1, p2])?,
        partition: HypothesisPartition::new(2, &[0])?,
    })
}

impl NonmonotoneVariant {
    /// p_2 as a function of the shared uniform U.
    pub(crate) fn couple(self, alpha: f64, u: f64) -> f64 {
        match self {
            NonmonotoneVariant::Zero => 0.0,
            NonmonotoneVariant::AlphaU => alpha * u,
            NonmonotoneVariant::U => u,
            NonmonotoneVariant::Shifted => (1.0 - alpha) * u + alpha,
        }
    }
}
