//! Generators for the basic-independence p-value models: independent true
//! nulls, an arbitrary false-null block, and a seeded random interleaving.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::core::HypothesisPartition;
use crate::core::PValueVector;
use crate::error::{Error, Result};
use crate::models::{FalseNullSpec, LabeledSample, RandomSeed, TrueNullSpec};

/// Draws one sample with `m0` i.i.d. uniform true nulls and the false-null
/// block described by `false_nulls`, then interleaves all coordinates with a
/// seeded random permutation. The returned partition tracks where the true
/// nulls landed.
pub fn sample_bi_uniform(
    m0: usize,
    false_nulls: &FalseNullSpec,
    seed: RandomSeed,
) -> Result<LabeledSample> {
    sample_bi(m0, &TrueNullSpec::Uniform, false_nulls, seed)
}

/// Same layout with conservative true nulls: each true-null p-value is
/// uniform on [floor, 1], which is stochastically larger than uniform on
/// [0, 1] for any floor in [0, 1).
pub fn sample_bi_conservative(
    m0: usize,
    floor: f64,
    false_nulls: &FalseNullSpec,
    seed: RandomSeed,
) -> Result<LabeledSample> {
    sample_bi(m0, &TrueNullSpec::Conservative { floor }, false_nulls, seed)
}

pub fn sample_bi(
    m0: usize,
    true_nulls: &TrueNullSpec,
    false_nulls: &FalseNullSpec,
    seed: RandomSeed,
) -> Result<LabeledSample> {
    true_nulls.validate()?;
    false_nulls.validate()?;
    let m1 = false_nulls.count();
    let m = m0 + m1;
    if m == 0 {
        return Err(Error::EmptyProblem);
    }

    let mut rng = seed.rng();

    // Draw order is fixed: true nulls, then the false block, then the
    // interleaving. Models sharing a seed therefore share the early draws.
    let mut values = Vec::with_capacity(m);
    for _ in 0..m0 {
        let u: f64 = rng.random();
        values.push(match *true_nulls {
            TrueNullSpec::Uniform => u,
            TrueNullSpec::Conservative { floor } => floor + (1.0 - floor) * u,
        });
    }
    match false_nulls {
        FalseNullSpec::Dirac(points) => values.extend_from_slice(points),
        FalseNullSpec::ScaledUniform { scale, count } => {
            for _ in 0..*count {
                values.push(scale * rng.random::<f64>());
            }
        }
        FalseNullSpec::ShiftedUniform {
            scale,
            shift,
            count,
        } => {
            for _ in 0..*count {
                values.push(shift + scale * rng.random::<f64>());
            }
        }
    }

    let mut destinations: Vec<usize> = (0..m).collect();
    destinations.shuffle(&mut rng);

    let mut pvalues = vec![0.0; m];
    let mut true_null_indices = Vec::with_capacity(m0);
    for (source, &dest) in destinations.iter().enumerate() {
        pvalues[dest] = values[source];
        if source < m0 {
            true_null_indices.push(dest);
        }
    }

    Ok(LabeledSample {
        pvalues: PValueVector::new(pvalues)?,
        partition: HypothesisPartition::new(m, &true_null_indices)?,
    })
}
