//! Step-up and step-down rejection engines.
//!
//! Both engines compare the order statistics p_(1) <= ... <= p_(m) against
//! a non-decreasing sequence of critical values. The step-up count is the
//! largest j whose order statistic passes its own critical value; the
//! step-down count is the largest j such that every order statistic up to j
//! passes. All comparisons are non-strict, exactly as in the definitions.

use crate::core::types::{HypothesisPartition, PValueVector};
use crate::core::values::CriticalValues;
use crate::error::{Error, Result};

/// Per-hypothesis rejection indicators plus the rejection count R.
#[derive(Debug, Clone, PartialEq)]
pub struct TestOutcome {
    rejected: Vec<bool>,
    num_rejections: usize,
}

impl TestOutcome {
    fn new(rejected: Vec<bool>) -> Self {
        let num_rejections = rejected.iter().filter(|&&r| r).count();
        Self {
            rejected,
            num_rejections,
        }
    }

    pub fn len(&self) -> usize {
        self.rejected.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// R, the total number of rejections.
    pub fn num_rejections(&self) -> usize {
        self.num_rejections
    }

    pub fn is_rejected(&self, index: usize) -> bool {
        self.rejected[index]
    }

    pub fn rejected(&self) -> &[bool] {
        &self.rejected
    }

    /// V, the number of rejected true nulls under the given ground truth.
    pub fn false_rejections(&self, partition: &HypothesisPartition) -> Result<usize> {
        if partition.len() != self.rejected.len() {
            return Err(Error::SizeMismatch {
                outcome: self.rejected.len(),
                partition: partition.len(),
            });
        }
        Ok(self
            .rejected
            .iter()
            .enumerate()
            .filter(|&(i, &r)| r && partition.is_true_null(i))
            .count())
    }
}

fn check_lengths(p: &PValueVector, crit: &CriticalValues) -> Result<()> {
    if p.len() != crit.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: crit.len(),
        });
    }
    Ok(())
}

/// Step-up test: R = max{j : p_(j) <= a_j} (0 if none) and H_i is rejected
/// iff p_i <= a_R. Nothing is rejected when R = 0.
pub fn step_up(p: &PValueVector, crit: &CriticalValues) -> Result<TestOutcome> {
    check_lengths(p, crit)?;
    let sorted = p.sorted_with_indices();
    let m = sorted.len();
    let r = (1..=m)
        .rev()
        .find(|&j| sorted[j - 1].0 <= crit[j - 1])
        .unwrap_or(0);
    let mut rejected = vec![false; m];
    if r > 0 {
        let threshold = crit[r - 1];
        for (i, flag) in rejected.iter_mut().enumerate() {
            *flag = p[i] <= threshold;
        }
    }
    Ok(TestOutcome::new(rejected))
}

/// Step-down test: R = max{j : p_(i) <= a_i for all i <= j} (0 if the
/// smallest p-value already fails) and the hypotheses carrying the R
/// smallest p-values are rejected. Ties at the boundary are broken by
/// ascending original index, the order the stable sort produces.
pub fn step_down(p: &PValueVector, crit: &CriticalValues) -> Result<TestOutcome> {
    check_lengths(p, crit)?;
    let sorted = p.sorted_with_indices();
    let m = sorted.len();
    let r = (0..m).take_while(|&i| sorted[i].0 <= crit[i]).count();
    let mut rejected = vec![false; m];
    for &(_, original_index) in sorted.iter().take(r) {
        rejected[original_index] = true;
    }
    Ok(TestOutcome::new(rejected))
}

/// The false discovery proportion V / max(R, 1) of one realization;
/// 0 when nothing was rejected.
pub fn false_discovery_proportion(
    outcome: &TestOutcome,
    partition: &HypothesisPartition,
) -> Result<f64> {
    let v = outcome.false_rejections(partition)?;
    Ok(v as f64 / outcome.num_rejections().max(1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(values: &[f64]) -> PValueVector {
        PValueVector::new(values.to_vec()).unwrap()
    }

    fn bh(m: usize, alpha: f64) -> CriticalValues {
        CriticalValues::benjamini_hochberg(m, alpha).unwrap()
    }

    #[test]
    fn step_up_takes_the_largest_passing_index() {
        // p_(2) = 0.04 <= 0.05, so both are rejected even though the
        // smallest p-value misses its own critical value by itself.
        let outcome = step_up(&pv(&[0.01, 0.04]), &bh(2, 0.05)).unwrap();
        assert_eq!(outcome.num_rejections(), 2);
        assert_eq!(outcome.rejected(), &[true, true]);
    }

    #[test]
    fn step_up_rejects_nothing_when_all_fail() {
        let outcome = step_up(&pv(&[1.0, 1.0, 1.0]), &bh(3, 0.2)).unwrap();
        assert_eq!(outcome.num_rejections(), 0);
        assert_eq!(outcome.rejected(), &[false, false, false]);

        let outcome = step_up(&pv(&[0.03, 0.9]), &bh(2, 0.05)).unwrap();
        assert_eq!(outcome.num_rejections(), 0);
    }

    #[test]
    fn step_down_scans_from_the_bottom() {
        let outcome = step_down(&pv(&[0.01, 0.04]), &bh(2, 0.05)).unwrap();
        assert_eq!(outcome.num_rejections(), 2);

        // Scan fails immediately: 0.03 > 0.025.
        let outcome = step_down(&pv(&[0.03, 0.04]), &bh(2, 0.05)).unwrap();
        assert_eq!(outcome.num_rejections(), 0);

        let outcome = step_down(&pv(&[0.01, 0.9]), &bh(2, 0.05)).unwrap();
        assert_eq!(outcome.num_rejections(), 1);
        assert_eq!(outcome.rejected(), &[true, false]);
    }

    #[test]
    fn step_down_ties_at_the_boundary() {
        // The scan ends exactly at a tie-block boundary: with order stats
        // (0.2, 0.2, 0.9) and crit (0.2, 0.2, 0.25) it passes i = 1, 2 and
        // fails at i = 3, so both tied hypotheses are rejected.
        let crit = CriticalValues::explicit(vec![0.2, 0.2, 0.25]).unwrap();
        let outcome = step_down(&pv(&[0.9, 0.2, 0.2]), &crit).unwrap();
        assert_eq!(outcome.num_rejections(), 2);
        assert_eq!(outcome.rejected(), &[false, true, true]);

        // A tie block is never split: if p_(j) ties with p_(j+1) and the
        // scan passed j, monotone critical values make it pass j + 1 too.
        let outcome = step_down(&pv(&[0.2, 0.2, 0.2]), &crit).unwrap();
        assert_eq!(outcome.num_rejections(), 3);

        // And the block is fully out when its first member already fails.
        let crit = CriticalValues::explicit(vec![0.1, 0.2, 0.3]).unwrap();
        let outcome = step_down(&pv(&[0.2, 0.2, 0.2]), &crit).unwrap();
        assert_eq!(outcome.num_rejections(), 0);
    }

    #[test]
    fn single_hypothesis_engines_coincide() {
        for value in [0.0, 0.04, 0.05, 0.06, 1.0] {
            let p = pv(&[value]);
            let crit = bh(1, 0.05);
            let su = step_up(&p, &crit).unwrap();
            let sd = step_down(&p, &crit).unwrap();
            assert_eq!(su, sd);
            assert_eq!(su.num_rejections(), usize::from(value <= 0.05));
        }
    }

    #[test]
    fn zero_pvalues_are_rejected() {
        let outcome = step_down(&pv(&[0.0, 0.0, 0.9]), &bh(3, 0.3)).unwrap();
        assert_eq!(outcome.num_rejections(), 2);
        assert_eq!(outcome.rejected(), &[true, true, false]);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let err = step_up(&pv(&[0.1, 0.2]), &bh(3, 0.2)).unwrap_err();
        assert_eq!(
            err,
            Error::LengthMismatch {
                expected: 2,
                got: 3
            }
        );
        let err = step_down(&pv(&[0.1]), &bh(2, 0.2)).unwrap_err();
        assert_eq!(
            err,
            Error::LengthMismatch {
                expected: 1,
                got: 2
            }
        );
    }

    #[test]
    fn fdp_guards_empty_rejections() {
        let part = HypothesisPartition::new(2, &[0, 1]).unwrap();
        let outcome = step_up(&pv(&[0.9, 0.9]), &bh(2, 0.05)).unwrap();
        assert_eq!(false_discovery_proportion(&outcome, &part).unwrap(), 0.0);
    }

    #[test]
    fn fdp_quotients() {
        // R = 2, V = 1 -> 0.5.
        let part = HypothesisPartition::new(2, &[0]).unwrap();
        let outcome = step_up(&pv(&[0.01, 0.02]), &bh(2, 0.1)).unwrap();
        assert_eq!(outcome.num_rejections(), 2);
        assert_eq!(false_discovery_proportion(&outcome, &part).unwrap(), 0.5);

        // R = 3, V = 3 -> 1.0.
        let part = HypothesisPartition::new(3, &[0, 1, 2]).unwrap();
        let outcome = step_up(&pv(&[0.01, 0.02, 0.03]), &bh(3, 0.2)).unwrap();
        assert_eq!(outcome.num_rejections(), 3);
        assert_eq!(false_discovery_proportion(&outcome, &part).unwrap(), 1.0);
    }

    #[test]
    fn fdp_size_mismatch() {
        let part = HypothesisPartition::new(3, &[0]).unwrap();
        let outcome = step_up(&pv(&[0.01, 0.02]), &bh(2, 0.1)).unwrap();
        assert!(matches!(
            false_discovery_proportion(&outcome, &part),
            Err(Error::SizeMismatch { .. })
        ));
    }
}
