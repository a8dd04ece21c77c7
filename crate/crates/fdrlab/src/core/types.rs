//! Input types for the rejection engines.

use crate::error::{Error, Result};

/// A vector of m >= 1 p-values, each in [0, 1].
///
/// Exact zeros are legal inputs: several of the generated models place
/// false-null p-values at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PValueVector {
    values: Vec<f64>,
}

impl PValueVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSize);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidPValue { index, value });
            }
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // m >= 1 by construction
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Order statistics paired with their original indices. Ties keep
    /// ascending original index (stable sort), which is the tie rule the
    /// step-down engine relies on.
    pub(crate) fn sorted_with_indices(&self) -> Vec<(f64, usize)> {
        let mut pairs: Vec<(f64, usize)> = self
            .values
            .iter()
            .copied()
            .zip(0..self.values.len())
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs
    }
}

impl std::ops::Index<usize> for PValueVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Ground-truth split of {0, ..., m-1} into true nulls I0 and false nulls I1.
///
/// Known to the simulator, never to the procedures.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisPartition {
    is_true_null: Vec<bool>,
    m0: usize,
}

impl HypothesisPartition {
    /// Builds a partition from the set of true-null indices (0-based).
    pub fn new(m: usize, true_null_indices: &[usize]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSize);
        }
        let mut is_true_null = vec![false; m];
        for &index in true_null_indices {
            if index >= m {
                return Err(Error::IndexOutOfRange { index, m });
            }
            is_true_null[index] = true;
        }
        let m0 = is_true_null.iter().filter(|&&b| b).count();
        Ok(Self { is_true_null, m0 })
    }

    /// Every hypothesis is a true null.
    pub fn all_true_nulls(m: usize) -> Result<Self> {
        Self::new(m, &(0..m).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.is_true_null.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of true nulls m0.
    pub fn m0(&self) -> usize {
        self.m0
    }

    /// Number of false nulls m1 = m - m0.
    pub fn m1(&self) -> usize {
        self.is_true_null.len() - self.m0
    }

    pub fn is_true_null(&self, index: usize) -> bool {
        self.is_true_null[index]
    }

    pub fn true_null_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.is_true_null
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}
