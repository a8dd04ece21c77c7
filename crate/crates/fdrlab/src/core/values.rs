//! Critical-value families for step-up and step-down procedures.

use std::sync::OnceLock;

use crate::core::types::PValueVector;
use crate::error::{Error, Result};

/// A non-decreasing sequence 0 < a_1 <= a_2 <= ... <= a_m < 1 with an
/// implicit a_0 = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalValues {
    alphas: Vec<f64>,
}

/// How the per-index ratio a_i / i behaves over i = 1..m.
///
/// The ratio trend decides the direction in which the step-up FDR moves
/// when a false-null p-value grows: non-decreasing ratios give a
/// non-increasing FDR, non-increasing ratios the opposite, and a constant
/// ratio (the linear family) makes the FDR insensitive to the false
/// p-value positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioTrend {
    Constant,
    NonDecreasing,
    NonIncreasing,
    Mixed,
}

fn validate_level(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::InvalidLevel(alpha));
    }
    Ok(())
}

fn validate_size(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidSize);
    }
    Ok(())
}

impl CriticalValues {
    /// Wraps an explicit sequence, checking 0 < a_1 <= ... <= a_m < 1.
    pub fn explicit(alphas: Vec<f64>) -> Result<Self> {
        validate_size(alphas.len())?;
        if !alphas[0].is_finite() || alphas[0] <= 0.0 {
            return Err(Error::InvalidCriticalValues(format!(
                "first value {} must be positive",
                alphas[0]
            )));
        }
        if *alphas.last().unwrap() >= 1.0 {
            return Err(Error::InvalidCriticalValues(format!(
                "last value {} must be below 1",
                alphas.last().unwrap()
            )));
        }
        for window in alphas.windows(2) {
            if !(window[1].is_finite() && window[1] >= window[0]) {
                return Err(Error::InvalidCriticalValues(format!(
                    "sequence decreases: {} > {}",
                    window[0], window[1]
                )));
            }
        }
        Ok(Self { alphas })
    }

    /// Linear values a_i = i * alpha / m. The classical step-up family.
    pub fn benjamini_hochberg(m: usize, alpha: f64) -> Result<Self> {
        validate_size(m)?;
        validate_level(alpha)?;
        let mf = m as f64;
        let alphas = (1..=m).map(|i| i as f64 * alpha / mf).collect();
        Ok(Self { alphas })
    }

    /// Linear values shrunk by the harmonic sum: a_i = i * alpha' / (m * H_m)
    /// with H_m = sum_{k=1..m} 1/k. Valid at level alpha' under arbitrary
    /// dependence.
    pub fn benjamini_yekutieli(m: usize, alpha_prime: f64) -> Result<Self> {
        validate_size(m)?;
        validate_level(alpha_prime)?;
        let scale = (1..=m).map(|k| m as f64 / k as f64).sum::<f64>();
        let alphas = (1..=m).map(|i| i as f64 * alpha_prime / scale).collect();
        Ok(Self { alphas })
    }

    /// Constant values a_i = alpha / m.
    pub fn bonferroni(m: usize, alpha: f64) -> Result<Self> {
        validate_size(m)?;
        validate_level(alpha)?;
        Ok(Self {
            alphas: vec![alpha / m as f64; m],
        })
    }

    /// Step-down values with an enlarged first entry:
    /// c_1 = 1 - (1 - alpha)^(1/m) and c_i = i * alpha / m for i >= 2.
    ///
    /// Requires alpha <= the limit returned by [`modified_level_limit`];
    /// above it the sequence would stop being non-decreasing for large m.
    /// For m >= 2 the first entry satisfies alpha/m < c_1 <= 2 alpha/m.
    pub fn modified_step_down(m: usize, alpha: f64) -> Result<Self> {
        validate_size(m)?;
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidLevel(alpha));
        }
        let limit = cached_level_limit();
        if alpha > limit + 1e-12 {
            return Err(Error::LevelTooLarge { alpha, limit });
        }
        let mf = m as f64;
        let mut alphas: Vec<f64> = (1..=m).map(|i| i as f64 * alpha / mf).collect();
        alphas[0] = 1.0 - (1.0 - alpha).powf(1.0 / mf);
        Ok(Self { alphas })
    }

    /// Tie-adjusted sequence a_i = base_{k(i)} where k(i) = #{j : p_j <= p_(i)}
    /// is m times the empirical cdf at the i-th order statistic.
    ///
    /// Without ties k(i) = i and the base sequence comes back unchanged;
    /// with ties every index inside a tie block is promoted to the block's
    /// upper end, so a_i >= base_i and the result stays non-decreasing.
    pub fn tie_adjusted(&self, p: &PValueVector) -> Result<Self> {
        if p.len() != self.alphas.len() {
            return Err(Error::LengthMismatch {
                expected: p.len(),
                got: self.alphas.len(),
            });
        }
        let sorted = p.sorted_with_indices();
        let m = sorted.len();
        let mut alphas = Vec::with_capacity(m);
        // #{j : p_j <= p_(i)} is the index one past the tie block containing i.
        let mut block_end = 0;
        for i in 0..m {
            if i >= block_end {
                block_end = i + 1;
                while block_end < m && sorted[block_end].0 == sorted[i].0 {
                    block_end += 1;
                }
            }
            alphas.push(self.alphas[block_end - 1]);
        }
        Ok(Self { alphas })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Classifies the trend of i -> a_i / i with a small relative tolerance,
    /// so that linear families computed in floating point report as constant.
    pub fn ratio_trend(&self) -> RatioTrend {
        let ratios: Vec<f64> = self
            .alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| a / (i + 1) as f64)
            .collect();
        let tol = 1e-12;
        let mut non_decreasing = true;
        let mut non_increasing = true;
        for window in ratios.windows(2) {
            let scale = window[0].abs().max(window[1].abs());
            if window[1] > window[0] + tol * scale {
                non_increasing = false;
            }
            if window[1] < window[0] - tol * scale {
                non_decreasing = false;
            }
        }
        match (non_decreasing, non_increasing) {
            (true, true) => RatioTrend::Constant,
            (true, false) => RatioTrend::NonDecreasing,
            (false, true) => RatioTrend::NonIncreasing,
            (false, false) => RatioTrend::Mixed,
        }
    }
}

impl std::ops::Index<usize> for CriticalValues {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.alphas[i]
    }
}

/// Largest level accepted by [`CriticalValues::modified_step_down`]:
/// the unique positive root of (1 - a) = exp(-2a), about 0.797.
///
/// Bisection on [0.5, 0.99], where the residual changes sign; the returned
/// bracket midpoint is within `tolerance` of the root.
pub fn modified_level_limit(tolerance: f64) -> f64 {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let f = |a: f64| (1.0 - a) - (-2.0 * a).exp();
    let (mut lo, mut hi) = (0.5_f64, 0.99_f64);
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn cached_level_limit() -> f64 {
    static LIMIT: OnceLock<f64> = OnceLock::new();
    *LIMIT.get_or_init(|| modified_level_limit(1e-12))
}
