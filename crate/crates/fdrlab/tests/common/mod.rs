//! Shared helpers for the integration suites: a literal enumeration oracle
//! for both rejection engines, and small statistics utilities.

#![allow(dead_code)]

use fdrlab::core::{step_down, step_up, CriticalValues, PValueVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Step-up rejection count straight from the definition: the largest j
/// whose order statistic passes its own critical value.
pub fn oracle_step_up_count(p: &[f64], crit: &[f64]) -> usize {
    let mut sorted = p.to_vec();
    sorted.sort_by(f64::total_cmp);
    (1..=p.len())
        .filter(|&j| sorted[j - 1] <= crit[j - 1])
        .max()
        .unwrap_or(0)
}

/// Step-down rejection count straight from the definition: the largest j
/// such that every order statistic up to j passes.
pub fn oracle_step_down_count(p: &[f64], crit: &[f64]) -> usize {
    let mut sorted = p.to_vec();
    sorted.sort_by(f64::total_cmp);
    (1..=p.len())
        .filter(|&j| (1..=j).all(|i| sorted[i - 1] <= crit[i - 1]))
        .max()
        .unwrap_or(0)
}

/// Step-up rejection set from the definition: everything at or below the
/// R-th critical value.
pub fn oracle_step_up_set(p: &[f64], crit: &[f64]) -> Vec<bool> {
    let count = oracle_step_up_count(p, crit);
    if count == 0 {
        vec![false; p.len()]
    } else {
        p.iter().map(|&value| value <= crit[count - 1]).collect()
    }
}

/// Step-down rejection set from the definition: the R smallest p-values,
/// ties broken by ascending original index (lexicographic sort on
/// (value, index)).
pub fn oracle_step_down_set(p: &[f64], crit: &[f64]) -> Vec<bool> {
    let count = oracle_step_down_count(p, crit);
    let mut pairs: Vec<(f64, usize)> = p.iter().copied().zip(0..p.len()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut rejected = vec![false; p.len()];
    for &(_, index) in pairs.iter().take(count) {
        rejected[index] = true;
    }
    rejected
}

/// Draws one random instance: p-values (half the time snapped to a coarse
/// grid so ties are common) and a random non-decreasing critical sequence.
pub fn random_instance(rng: &mut ChaCha12Rng, max_m: usize) -> (Vec<f64>, Vec<f64>) {
    let m = rng.random_range(1..=max_m);
    let snap = rng.random_bool(0.5);
    let p: Vec<f64> = (0..m)
        .map(|_| {
            let u: f64 = rng.random();
            if snap {
                (u * 10.0).round() / 10.0
            } else {
                u
            }
        })
        .collect();
    let crit: Vec<f64> = match rng.random_range(0..4u8) {
        0 => {
            let alpha = rng.random_range(0.01..0.99);
            (1..=m).map(|i| i as f64 * alpha / m as f64).collect()
        }
        1 => {
            let alpha = rng.random_range(0.01..0.99);
            let scale: f64 = (1..=m).map(|k| m as f64 / k as f64).sum();
            (1..=m).map(|i| i as f64 * alpha / scale).collect()
        }
        2 => {
            let alpha = rng.random_range(0.01..0.99);
            vec![alpha / m as f64; m]
        }
        _ => {
            let mut values: Vec<f64> = (0..m).map(|_| rng.random_range(0.001..0.999)).collect();
            values.sort_by(f64::total_cmp);
            values
        }
    };
    (p, crit)
}

/// Compares both engines against the enumeration oracle on `instances`
/// random cases with m <= `max_m`. Returns the first mismatch description.
pub fn engines_match_oracle(instances: usize, max_m: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for case in 0..instances {
        let (p, crit) = random_instance(&mut rng, max_m);
        let pv = PValueVector::new(p.clone()).unwrap();
        let cv = CriticalValues::explicit(crit.clone()).unwrap();

        let su = step_up(&pv, &cv).unwrap();
        if su.num_rejections() != oracle_step_up_count(&p, &crit)
            || su.rejected() != oracle_step_up_set(&p, &crit)
        {
            return Err(format!(
                "step-up mismatch on case {case}: p={p:?} crit={crit:?}"
            ));
        }

        let sd = step_down(&pv, &cv).unwrap();
        if sd.num_rejections() != oracle_step_down_count(&p, &crit)
            || sd.rejected() != oracle_step_down_set(&p, &crit)
        {
            return Err(format!(
                "step-down mismatch on case {case}: p={p:?} crit={crit:?}"
            ));
        }
    }
    Ok(())
}

/// Kolmogorov distance between the sample and the uniform cdf on [0, 1].
pub fn ks_uniform(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let upper = (i as f64 + 1.0) / n - x;
            let lower = x - i as f64 / n;
            upper.max(lower)
        })
        .fold(0.0, f64::max)
}

/// Sample Pearson correlation.
pub fn sample_correlation(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mean_x: f64 = xs.iter().sum::<f64>() / n;
    let mean_y: f64 = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
        var_y += (y - mean_y) * (y - mean_y);
    }
    cov / (var_x.sqrt() * var_y.sqrt())
}

/// Drops the trailing wall-time column from every CSV line; the one field
/// allowed to differ between otherwise identical runs.
pub fn strip_wall_time(csv: &str) -> String {
    csv.lines()
        .map(|line| match line.rfind(',') {
            Some(pos) => &line[..pos],
            None => line,
        })
        .collect::<Vec<_>>()
        .join("\n")
}
