//! Rate statistics, bootstrap intervals and empirical CDFs.

use rand::Rng;

use super::{Algorithm, TrialResult};
use crate::scenario::rng::{stream_rng, Stream};
use crate::{Error, Result};

/// Highest, worst, mean and population standard deviation of vehicle
/// rates; when built by [`summarize`], each is averaged across trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsSummary {
    pub highest: f64,
    pub worst: f64,
    pub mean: f64,
    pub std: f64,
}

impl MetricsSummary {
    /// Statistics of a single rate vector.
    pub fn of_vehicles(rates: &[f64]) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::Empty("rate vector".into()));
        }
        let n = rates.len() as f64;
        let mean = rates.iter().sum::<f64>() / n;
        let var = rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n;
        Ok(Self {
            highest: rates.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            worst: rates.iter().copied().fold(f64::INFINITY, f64::min),
            mean,
            std: var.sqrt(),
        })
    }

    /// Every field divided by `divisor` (e.g. bandwidth for bits/s/Hz, or
    /// 1e6 for Mbit/s).
    pub fn scaled(self, divisor: f64) -> Self {
        Self {
            highest: self.highest / divisor,
            worst: self.worst / divisor,
            mean: self.mean / divisor,
            std: self.std / divisor,
        }
    }
}

fn outcome_rates(results: &[TrialResult], algorithm: Algorithm) -> Result<Vec<&[f64]>> {
    if results.is_empty() {
        return Err(Error::Empty("trial results".into()));
    }
    results
        .iter()
        .map(|t| {
            t.outcome(algorithm)
                .map(|o| o.rates.as_slice())
                .ok_or_else(|| Error::InvalidArgument(format!("trial {} has no {algorithm} result", t.trial_index)))
        })
        .collect()
}

/// Per-trial vehicle statistics of one algorithm, in trial order.
pub fn per_trial_metrics(results: &[TrialResult], algorithm: Algorithm) -> Result<Vec<MetricsSummary>> {
    outcome_rates(results, algorithm)?.into_iter().map(MetricsSummary::of_vehicles).collect()
}

/// Trial-averaged highest, worst, mean and standard deviation, bits/s.
pub fn summarize(results: &[TrialResult], algorithm: Algorithm) -> Result<MetricsSummary> {
    let per_trial = per_trial_metrics(results, algorithm)?;
    let n = per_trial.len() as f64;
    let avg = |f: fn(&MetricsSummary) -> f64| per_trial.iter().map(f).sum::<f64>() / n;
    Ok(MetricsSummary {
        highest: avg(|m| m.highest),
        worst: avg(|m| m.worst),
        mean: avg(|m| m.mean),
        std: avg(|m| m.std),
    })
}

/// Percentile bootstrap interval for the mean of `samples`.
pub fn bootstrap_mean_ci(samples: &[f64], resamples: usize, level: f64, seed: u64) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::Empty("bootstrap samples".into()));
    }
    if resamples == 0 || !(0.0 < level && level < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "bootstrap needs resamples >= 1 and level in (0, 1), got {resamples} and {level}"
        )));
    }
    let mut rng = stream_rng(seed, samples.len() as u64, Stream::Bootstrap);
    let n = samples.len();
    let mut means: Vec<f64> =
        (0..resamples).map(|_| (0..n).map(|_| samples[rng.random_range(0..n)]).sum::<f64>() / n as f64).collect();
    means.sort_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    let pick = |q: f64| means[((q * (resamples - 1) as f64).round() as usize).min(resamples - 1)];
    Ok((pick(tail), pick(1.0 - tail)))
}

/// Empirical CDF of pooled per-vehicle spectral efficiencies.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfSeries {
    /// bits/s/Hz, strictly increasing.
    pub grid: Vec<f64>,
    /// Fraction of samples `<=` each grid point.
    pub cdf: Vec<f64>,
}

/// `points` evenly spaced values over `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect(),
    }
}

/// 30 points over `[1, 10]` bits/s/Hz.
pub fn default_cdf_grid() -> Vec<f64> {
    linear_grid(1.0, 10.0, 30)
}

/// Pools every vehicle's rate over all trials, converts to bits/s/Hz with
/// `bandwidth_hz` and evaluates the empirical CDF on `grid`.
pub fn empirical_cdf(
    results: &[TrialResult],
    algorithm: Algorithm,
    grid: &[f64],
    bandwidth_hz: f64,
) -> Result<CdfSeries> {
    if grid.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        || grid.iter().any(|g| !g.is_finite())
    {
        return Err(Error::InvalidArgument("CDF grid must be finite and strictly increasing".into()));
    }
    let mut pool: Vec<f64> =
        outcome_rates(results, algorithm)?.into_iter().flatten().map(|r| r / bandwidth_hz).collect();
    if pool.is_empty() {
        return Err(Error::Empty("sample pool".into()));
    }
    pool.sort_by(f64::total_cmp);
    let n = pool.len() as f64;
    let cdf = grid.iter().map(|&g| pool.partition_point(|&x| x <= g) as f64 / n).collect();
    Ok(CdfSeries { grid: grid.to_vec(), cdf })
}
