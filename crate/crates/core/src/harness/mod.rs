//! Monte Carlo experiments comparing allocators on generated instances.

mod metrics;
mod trials;

pub use metrics::{
    bootstrap_mean_ci, default_cdf_grid, empirical_cdf, linear_grid, per_trial_metrics, summarize, CdfSeries,
    MetricsSummary,
};
pub use trials::{run_trials, Algorithm, AlgorithmOutcome, RunOptions, TrialResult, Workers};

use crate::scenario::ScenarioConfig;
use crate::{Error, Result};

/// Worst-vehicle rate of one algorithm at one vehicle count.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub num_vehicles: usize,
    pub algorithm: Algorithm,
    /// Trial-averaged worst rate, bits/s.
    pub mean_worst_rate: f64,
    /// Worst rate of each trial, bits/s, in trial order.
    pub per_trial_worst: Vec<f64>,
}

/// Reruns [`run_trials`] for each vehicle count (all other parameters from
/// `config`). Output is ordered by count, then by `algorithms`.
pub fn sweep_density(
    config: &ScenarioConfig,
    vehicle_counts: &[usize],
    algorithms: &[Algorithm],
    num_trials: u64,
    options: &RunOptions,
) -> Result<Vec<SweepPoint>> {
    if let Some(&bad) = vehicle_counts.iter().find(|&&n| n == 0 || n > config.num_subframes) {
        return Err(Error::InvalidConfig(format!(
            "vehicle count {bad} outside [1, {}] (num_subframes)",
            config.num_subframes
        )));
    }
    let mut points = Vec::with_capacity(vehicle_counts.len() * algorithms.len());
    for &n in vehicle_counts {
        let cfg = ScenarioConfig { num_vehicles: n, ..config.clone() };
        let results = run_trials(&cfg, algorithms, num_trials, options)?;
        for &algorithm in algorithms {
            let per_trial_worst: Vec<f64> = per_trial_metrics(&results, algorithm)?.iter().map(|m| m.worst).collect();
            let mean_worst_rate = per_trial_worst.iter().sum::<f64>() / per_trial_worst.len() as f64;
            points.push(SweepPoint { num_vehicles: n, algorithm, mean_worst_rate, per_trial_worst });
        }
    }
    Ok(points)
}
