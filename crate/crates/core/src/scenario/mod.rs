//! Instance generation: SINR samples turned into rate matrices.

mod channel;
mod config;
pub mod rng;

use rand::Rng;

pub use channel::{pathloss_db, rate_from_sinr, sample_sinr_distance, sample_sinr_iid, SinrSample, PATHLOSS_AT_1M_DB};
pub use config::{db_to_linear, ScenarioConfig, SinrModel};

use crate::matching::ProblemInstance;
use crate::Result;
use rng::{stream_rng, Stream};

/// Rate matrix for trial `trial_index`; a pure function of
/// `(config, trial_index)`.
pub fn generate_instance(config: &ScenarioConfig, trial_index: u64) -> Result<ProblemInstance> {
    config.validate()?;
    let mut rng = stream_rng(config.seed, trial_index, Stream::Channel);
    let n = config.num_vehicles;
    let cols = config.num_subframes * config.slots_per_subframe;
    let mut weights = Vec::with_capacity(n * cols);
    match config.sinr_model {
        SinrModel::IidLognormal => {
            for _ in 0..n * cols {
                let sinr = sample_sinr_iid(config, &mut rng);
                weights.push(rate_from_sinr(sinr.linear(), config.data_bandwidth_hz)?);
            }
        }
        SinrModel::DistanceInterference => {
            let length = config.highway_length_m;
            let positions: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=length)).collect();
            for (i, &tx) in positions.iter().enumerate() {
                let receivers = intended_receivers(config, &positions, i);
                for _ in 0..cols {
                    // one co-channel transmitter in each neighbouring cluster
                    let interferers = [
                        rng.random_range(0.0..length) - config.reuse_distance_m,
                        rng.random_range(0.0..length) + config.reuse_distance_m,
                    ];
                    let sinr = sample_sinr_distance(config, tx, &receivers, &interferers, &mut rng)?;
                    weights.push(rate_from_sinr(sinr.linear(), config.data_bandwidth_hz)?);
                }
            }
        }
    }
    ProblemInstance::from_flat(n, config.num_subframes, config.slots_per_subframe, weights)
}

/// Vehicles within `comm_range_m` of vehicle `tx`. Falls back to the
/// nearest vehicle, or to a virtual receiver at `comm_range_m` when the
/// transmitter is alone.
fn intended_receivers(config: &ScenarioConfig, positions: &[f64], tx: usize) -> Vec<f64> {
    let here = positions[tx];
    let others = positions.iter().enumerate().filter(|&(j, _)| j != tx).map(|(_, &x)| x);
    let in_range: Vec<f64> = others.clone().filter(|x| (x - here).abs() <= config.comm_range_m).collect();
    if !in_range.is_empty() {
        return in_range;
    }
    if let Some(nearest) = others.min_by(|a, b| (a - here).abs().total_cmp(&(b - here).abs())) {
        return vec![nearest];
    }
    let length = config.highway_length_m;
    let ahead = here + config.comm_range_m;
    vec![if ahead <= length { ahead } else { (here - config.comm_range_m).max(0.0) }]
}
