//! SINR sampling and the Shannon rate mapping.

use rand::Rng;
use rand_distr::StandardNormal;

use super::config::{db_to_linear, ScenarioConfig};
use crate::{Error, Result};

/// Path loss at 1 m for a 5.9 GHz carrier (free space).
pub const PATHLOSS_AT_1M_DB: f64 = 47.86;

/// Linear (not dB) SINR, finite and `>= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SinrSample(f64);

impl SinrSample {
    pub fn new(linear: f64) -> Result<Self> {
        if linear.is_finite() && linear >= 0.0 {
            Ok(Self(linear))
        } else {
            Err(Error::InvalidArgument(format!("SINR must be finite and >= 0, got {linear}")))
        }
    }

    pub fn linear(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        10.0 * self.0.log10()
    }
}

/// `bandwidth * log2(1 + sinr)` in bits/s.
pub fn rate_from_sinr(sinr_linear: f64, bandwidth_hz: f64) -> Result<f64> {
    if !(sinr_linear.is_finite() && sinr_linear >= 0.0) {
        return Err(Error::InvalidArgument(format!("SINR must be finite and >= 0, got {sinr_linear}")));
    }
    if !(bandwidth_hz.is_finite() && bandwidth_hz > 0.0) {
        return Err(Error::InvalidArgument(format!("bandwidth must be positive, got {bandwidth_hz}")));
    }
    Ok(bandwidth_hz * (1.0 + sinr_linear).log2())
}

/// SINR in dB drawn from `Normal(sinr_mean_db, sinr_std_db)`, clipped to
/// `sinr_clip_db`, returned in linear scale.
pub fn sample_sinr_iid<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> SinrSample {
    let z: f64 = rng.sample(StandardNormal);
    let [lo, hi] = config.sinr_clip_db;
    let db = (config.sinr_mean_db + config.sinr_std_db * z).clamp(lo, hi);
    SinrSample(db_to_linear(db))
}

pub fn pathloss_db(distance_m: f64, exponent: f64) -> f64 {
    PATHLOSS_AT_1M_DB + 10.0 * exponent * distance_m.max(1.0).log10()
}

/// Broadcast SINR from `tx_position_m`, measured at the farthest intended
/// receiver and clipped to `sinr_clip_db`.
///
/// Every link (the intended one and each interferer) gets its own lognormal
/// shadowing draw with standard deviation `shadowing_std_db`; all
/// transmitters use `tx_power_dbm`.
pub fn sample_sinr_distance<R: Rng + ?Sized>(
    config: &ScenarioConfig,
    tx_position_m: f64,
    rx_positions: &[f64],
    interferer_positions: &[f64],
    rng: &mut R,
) -> Result<SinrSample> {
    let on_highway = |x: f64| x.is_finite() && (0.0..=config.highway_length_m).contains(&x);
    if rx_positions.is_empty() {
        return Err(Error::InvalidArgument("no intended receiver".into()));
    }
    if !on_highway(tx_position_m) || !rx_positions.iter().all(|&x| on_highway(x)) {
        return Err(Error::InvalidArgument(format!("positions must lie in [0, {}] m", config.highway_length_m)));
    }
    let rx = rx_positions.iter().copied().fold(rx_positions[0], |far, x| {
        if (x - tx_position_m).abs() > (far - tx_position_m).abs() {
            x
        } else {
            far
        }
    });

    let mut shadowing = || -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        config.shadowing_std_db * z
    };
    let received_mw = |from: f64, shadow_db: f64| {
        db_to_linear(config.tx_power_dbm - pathloss_db((from - rx).abs(), config.pathloss_exponent) + shadow_db)
    };

    let signal = received_mw(tx_position_m, shadowing());
    let interference: f64 = interferer_positions.iter().map(|&x| received_mw(x, shadowing())).sum();
    let sinr = signal / (db_to_linear(config.noise_power_dbm) + interference);
    let (lo, hi) = config.clip_linear();
    SinrSample::new(sinr.clamp(lo, hi))
}
