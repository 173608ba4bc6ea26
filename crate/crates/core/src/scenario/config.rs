use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// How per-resource SINR values are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SinrModel {
    /// Independent lognormal SINR for every (vehicle, resource) pair.
    IidLognormal,
    /// Vehicles on a highway segment; path loss, lognormal shadowing and
    /// co-channel interferers from neighbouring clusters.
    DistanceInterference,
}

/// Parameters that generate problem instances.
///
/// Defaults: a 10 MHz carrier cut into 1.26 MHz subchannels gives
/// `K = 7` subchannels per subframe; a 10 Hz message rate gives 100
/// subframes per scheduling period; 5 of the 7 RBs of a subchannel carry
/// data, so the rate bandwidth is `5 * 180 kHz = 900 kHz`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub num_vehicles: usize,
    pub num_subframes: usize,
    pub slots_per_subframe: usize,
    pub data_bandwidth_hz: f64,
    pub sinr_model: SinrModel,
    pub sinr_mean_db: f64,
    pub sinr_std_db: f64,
    /// `[low, high]` in dB.
    pub sinr_clip_db: [f64; 2],
    pub highway_length_m: f64,
    pub pathloss_exponent: f64,
    /// Distance model: receivers closer than this are intended receivers.
    pub comm_range_m: f64,
    /// Distance model: offset of the co-channel cluster on either side.
    pub reuse_distance_m: f64,
    pub tx_power_dbm: f64,
    pub noise_power_dbm: f64,
    pub shadowing_std_db: f64,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            num_vehicles: 100,
            num_subframes: 100,
            slots_per_subframe: 7,
            data_bandwidth_hz: 900_000.0,
            sinr_model: SinrModel::IidLognormal,
            sinr_mean_db: 17.0,
            sinr_std_db: 6.0,
            sinr_clip_db: [0.0, 30.0],
            highway_length_m: 2000.0,
            pathloss_exponent: 2.75,
            comm_range_m: 200.0,
            reuse_distance_m: 2000.0,
            tx_power_dbm: 23.0,
            // thermal noise over 900 kHz plus a 9 dB noise figure
            noise_power_dbm: -105.5,
            shadowing_std_db: 3.0,
            seed: 1,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.num_vehicles == 0 || self.num_subframes == 0 || self.slots_per_subframe == 0 {
            return bad("num_vehicles, num_subframes and slots_per_subframe must be >= 1".into());
        }
        if self.num_vehicles > self.num_subframes {
            return bad(format!("num_vehicles ({}) exceeds num_subframes ({})", self.num_vehicles, self.num_subframes));
        }
        if !(self.data_bandwidth_hz.is_finite() && self.data_bandwidth_hz > 0.0) {
            return bad(format!("data_bandwidth_hz must be positive, got {}", self.data_bandwidth_hz));
        }
        let [lo, hi] = self.sinr_clip_db;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return bad(format!("sinr_clip_db must be a finite range [low, high], got [{lo}, {hi}]"));
        }
        if !self.sinr_mean_db.is_finite() {
            return bad("sinr_mean_db must be finite".into());
        }
        for (name, v) in [("sinr_std_db", self.sinr_std_db), ("shadowing_std_db", self.shadowing_std_db)] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be >= 0, got {v}"));
            }
        }
        for (name, v) in [
            ("highway_length_m", self.highway_length_m),
            ("pathloss_exponent", self.pathloss_exponent),
            ("comm_range_m", self.comm_range_m),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        for (name, v) in [
            ("reuse_distance_m", self.reuse_distance_m),
            ("tx_power_dbm", self.tx_power_dbm),
            ("noise_power_dbm", self.noise_power_dbm),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        Ok(())
    }

    /// Linear clip bounds.
    pub(crate) fn clip_linear(&self) -> (f64, f64) {
        let [lo, hi] = self.sinr_clip_db;
        (db_to_linear(lo), db_to_linear(hi))
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = ScenarioConfig::default();
        c.validate().unwrap();
        assert_eq!(c.num_subframes * c.slots_per_subframe, 700);
        // floor(10 MHz / 1.26 MHz) subchannels, 5 data RBs of 180 kHz
        assert_eq!(c.slots_per_subframe, (10.0e6f64 / 1.26e6).floor() as usize);
        assert_eq!(c.data_bandwidth_hz, 5.0 * 180e3);
    }

    #[test]
    fn rejects_invalid() {
        let base = ScenarioConfig::default();
        let cases = [
            ScenarioConfig { num_vehicles: 0, ..base.clone() },
            ScenarioConfig { num_vehicles: 101, ..base.clone() },
            ScenarioConfig { data_bandwidth_hz: 0.0, ..base.clone() },
            ScenarioConfig { sinr_clip_db: [10.0, 0.0], ..base.clone() },
            ScenarioConfig { sinr_std_db: -1.0, ..base.clone() },
            ScenarioConfig { highway_length_m: f64::NAN, ..base.clone() },
        ];
        for c in cases {
            assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))), "{c:?}");
        }
    }

    #[test]
    fn parses_kebab_case_model_and_rejects_unknown_keys() {
        let c: ScenarioConfig = toml::from_str("sinr_model = \"distance-interference\"\nnum_vehicles = 5").unwrap();
        assert_eq!(c.sinr_model, SinrModel::DistanceInterference);
        assert_eq!(c.num_vehicles, 5);
        assert_eq!(c.num_subframes, 100);
        assert!(toml::from_str::<ScenarioConfig>("num_vehicle = 5").is_err());
    }
}
