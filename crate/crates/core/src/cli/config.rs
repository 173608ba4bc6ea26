//! Run configuration: a TOML file, then command-line overrides.
//!
//! ```toml
//! trials = 1000
//! algorithms = ["graph", "greedy", "random", "unconstrained"]
//! out_dir = "out"
//! workers = "auto"          # or a thread count
//! oracle_cap = 10000000
//! greedy_order = "index"    # or "shuffled"
//! vehicle_counts = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100]
//! # beta = 100.0            # enables the smooth-max audit
//!
//! [scenario]
//! num_vehicles = 100
//! num_subframes = 100
//! slots_per_subframe = 7
//! sinr_model = "iid-lognormal"
//! seed = 1
//! ```
//!
//! Unknown keys anywhere in the file are errors.

use std::num::NonZeroUsize;
use std::path::PathBuf;

use serde::{Deserialize, Deserializer};

use crate::baselines::GreedyOrder;
use crate::harness::{Algorithm, RunOptions, Workers};
use crate::matching::DEFAULT_ORACLE_CAP;
use crate::scenario::ScenarioConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub trials: u64,
    #[serde(deserialize_with = "algorithms_from_names")]
    pub algorithms: Vec<Algorithm>,
    pub out_dir: PathBuf,
    #[serde(deserialize_with = "workers_from_toml")]
    pub workers: Workers,
    pub beta: Option<f64>,
    pub oracle_cap: u64,
    pub greedy_order: GreedyOrder,
    pub vehicle_counts: Vec<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: ScenarioConfig::default(),
            trials: 1000,
            algorithms: default_algorithms(),
            out_dir: PathBuf::from("out"),
            workers: Workers::Auto,
            beta: None,
            oracle_cap: DEFAULT_ORACLE_CAP as u64,
            greedy_order: GreedyOrder::Index,
            vehicle_counts: (1..=10).map(|i| i * 10).collect(),
        }
    }
}

pub fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::Graph, Algorithm::Greedy, Algorithm::Random, Algorithm::Unconstrained]
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("algorithms must not be empty".into()));
        }
        if let Some(beta) = self.beta {
            if !(beta.is_finite() && beta > 0.0) {
                return Err(Error::InvalidConfig(format!("beta must be positive, got {beta}")));
            }
        }
        if self.vehicle_counts.is_empty() {
            return Err(Error::InvalidConfig("vehicle_counts must not be empty".into()));
        }
        Ok(())
    }

    pub fn run_options(&self) -> RunOptions {
        RunOptions { greedy_order: self.greedy_order, oracle_cap: u128::from(self.oracle_cap), workers: self.workers }
    }
}

pub fn parse_algorithms(list: &str) -> Result<Vec<Algorithm>> {
    let mut out: Vec<Algorithm> = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let a: Algorithm = name.parse()?;
        if !out.contains(&a) {
            out.push(a);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidConfig("algorithm list is empty".into()));
    }
    Ok(out)
}

pub fn parse_workers(text: &str) -> Result<Workers> {
    if text.trim() == "auto" {
        return Ok(Workers::Auto);
    }
    text.trim()
        .parse::<NonZeroUsize>()
        .map(Workers::Count)
        .map_err(|_| Error::InvalidConfig(format!("workers must be \"auto\" or a positive count, got {text:?}")))
}

fn algorithms_from_names<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Vec<Algorithm>, D::Error> {
    let names = Vec::<String>::deserialize(de)?;
    parse_algorithms(&names.join(",")).map_err(serde::de::Error::custom)
}

fn workers_from_toml<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Workers, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Count(u64),
        Name(String),
    }
    match Repr::deserialize(de)? {
        Repr::Count(n) => parse_workers(&n.to_string()),
        Repr::Name(s) => parse_workers(&s),
    }
    .map_err(serde::de::Error::custom)
}
