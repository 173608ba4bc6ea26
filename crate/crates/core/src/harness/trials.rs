use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{shuffled_order, solve_greedy, solve_random, GreedyOrder};
use crate::matching::{
    brute_force_constrained, feasible_count, solve_constrained, solve_unconstrained, vehicle_rates, DEFAULT_ORACLE_CAP,
};
use crate::scenario::rng::{stream_rng, Stream};
use crate::scenario::{generate_instance, ScenarioConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Aggregate, Kuhn-Munkres, expand.
    Graph,
    /// Capped enumeration of every conflict-free assignment.
    Exhaustive,
    Greedy,
    Random,
    /// Kuhn-Munkres on the full grid without the subframe constraint.
    Unconstrained,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Graph, Algorithm::Exhaustive, Algorithm::Greedy, Algorithm::Random, Algorithm::Unconstrained];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Graph => "graph",
            Algorithm::Exhaustive => "exhaustive",
            Algorithm::Greedy => "greedy",
            Algorithm::Random => "random",
            Algorithm::Unconstrained => "unconstrained",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "graph" => Ok(Algorithm::Graph),
            "exhaustive" | "exhaustive-oracle" => Ok(Algorithm::Exhaustive),
            "greedy" => Ok(Algorithm::Greedy),
            "random" => Ok(Algorithm::Random),
            "unconstrained" => Ok(Algorithm::Unconstrained),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm {other:?} (expected graph, exhaustive, greedy, random or unconstrained)"
            ))),
        }
    }
}

/// Thread count for trial execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    #[default]
    Auto,
    Count(NonZeroUsize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub greedy_order: GreedyOrder,
    pub oracle_cap: u128,
    pub workers: Workers,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { greedy_order: GreedyOrder::Index, oracle_cap: DEFAULT_ORACLE_CAP, workers: Workers::Auto }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmOutcome {
    pub algorithm: Algorithm,
    /// Achieved rate of each vehicle, bits/s.
    pub rates: Vec<f64>,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial_index: u64,
    /// In the order the algorithms were requested.
    pub outcomes: Vec<AlgorithmOutcome>,
}

impl TrialResult {
    pub fn outcome(&self, algorithm: Algorithm) -> Option<&AlgorithmOutcome> {
        self.outcomes.iter().find(|o| o.algorithm == algorithm)
    }
}

/// Runs `num_trials` trials; trial `t` solves `generate_instance(config, t)`
/// with every requested algorithm. `config.seed` is the master seed.
///
/// Results come back in trial order and are identical for any worker count.
pub fn run_trials(
    config: &ScenarioConfig,
    algorithms: &[Algorithm],
    num_trials: u64,
    options: &RunOptions,
) -> Result<Vec<TrialResult>> {
    if num_trials == 0 {
        return Err(Error::InvalidArgument("num_trials must be >= 1".into()));
    }
    if algorithms.is_empty() {
        return Err(Error::InvalidArgument("no algorithms requested".into()));
    }
    config.validate()?;
    if algorithms.contains(&Algorithm::Exhaustive) {
        let count = feasible_count(config.num_vehicles, config.num_subframes, config.slots_per_subframe);
        if count > options.oracle_cap {
            return Err(Error::OracleCapExceeded { count, cap: options.oracle_cap });
        }
    }

    let run = |t: u64| run_trial(config, algorithms, t, options);
    match options.workers {
        Workers::Count(n) if n.get() == 1 => (0..num_trials).map(run).collect(),
        workers => {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Workers::Count(n) = workers {
                builder = builder.num_threads(n.get());
            }
            let pool = builder.build().map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
            pool.install(|| (0..num_trials).into_par_iter().map(run).collect())
        }
    }
}

fn run_trial(
    config: &ScenarioConfig,
    algorithms: &[Algorithm],
    trial: u64,
    options: &RunOptions,
) -> Result<TrialResult> {
    let instance = generate_instance(config, trial)?;
    let outcomes = algorithms
        .iter()
        .map(|&algorithm| {
            let (resources, total) = match algorithm {
                Algorithm::Graph => {
                    let s = solve_constrained(&instance)?;
                    (s.assignment.0, s.value)
                }
                Algorithm::Exhaustive => {
                    let s = brute_force_constrained(&instance, options.oracle_cap)?.solution;
                    (s.assignment.0, s.value)
                }
                Algorithm::Greedy => {
                    let order = match options.greedy_order {
                        GreedyOrder::Index => (0..instance.num_vehicles()).collect(),
                        GreedyOrder::Shuffled => shuffled_order(
                            instance.num_vehicles(),
                            &mut stream_rng(config.seed, trial, Stream::GreedyOrder),
                        ),
                    };
                    let s = solve_greedy(&instance, &order)?;
                    (s.assignment.0, s.value)
                }
                Algorithm::Random => {
                    let s = solve_random(&instance, &mut stream_rng(config.seed, trial, Stream::RandomBaseline))?;
                    (s.assignment.0, s.value)
                }
                Algorithm::Unconstrained => {
                    let s = solve_unconstrained(&instance)?;
                    (s.resources, s.value)
                }
            };
            Ok(AlgorithmOutcome { algorithm, rates: vehicle_rates(&instance, &resources), total })
        })
        .collect::<Result<_>>()?;
    Ok(TrialResult { trial_index: trial, outcomes })
}
