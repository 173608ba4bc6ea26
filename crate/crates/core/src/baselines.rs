//! Reference allocators: greedy first-come-first-served and uniform random.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::matching::{Assignment, ProblemInstance, Solution};
use crate::{Error, Result};

/// Order in which the greedy allocator serves vehicles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GreedyOrder {
    /// Vehicle 0 first.
    #[default]
    Index,
    /// A fresh seeded permutation per trial.
    Shuffled,
}

/// Serves vehicles in `order`; each takes its best resource among the
/// subframes nobody has taken yet, lowest resource index on ties.
pub fn solve_greedy(instance: &ProblemInstance, order: &[usize]) -> Result<Solution> {
    let (n, s, k) = (instance.num_vehicles(), instance.num_subframes(), instance.slots_per_subframe());
    if n > s {
        return Err(Error::MoreVehiclesThanSubframes { vehicles: n, subframes: s });
    }
    let mut seen = vec![false; n];
    if order.len() != n || !order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true)) {
        return Err(Error::InvalidArgument(format!("greedy order must be a permutation of 0..{n}")));
    }

    let mut taken = vec![false; s];
    let mut mapping = vec![0usize; n];
    let mut value = 0.0;
    for &vehicle in order {
        let row = instance.row(vehicle);
        let mut best: Option<(usize, f64)> = None;
        for (subframe, block) in row.chunks_exact(k).enumerate() {
            if taken[subframe] {
                continue;
            }
            for (slot, &w) in block.iter().enumerate() {
                if best.is_none_or(|(_, bw)| w > bw) {
                    best = Some((subframe * k + slot, w));
                }
            }
        }
        let (resource, w) = best.expect("a free subframe remains while vehicles <= subframes");
        taken[resource / k] = true;
        mapping[vehicle] = resource;
        value += w;
    }
    Ok(Solution { assignment: Assignment(mapping), value })
}

/// Uniform draw from the feasible set: a uniformly random injection of
/// vehicles into subframes, then a uniform subchannel for each vehicle.
pub fn solve_random<R: Rng + ?Sized>(instance: &ProblemInstance, rng: &mut R) -> Result<Solution> {
    let (n, s, k) = (instance.num_vehicles(), instance.num_subframes(), instance.slots_per_subframe());
    if n > s {
        return Err(Error::MoreVehiclesThanSubframes { vehicles: n, subframes: s });
    }
    let mut subframes: Vec<usize> = (0..s).collect();
    // partial Fisher-Yates: the first n entries are a uniform n-permutation
    let (chosen, _) = subframes.partial_shuffle(rng, n);
    let mapping: Vec<usize> = chosen.iter().map(|&alpha| alpha * k + rng.random_range(0..k)).collect();
    let value = mapping.iter().enumerate().map(|(i, &r)| instance.weight(i, r)).sum();
    Ok(Solution { assignment: Assignment(mapping), value })
}

/// Permutation used by [`GreedyOrder::Shuffled`].
pub fn shuffled_order<R: Rng + ?Sized>(num_vehicles: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..num_vehicles).collect();
    order.shuffle(rng);
    order
}
