//! Exhaustive search over every conflict-free assignment.
//!
//! Works directly on the resource grid, never on aggregated weights, so it
//! is an independent check of the aggregate-then-match pipeline.

use super::{Assignment, ProblemInstance, Solution};
use crate::{Error, Result};

pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

/// Number of conflict-free assignments: `S!/(S-N)! * K^N`, saturating.
/// Zero when `N > S`.
pub fn feasible_count(num_vehicles: usize, num_subframes: usize, slots_per_subframe: usize) -> u128 {
    if num_vehicles > num_subframes {
        return 0;
    }
    let mut count: u128 = 1;
    for i in 0..num_vehicles {
        count = count.saturating_mul((num_subframes - i) as u128).saturating_mul(slots_per_subframe as u128);
    }
    count
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub solution: Solution,
    /// Number of complete assignments evaluated.
    pub evaluated: u128,
}

/// Maximises the total rate by enumeration. Assignments are visited in
/// lexicographic order and only a strictly better value replaces the
/// incumbent, so ties resolve to the lexicographically smallest mapping.
pub fn brute_force_constrained(instance: &ProblemInstance, cap: u128) -> Result<OracleSolution> {
    let (n, s, k) = (instance.num_vehicles(), instance.num_subframes(), instance.slots_per_subframe());
    if n > s {
        return Err(Error::MoreVehiclesThanSubframes { vehicles: n, subframes: s });
    }
    let count = feasible_count(n, s, k);
    if count > cap {
        return Err(Error::OracleCapExceeded { count, cap });
    }

    let mut search =
        Search { instance, used_subframe: vec![false; s], current: Vec::with_capacity(n), best: None, evaluated: 0 };
    search.descend(0.0);
    let (best, value) = search.best.expect("N <= S leaves at least one assignment");
    Ok(OracleSolution { solution: Solution { assignment: Assignment(best), value }, evaluated: search.evaluated })
}

struct Search<'a> {
    instance: &'a ProblemInstance,
    used_subframe: Vec<bool>,
    current: Vec<usize>,
    best: Option<(Vec<usize>, f64)>,
    evaluated: u128,
}

impl Search<'_> {
    fn descend(&mut self, partial: f64) {
        let vehicle = self.current.len();
        if vehicle == self.instance.num_vehicles() {
            self.evaluated += 1;
            if self.best.as_ref().is_none_or(|(_, v)| partial > *v) {
                self.best = Some((self.current.clone(), partial));
            }
            return;
        }
        for resource in 0..self.instance.num_resources() {
            let subframe = self.instance.subframe_of(resource);
            if self.used_subframe[subframe] {
                continue;
            }
            self.used_subframe[subframe] = true;
            self.current.push(resource);
            self.descend(partial + self.instance.weight(vehicle, resource));
            self.current.pop();
            self.used_subframe[subframe] = false;
        }
    }
}
