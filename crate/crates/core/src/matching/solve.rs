//! The constrained solver pipeline and the primitives it is checked against.

use std::fmt;

use super::{aggregate_max, solve_assignment, AggregatedWeights, Assignment, MacroAssignment, ProblemInstance};
use crate::{Error, Result};

/// A feasible allocation and its total rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub assignment: Assignment,
    pub value: f64,
}

/// Injective vehicle-to-resource matching that ignores subframe conflicts.
#[derive(Debug, Clone, PartialEq)]
pub struct UnconstrainedSolution {
    pub resources: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongLength { expected: usize, actual: usize },
    OutOfRange { vehicle: usize, resource: usize },
    DuplicateResource { resource: usize, first: usize, second: usize },
    SubframeConflict { subframe: usize, first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { expected, actual } => {
                write!(f, "wrong length: {actual} entries for {expected} vehicles")
            }
            Violation::OutOfRange { vehicle, resource } => {
                write!(f, "out-of-range index: vehicle {vehicle} -> resource {resource}")
            }
            Violation::DuplicateResource { resource, first, second } => {
                write!(f, "duplicate resource: {resource} used by vehicles {first} and {second}")
            }
            Violation::SubframeConflict { subframe, first, second } => {
                write!(f, "subframe conflict: vehicles {first} and {second} both in subframe {subframe}")
            }
        }
    }
}

/// Every violation of the assignment invariants. Empty means feasible.
pub fn check_feasible(instance: &ProblemInstance, assignment: &Assignment) -> Vec<Violation> {
    let mut violations = Vec::new();
    let n = instance.num_vehicles();
    if assignment.len() != n {
        violations.push(Violation::WrongLength { expected: n, actual: assignment.len() });
    }
    let mut resource_owner = vec![None; instance.num_resources()];
    let mut subframe_owner = vec![None; instance.num_subframes()];
    for (vehicle, &resource) in assignment.resources().iter().enumerate() {
        if resource >= instance.num_resources() {
            violations.push(Violation::OutOfRange { vehicle, resource });
            continue;
        }
        match resource_owner[resource] {
            Some(first) => violations.push(Violation::DuplicateResource { resource, first, second: vehicle }),
            None => resource_owner[resource] = Some(vehicle),
        }
        let subframe = instance.subframe_of(resource);
        match subframe_owner[subframe] {
            Some(first) => violations.push(Violation::SubframeConflict { subframe, first, second: vehicle }),
            None => subframe_owner[subframe] = Some(vehicle),
        }
    }
    violations
}

pub fn is_feasible(instance: &ProblemInstance, assignment: &Assignment) -> bool {
    check_feasible(instance, assignment).is_empty()
}

/// Per-vehicle rates of a resource mapping. No feasibility check.
pub fn vehicle_rates(instance: &ProblemInstance, resources: &[usize]) -> Vec<f64> {
    resources.iter().enumerate().map(|(i, &r)| instance.weight(i, r)).collect()
}

/// Total rate of a feasible assignment.
pub fn objective(instance: &ProblemInstance, assignment: &Assignment) -> Result<f64> {
    let violations = check_feasible(instance, assignment);
    if let Some(first) = violations.first() {
        return Err(Error::InfeasibleAssignment(first.to_string()));
    }
    Ok(vehicle_rates(instance, assignment.resources()).iter().sum())
}

/// Maps each vehicle's subframe to the best subchannel inside it.
pub fn expand(macro_assignment: &MacroAssignment, agg: &AggregatedWeights) -> Result<Assignment> {
    let subframes = macro_assignment.subframes();
    if subframes.len() != agg.num_vehicles() {
        return Err(Error::DimensionMismatch(format!(
            "macro assignment covers {} vehicles, aggregate has {}",
            subframes.len(),
            agg.num_vehicles()
        )));
    }
    let mut seen = vec![false; agg.num_subframes()];
    let k = agg.slots_per_subframe();
    subframes
        .iter()
        .enumerate()
        .map(|(i, &alpha)| {
            if alpha >= agg.num_subframes() {
                return Err(Error::DimensionMismatch(format!(
                    "vehicle {i} mapped to subframe {alpha}, only {} exist",
                    agg.num_subframes()
                )));
            }
            if std::mem::replace(&mut seen[alpha], true) {
                return Err(Error::InfeasibleAssignment(format!("subframe {alpha} assigned twice")));
            }
            Ok(alpha * k + agg.argmax_slot(i, alpha))
        })
        .collect::<Result<Vec<_>>>()
        .map(Assignment)
}

/// Optimal conflict-free allocation: aggregate each subframe to its best
/// subchannel, match vehicles to subframes, then expand.
pub fn solve_constrained(instance: &ProblemInstance) -> Result<Solution> {
    let (n, s) = (instance.num_vehicles(), instance.num_subframes());
    if n > s {
        return Err(Error::MoreVehiclesThanSubframes { vehicles: n, subframes: s });
    }
    let agg = aggregate_max(instance);
    let matched = solve_assignment(&agg.d)?;
    let macro_assignment = MacroAssignment(matched.columns);
    let assignment = expand(&macro_assignment, &agg)?;
    Ok(Solution { assignment, value: matched.value })
}

/// Optimal allocation when vehicles may share a subframe (each resource is
/// still used at most once). Upper bound for [`solve_constrained`].
pub fn solve_unconstrained(instance: &ProblemInstance) -> Result<UnconstrainedSolution> {
    let n = instance.num_vehicles();
    if n > instance.num_resources() {
        return Err(Error::MoreRowsThanColumns { rows: n, cols: instance.num_resources() });
    }
    let weights = super::WeightMatrix::new(
        n,
        instance.num_resources(),
        instance.rows().flat_map(|r| r.iter().copied()).collect(),
    )?;
    let matched = solve_assignment(&weights)?;
    Ok(UnconstrainedSolution { resources: matched.columns, value: matched.value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ProblemInstance {
        ProblemInstance::new(2, 2, vec![vec![5.0, 1.0, 2.0, 9.0], vec![3.0, 3.0, 4.0, 0.0]]).unwrap()
    }

    #[test]
    fn expand_example() {
        let agg = aggregate_max(&example());
        let a = expand(&MacroAssignment(vec![1, 0]), &agg).unwrap();
        assert_eq!(a, Assignment(vec![3, 0]));
    }

    #[test]
    fn expand_k1_is_verbatim() {
        let inst = ProblemInstance::new(3, 1, vec![vec![1.0, 2.0, 3.0], vec![3.0, 2.0, 1.0]]).unwrap();
        let agg = aggregate_max(&inst);
        assert_eq!(expand(&MacroAssignment(vec![2, 0]), &agg).unwrap(), Assignment(vec![2, 0]));
    }

    #[test]
    fn expand_single_vehicle_single_subframe() {
        let inst = ProblemInstance::new(1, 3, vec![vec![1.0, 6.0, 3.0]]).unwrap();
        let agg = aggregate_max(&inst);
        assert_eq!(expand(&MacroAssignment(vec![0]), &agg).unwrap(), Assignment(vec![1]));
    }

    #[test]
    fn expand_rejects_bad_macro() {
        let agg = aggregate_max(&example());
        assert!(matches!(expand(&MacroAssignment(vec![0]), &agg), Err(Error::DimensionMismatch(_))));
        assert!(matches!(expand(&MacroAssignment(vec![0, 2]), &agg), Err(Error::DimensionMismatch(_))));
        assert!(matches!(expand(&MacroAssignment(vec![1, 1]), &agg), Err(Error::InfeasibleAssignment(_))));
    }

    #[test]
    fn constrained_examples() {
        let sol = solve_constrained(&example()).unwrap();
        assert_eq!(sol.assignment, Assignment(vec![3, 0]));
        assert_eq!(sol.value, 12.0);
        assert_eq!(objective(&example(), &sol.assignment).unwrap(), 12.0);

        let single = ProblemInstance::new(1, 1, vec![vec![7.0]]).unwrap();
        let sol = solve_constrained(&single).unwrap();
        assert_eq!(sol.assignment, Assignment(vec![0]));
        assert_eq!(sol.value, 7.0);

        // feasible values: v0 in sf0 (9 or 1) + v1 in sf1 (0) or v0 in sf1 (0) + v1 in sf0 (8) -> max 9
        let inst = ProblemInstance::new(2, 2, vec![vec![9.0, 1.0, 0.0, 0.0], vec![2.0, 8.0, 0.0, 0.0]]).unwrap();
        let sol = solve_constrained(&inst).unwrap();
        assert_eq!(sol.value, 9.0);
        assert_eq!(sol.assignment.resources()[0], 0);
        assert_eq!(inst.subframe_of(sol.assignment.resources()[1]), 1);
    }

    #[test]
    fn constrained_infeasible() {
        let inst = ProblemInstance::new(1, 2, vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(solve_constrained(&inst), Err(Error::MoreVehiclesThanSubframes { vehicles: 2, subframes: 1 }));
    }

    #[test]
    fn unconstrained_examples() {
        let inst = ProblemInstance::new(2, 2, vec![vec![9.0, 1.0, 0.0, 0.0], vec![2.0, 8.0, 0.0, 0.0]]).unwrap();
        let sol = solve_unconstrained(&inst).unwrap();
        assert_eq!(sol.resources, vec![0, 1]);
        assert_eq!(sol.value, 17.0);

        let single = ProblemInstance::new(1, 1, vec![vec![7.0]]).unwrap();
        assert_eq!(solve_unconstrained(&single).unwrap().value, 7.0);

        let too_many = ProblemInstance::new(1, 1, vec![vec![1.0], vec![2.0]]).unwrap();
        assert!(solve_unconstrained(&too_many).is_err());
    }

    #[test]
    fn unconstrained_equals_constrained_when_k_is_one() {
        let inst = ProblemInstance::new(3, 1, vec![vec![1.0, 5.0, 3.0], vec![4.0, 6.0, 0.0]]).unwrap();
        let c = solve_constrained(&inst).unwrap();
        let u = solve_unconstrained(&inst).unwrap();
        assert_eq!(c.assignment.resources(), &u.resources[..]);
        assert_eq!(c.value, u.value);
    }

    #[test]
    fn objective_examples() {
        assert_eq!(objective(&example(), &Assignment(vec![3, 0])).unwrap(), 12.0);
        let zeros = ProblemInstance::new(2, 2, vec![vec![0.0; 4]; 2]).unwrap();
        assert_eq!(objective(&zeros, &Assignment(vec![1, 2])).unwrap(), 0.0);
        let single = ProblemInstance::new(1, 1, vec![vec![7.0]]).unwrap();
        assert_eq!(objective(&single, &Assignment(vec![0])).unwrap(), 7.0);
        assert!(matches!(objective(&example(), &Assignment(vec![0, 1])), Err(Error::InfeasibleAssignment(_))));
    }

    #[test]
    fn feasibility_reports() {
        let inst = example();
        assert!(check_feasible(&inst, &Assignment(vec![3, 0])).is_empty());
        assert_eq!(
            check_feasible(&inst, &Assignment(vec![0, 1])),
            vec![Violation::SubframeConflict { subframe: 0, first: 0, second: 1 }]
        );
        assert_eq!(
            check_feasible(&inst, &Assignment(vec![0, 0])),
            vec![
                Violation::DuplicateResource { resource: 0, first: 0, second: 1 },
                Violation::SubframeConflict { subframe: 0, first: 0, second: 1 },
            ]
        );
        assert_eq!(
            check_feasible(&inst, &Assignment(vec![4, 0])),
            vec![Violation::OutOfRange { vehicle: 0, resource: 4 }]
        );
        assert_eq!(
            check_feasible(&inst, &Assignment(vec![0])),
            vec![Violation::WrongLength { expected: 2, actual: 1 }]
        );
    }

    #[test]
    fn violation_messages_name_the_class() {
        let v = Violation::SubframeConflict { subframe: 0, first: 0, second: 1 };
        assert!(v.to_string().starts_with("subframe conflict"));
        let v = Violation::DuplicateResource { resource: 0, first: 0, second: 1 };
        assert!(v.to_string().starts_with("duplicate resource"));
    }
}
