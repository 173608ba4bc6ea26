//! Constrained weighted bipartite matching of vehicles to resources.

mod aggregate;
mod instance;
mod kuhn_munkres;
mod matrix;
mod oracle;
mod solve;

pub use aggregate::{aggregate_max, smooth_aggregate, smooth_max, AggregatedWeights, SmoothMaxConfig};
pub use instance::{Assignment, MacroAssignment, ProblemInstance};
pub use kuhn_munkres::{solve_assignment, AssignmentSolution};
pub use matrix::WeightMatrix;
pub use oracle::{brute_force_constrained, feasible_count, OracleSolution, DEFAULT_ORACLE_CAP};
pub use solve::{
    check_feasible, expand, is_feasible, objective, solve_constrained, solve_unconstrained, vehicle_rates, Solution,
    UnconstrainedSolution, Violation,
};

/// Absolute tolerance for comparing rate sums.
pub const VALUE_TOLERANCE: f64 = 1e-9;
