//! Property suites over small random instances: the solver against the
//! exhaustive oracle, the smooth-max bound, feasibility of every allocator
//! and the value ordering between them.

use std::fmt::Write;

use rand::Rng;

use crate::baselines::{solve_greedy, solve_random};
use crate::matching::{
    aggregate_max, brute_force_constrained, check_feasible, expand, objective, smooth_aggregate, solve_assignment,
    solve_constrained, solve_unconstrained, MacroAssignment, ProblemInstance, SmoothMaxConfig, Solution,
    DEFAULT_ORACLE_CAP, VALUE_TOLERANCE,
};
use crate::scenario::rng::{stream_rng, Stream};
use crate::Result;

pub const BETAS: [f64; 4] = [1.0, 10.0, 100.0, 1e4];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfTestOptions {
    pub instances: usize,
    pub seed: u64,
    /// Negates the best aggregated weight of vehicle 0 before matching, so
    /// the suite must catch a broken solver.
    pub inject_fault: bool,
}

impl Default for SelfTestOptions {
    fn default() -> Self {
        Self { instances: 1000, seed: 0, inject_fault: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// First failing instance and what went wrong.
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Random instance with `N in [1,6]`, `S in [N,6]`, `K in [1,3]` and
/// weights uniform on `[0, 10)`.
pub fn random_small_instance<R: Rng + ?Sized>(rng: &mut R) -> ProblemInstance {
    let n = rng.random_range(1..=6);
    let s = rng.random_range(n..=6);
    let k = rng.random_range(1..=3);
    let weights = (0..n * s * k).map(|_| rng.random_range(0.0..10.0)).collect();
    ProblemInstance::from_flat(n, s, k, weights).expect("valid by construction")
}

fn solve_under_test(instance: &ProblemInstance, inject_fault: bool) -> Result<Solution> {
    if !inject_fault {
        return solve_constrained(instance);
    }
    let agg = aggregate_max(instance);
    let mut d = agg.d.clone();
    let row0 = &mut d.as_mut_slice()[..instance.num_subframes()];
    if let Some(best) = row0.iter_mut().max_by(|a, b| a.total_cmp(b)) {
        *best = -*best;
    }
    let matched = solve_assignment(&d)?;
    let assignment = expand(&MacroAssignment(matched.columns), &agg)?;
    let value = objective(instance, &assignment)?;
    Ok(Solution { assignment, value })
}

struct Suite {
    name: &'static str,
    passed: usize,
    total: usize,
    counterexample: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, passed: 0, total: 0, counterexample: None }
    }

    fn record(&mut self, instance: &ProblemInstance, index: usize, failure: Option<String>) {
        self.total += 1;
        match failure {
            None => self.passed += 1,
            Some(why) if self.counterexample.is_none() => {
                self.counterexample = Some(format!("instance #{index}: {why}\n{instance}"));
            }
            Some(_) => {}
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name, passed: self.passed, total: self.total, counterexample: self.counterexample }
    }
}

pub fn run_selftest(options: &SelfTestOptions) -> Vec<SuiteResult> {
    let mut oracle = Suite::new("oracle equivalence");
    let mut bound = Suite::new("smooth-max bound");
    let mut feasible = Suite::new("feasibility");
    let mut dominance = Suite::new("dominance chain");

    for index in 0..options.instances {
        let mut rng = stream_rng(options.seed, index as u64, Stream::SelfTest);
        let instance = random_small_instance(&mut rng);

        let graph = solve_under_test(&instance, options.inject_fault);
        let exact = brute_force_constrained(&instance, DEFAULT_ORACLE_CAP);
        oracle.record(
            &instance,
            index,
            match (&graph, &exact) {
                (Ok(g), Ok(o)) if (g.value - o.solution.value).abs() <= VALUE_TOLERANCE => None,
                (Ok(g), Ok(o)) => Some(format!("graph value {} != oracle value {}", g.value, o.solution.value)),
                (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
            },
        );

        let agg = aggregate_max(&instance);
        let ln_k = (instance.slots_per_subframe() as f64).ln();
        let bound_failure = BETAS.iter().find_map(|&beta| {
            let smooth = smooth_aggregate(&instance, SmoothMaxConfig::new(beta).expect("positive beta"));
            smooth.as_slice().iter().zip(agg.d.as_slice()).find_map(|(&s, &m)| {
                let gap = s - m;
                (!(0.0..=ln_k / beta).contains(&gap))
                    .then(|| format!("beta {beta}: gap {gap} outside [0, {}]", ln_k / beta))
            })
        });
        bound.record(&instance, index, bound_failure);

        let order: Vec<usize> = (0..instance.num_vehicles()).collect();
        let greedy = solve_greedy(&instance, &order);
        let random = solve_random(&instance, &mut rng);
        let unconstrained = solve_unconstrained(&instance);

        let feasibility_failure = [("graph", &graph), ("greedy", &greedy), ("random", &random)].into_iter().find_map(
            |(name, sol)| match sol {
                Ok(s) => {
                    check_feasible(&instance, &s.assignment).first().map(|v| format!("{name} output infeasible: {v}"))
                }
                Err(e) => Some(format!("{name} failed: {e}")),
            },
        );
        feasible.record(&instance, index, feasibility_failure);

        let dominance_failure = match (&graph, &greedy, &random, &unconstrained) {
            (Ok(g), Ok(gr), Ok(r), Ok(u)) => {
                let tol = VALUE_TOLERANCE;
                if u.value + tol < g.value {
                    Some(format!("unconstrained {} < graph {}", u.value, g.value))
                } else if g.value + tol < gr.value {
                    Some(format!("graph {} < greedy {}", g.value, gr.value))
                } else if g.value + tol < r.value {
                    Some(format!("graph {} < random {}", g.value, r.value))
                } else {
                    None
                }
            }
            _ => Some("a solver failed".into()),
        };
        dominance.record(&instance, index, dominance_failure);
    }

    vec![oracle.finish(), bound.finish(), feasible.finish(), dominance.finish()]
}

/// Human-readable report; one line per suite plus counterexamples.
pub fn render_report(results: &[SuiteResult]) -> String {
    let mut out = String::new();
    for r in results {
        writeln!(out, "{}: {}/{}", r.name, r.passed, r.total).unwrap();
    }
    for r in results {
        if let Some(c) = &r.counterexample {
            writeln!(out, "FAIL {}: {c}", r.name).unwrap();
        }
    }
    out
}
