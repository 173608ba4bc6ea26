//! Acceptance criteria, run sequentially so the timing checks are not
//! disturbed by other tests. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::num::NonZeroUsize;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use sidelink_alloc::baselines::solve_random;
use sidelink_alloc::cli::selftest::random_small_instance;
use sidelink_alloc::cli::{cmd_cdf, cmd_simulate, cmd_sweep, CliResult, FigureOutput, RunConfig};
use sidelink_alloc::harness::{
    bootstrap_mean_ci, default_cdf_grid, empirical_cdf, per_trial_metrics, run_trials, sweep_density, Algorithm,
    MetricsSummary, RunOptions, TrialResult, Workers,
};
use sidelink_alloc::matching::{
    aggregate_max, brute_force_constrained, smooth_aggregate, solve_constrained, Assignment, ProblemInstance,
    SmoothMaxConfig, DEFAULT_ORACLE_CAP,
};
use sidelink_alloc::scenario::rng::{stream_rng, Stream};
use sidelink_alloc::scenario::{generate_instance, ScenarioConfig};

const ORACLE_TOL: f64 = 1e-9;
const CDF_TOL: f64 = 0.02;
const CONFIDENCE: f64 = 0.95;
const BOOTSTRAP_RESAMPLES: usize = 2000;
const TRIALS: u64 = 1000;
const SEED: u64 = 2019;

type Stat = fn(&MetricsSummary) -> f64;
type FigureCommand = fn(&RunConfig) -> CliResult<FigureOutput>;

type Verdict = Result<String, String>;

fn check(cond: bool, ok: String, fail: String) -> Verdict {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

/// Criterion 1: graph value equals the exhaustive optimum on 1000 small
/// instances, within 10 s.
fn oracle_equivalence() -> Verdict {
    let started = Instant::now();
    let mut matched = 0;
    let mut first_bad = None;
    for i in 0..1000u64 {
        let mut rng = stream_rng(SEED, i, Stream::SelfTest);
        let inst = random_small_instance(&mut rng);
        let graph = solve_constrained(&inst).map_err(|e| e.to_string())?.value;
        let exact = brute_force_constrained(&inst, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?.solution.value;
        if (graph - exact).abs() <= ORACLE_TOL {
            matched += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("instance {i}: graph {graph} vs oracle {exact}\n{inst}"));
        }
    }
    let elapsed = started.elapsed();
    check(
        matched == 1000 && elapsed < Duration::from_secs(10),
        format!("1000/1000 equal within {ORACLE_TOL:e}, {elapsed:.2?}"),
        format!("{matched}/1000 equal, {elapsed:.2?}; {}", first_bad.unwrap_or_default()),
    )
}

/// Criterion 2: 0 <= smooth - hard <= ln(K)/beta on 1000 random blocks.
fn smooth_max_bound() -> Verdict {
    let betas = [1.0, 10.0, 100.0, 1e4];
    let mut rng = stream_rng(SEED, 0, Stream::SelfTest);
    let mut checked = 0;
    for b in 0..1000 {
        let k = rng.random_range(1..=7);
        let block: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..10.0)).collect();
        let inst = ProblemInstance::new(1, k, vec![block.clone()]).unwrap();
        let hard = aggregate_max(&inst).value(0, 0);
        for beta in betas {
            let smooth = smooth_aggregate(&inst, SmoothMaxConfig::new(beta).unwrap()).get(0, 0);
            let gap = smooth - hard;
            let bound = (k as f64).ln() / beta;
            if !(gap >= 0.0 && gap <= bound) {
                return Err(format!("block {b} {block:?}, beta {beta}: gap {gap:e} outside [0, {bound:e}]"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (block, beta) pairs within [0, ln K / beta]"))
}

fn default_run() -> Vec<TrialResult> {
    let config = ScenarioConfig { seed: SEED, ..ScenarioConfig::default() };
    let algorithms = [Algorithm::Graph, Algorithm::Greedy, Algorithm::Random, Algorithm::Unconstrained];
    run_trials(&config, &algorithms, TRIALS, &RunOptions::default()).expect("default-scale trials run")
}

fn total(t: &TrialResult, a: Algorithm) -> f64 {
    t.outcome(a).expect("algorithm present").total
}

/// Sums of ~100 rates near 1e7 bits/s: compare with a relative slack of a
/// few ulps on top of the absolute tolerance.
fn at_least(a: f64, b: f64) -> bool {
    a + ORACLE_TOL + 1e-12 * a.abs().max(b.abs()) >= b
}

/// Criterion 3: unconstrained >= graph >= greedy and graph >= random on
/// every default-scale trial.
fn dominance_chain(results: &[TrialResult]) -> Verdict {
    let violations: Vec<u64> = results
        .iter()
        .filter(|t| {
            let (u, g) = (total(t, Algorithm::Unconstrained), total(t, Algorithm::Graph));
            let (gr, r) = (total(t, Algorithm::Greedy), total(t, Algorithm::Random));
            !(at_least(u, g) && at_least(g, gr) && at_least(g, r))
        })
        .map(|t| t.trial_index)
        .collect();
    check(
        violations.is_empty() && results.len() == TRIALS as usize,
        format!("{} trials, 0 violations", results.len()),
        format!("violations on trials {violations:?}"),
    )
}

fn ci(samples: &[f64]) -> (f64, f64) {
    bootstrap_mean_ci(samples, BOOTSTRAP_RESAMPLES, CONFIDENCE, SEED).expect("non-empty samples")
}

/// Criterion 4: graph > greedy > random on mean and worst rate, with
/// disjoint 95% bootstrap intervals.
fn fig4_shape(results: &[TrialResult]) -> Verdict {
    let mut notes = Vec::new();
    let stats: [(&str, Stat); 2] = [("mean", |m| m.mean), ("worst", |m| m.worst)];
    for (label, pick) in stats {
        let intervals: Vec<(Algorithm, (f64, f64))> = [Algorithm::Graph, Algorithm::Greedy, Algorithm::Random]
            .into_iter()
            .map(|a| {
                let samples: Vec<f64> = per_trial_metrics(results, a).unwrap().iter().map(pick).collect();
                (a, ci(&samples))
            })
            .collect();
        for w in intervals.windows(2) {
            let ((hi_alg, (hi_lo, hi_hi)), (lo_alg, (lo_lo, lo_hi))) = (w[0], w[1]);
            if hi_lo <= lo_hi {
                return Err(format!(
                    "{label}: {hi_alg} CI [{:.4}, {:.4}] overlaps {lo_alg} CI [{:.4}, {:.4}] Mbit/s",
                    hi_lo / 1e6,
                    hi_hi / 1e6,
                    lo_lo / 1e6,
                    lo_hi / 1e6
                ));
            }
        }
        let shown: Vec<String> =
            intervals.iter().map(|(a, (lo, hi))| format!("{a} [{:.3},{:.3}]", lo / 1e6, hi / 1e6)).collect();
        notes.push(format!("{label}: {}", shown.join(" > ")));
    }
    Ok(format!("{} Mbit/s", notes.join("; ")))
}

/// Criterion 5: greedy's worst-rate gap to graph grows from N=10 to N=100
/// (disjoint 95% intervals); graph worst rate never rises beyond noise.
fn fig5_shape() -> Verdict {
    let config = ScenarioConfig { seed: SEED, ..ScenarioConfig::default() };
    let counts: Vec<usize> = (1..=10).map(|i| i * 10).collect();
    let algorithms = [Algorithm::Graph, Algorithm::Greedy];
    let points =
        sweep_density(&config, &counts, &algorithms, TRIALS, &RunOptions::default()).map_err(|e| e.to_string())?;
    let find =
        |n: usize, a: Algorithm| points.iter().find(|p| p.num_vehicles == n && p.algorithm == a).expect("sweep point");
    let gap = |n: usize| -> Vec<f64> {
        let g = &find(n, Algorithm::Graph).per_trial_worst;
        let gr = &find(n, Algorithm::Greedy).per_trial_worst;
        g.iter().zip(gr).map(|(a, b)| a - b).collect()
    };
    let (gap10, gap100) = (ci(&gap(10)), ci(&gap(100)));
    if gap100.0 <= gap10.1 {
        return Err(format!(
            "gap at N=100 CI [{:.4}, {:.4}] not above gap at N=10 CI [{:.4}, {:.4}] Mbit/s",
            gap100.0 / 1e6,
            gap100.1 / 1e6,
            gap10.0 / 1e6,
            gap10.1 / 1e6
        ));
    }
    let graph_ci: Vec<(f64, f64)> = counts.iter().map(|&n| ci(&find(n, Algorithm::Graph).per_trial_worst)).collect();
    for (i, w) in graph_ci.windows(2).enumerate() {
        if w[1].0 > w[0].1 {
            return Err(format!(
                "graph worst rate rises from N={} to N={}: CI [{:.4}, {:.4}] above [{:.4}, {:.4}]",
                counts[i],
                counts[i + 1],
                w[1].0 / 1e6,
                w[1].1 / 1e6,
                w[0].0 / 1e6,
                w[0].1 / 1e6
            ));
        }
    }
    let means: Vec<String> =
        counts.iter().map(|&n| format!("{:.3}", find(n, Algorithm::Graph).mean_worst_rate / 1e6)).collect();
    Ok(format!(
        "gap N=10 [{:.4},{:.4}] < N=100 [{:.4},{:.4}] Mbit/s; graph worst {}",
        gap10.0 / 1e6,
        gap10.1 / 1e6,
        gap100.0 / 1e6,
        gap100.1 / 1e6,
        means.join(" ")
    ))
}

/// Criterion 6: CDF_unconstrained <= CDF_graph <= CDF_greedy <= CDF_random
/// pointwise within 0.02.
fn fig6_shape(results: &[TrialResult]) -> Verdict {
    let grid = default_cdf_grid();
    let bw = ScenarioConfig::default().data_bandwidth_hz;
    let chain = [Algorithm::Unconstrained, Algorithm::Graph, Algorithm::Greedy, Algorithm::Random];
    let cdfs: Vec<Vec<f64>> = chain
        .iter()
        .map(|&a| empirical_cdf(results, a, &grid, bw).map(|s| s.cdf))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut worst_excess = f64::NEG_INFINITY;
    for (pair, w) in chain.windows(2).zip(cdfs.windows(2)) {
        for (g, (lower, upper)) in grid.iter().zip(w[0].iter().zip(&w[1])) {
            let excess = lower - upper;
            worst_excess = worst_excess.max(excess);
            if excess > CDF_TOL {
                return Err(format!("CDF {} exceeds {} by {excess:.4} at {g:.3} bit/s/Hz", pair[0], pair[1]));
            }
        }
    }
    Ok(format!("largest ordering excess {worst_excess:.4} (tolerance {CDF_TOL})"))
}

/// Criterion 7: 100x700 solve median < 50 ms; 1000-trial simulate with 4
/// algorithms < 60 s.
fn performance() -> Verdict {
    let config = ScenarioConfig { seed: SEED, ..ScenarioConfig::default() };
    let mut times: Vec<Duration> = (0..21)
        .map(|t| {
            let inst = generate_instance(&config, t).unwrap();
            let started = Instant::now();
            let sol = solve_constrained(&inst).unwrap();
            let elapsed = started.elapsed();
            assert_eq!(sol.assignment.len(), 100);
            elapsed
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];

    let run = RunConfig { trials: TRIALS, scenario: config, ..RunConfig::default() };
    assert_eq!(run.algorithms.len(), 4);
    let started = Instant::now();
    let fig4 = cmd_simulate(&run).map_err(|e| e.to_string())?;
    let simulate = started.elapsed();
    assert_eq!(fig4.csv.lines().count(), 9);
    check(
        median < Duration::from_millis(50) && simulate < Duration::from_secs(60),
        format!("solve median {median:.2?}; simulate {simulate:.2?}"),
        format!("solve median {median:.2?} (limit 50 ms); simulate {simulate:.2?} (limit 60 s)"),
    )
}

/// Criterion 8: byte-identical CSVs across reruns and worker counts.
fn determinism() -> Verdict {
    let base = RunConfig {
        trials: 30,
        scenario: ScenarioConfig { seed: SEED, ..ScenarioConfig::default() },
        ..RunConfig::default()
    };
    let with_workers = |w: usize| RunConfig { workers: Workers::Count(NonZeroUsize::new(w).unwrap()), ..base.clone() };
    let commands: [(&str, FigureCommand); 3] = [("simulate", cmd_simulate), ("sweep", cmd_sweep), ("cdf", cmd_cdf)];
    for (name, command) in commands {
        let outputs: Vec<String> = [with_workers(1), with_workers(4), with_workers(4), base.clone()]
            .iter()
            .map(|cfg| command(cfg).map(|o| o.csv).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("{name}: outputs differ across reruns/worker counts"));
        }
    }
    Ok("simulate, sweep, cdf identical for workers 1, 4, 4 (rerun), auto".into())
}

/// Criterion 9: 10^5 random allocations on N=S=K=2 hit each of the 8
/// feasible assignments with frequency 1/8 +- 0.01.
fn random_uniformity() -> Verdict {
    let inst = ProblemInstance::new(2, 2, vec![vec![1.0; 4]; 2]).unwrap();
    let feasible: Vec<Assignment> = [[0, 2], [0, 3], [1, 2], [1, 3], [2, 0], [2, 1], [3, 0], [3, 1]]
        .iter()
        .map(|m| Assignment(m.to_vec()))
        .collect();
    let draws = 100_000;
    let mut counts = [0usize; 8];
    let mut rng = stream_rng(SEED, 0, Stream::RandomBaseline);
    for _ in 0..draws {
        let a = solve_random(&inst, &mut rng).unwrap().assignment;
        let idx = feasible.iter().position(|f| *f == a).ok_or_else(|| format!("infeasible draw {a:?}"))?;
        counts[idx] += 1;
    }
    let freqs: Vec<f64> = counts.iter().map(|&c| c as f64 / draws as f64).collect();
    let worst = freqs.iter().map(|f| (f - 0.125).abs()).fold(0.0, f64::max);
    check(worst <= 0.01, format!("max |freq - 1/8| = {worst:.4}"), format!("frequencies {freqs:?}"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut verdicts: Vec<(&str, Verdict)> = Vec::new();
    let mut report = |name: &'static str, v: Verdict| {
        match &v {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => println!("FAIL  {name}: {msg}"),
        }
        verdicts.push((name, v));
    };

    report("1 oracle equivalence", oracle_equivalence());
    report("2 smooth-max bound", smooth_max_bound());
    let results = default_run();
    report("3 dominance chain", dominance_chain(&results));
    report("4 fig4 shape", fig4_shape(&results));
    report("5 fig5 shape", fig5_shape());
    report("6 fig6 shape", fig6_shape(&results));
    drop(results);
    report("7 performance", performance());
    report("8 determinism", determinism());
    report("9 random uniformity", random_uniformity());

    let failed = verdicts.iter().filter(|(_, v)| v.is_err()).count();
    println!("acceptance: {}/{} criteria passed in {:.1?}", verdicts.len() - failed, verdicts.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
