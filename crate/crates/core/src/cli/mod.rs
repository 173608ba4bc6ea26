//! Command implementations behind the `sidelink-alloc` binary.
//!
//! Each command is a plain function over a [`RunConfig`] so that tests can
//! drive it without spawning a process. Exit codes: 0 success, 1 self-test
//! failure, 2 config or parse error, 3 infeasible instance, 4 oracle cap
//! exceeded.

mod config;
pub mod csv;
pub mod selftest;

use std::fmt::{self, Write};
use std::fs;
use std::path::{Path, PathBuf};

pub use config::{default_algorithms, parse_algorithms, parse_workers, RunConfig};

use crate::harness::{default_cdf_grid, empirical_cdf, run_trials, sweep_density, Algorithm};
use crate::matching::{
    aggregate_max, check_feasible, smooth_aggregate, solve_constrained, vehicle_rates, ProblemInstance, SmoothMaxConfig,
};
use crate::scenario::generate_instance;
use crate::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_SELFTEST_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_ORACLE_CAP: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MoreVehiclesThanSubframes { .. } | Error::MoreRowsThanColumns { .. } => EXIT_INFEASIBLE,
            Error::OracleCapExceeded { .. } => EXIT_ORACLE_CAP,
            _ => EXIT_CONFIG,
        };
        Self { code, message: e.to_string() }
    }
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Self { code: EXIT_CONFIG, message: format!("{}: {e}", path.display()) }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Reads and parses an instance file in the `N S K` matrix format.
pub fn load_instance(path: &Path) -> CliResult<ProblemInstance> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(text.parse()?)
}

pub fn load_config(path: Option<&Path>) -> CliResult<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            Ok(RunConfig::from_toml(&text)?)
        }
    }
}

/// Solves one instance and renders a `key: value` report.
pub fn cmd_solve(instance: &ProblemInstance, beta: Option<f64>) -> CliResult<String> {
    let solution = solve_constrained(instance)?;
    let rates = vehicle_rates(instance, solution.assignment.resources());
    let violations = check_feasible(instance, &solution.assignment);

    let mut out = String::new();
    writeln!(out, "vehicles: {}", instance.num_vehicles()).unwrap();
    writeln!(out, "subframes: {}", instance.num_subframes()).unwrap();
    writeln!(out, "slots_per_subframe: {}", instance.slots_per_subframe()).unwrap();
    writeln!(out, "assignment: {}", solution.assignment).unwrap();
    let rates_text: Vec<String> = rates.iter().map(f64::to_string).collect();
    writeln!(out, "rates: {}", rates_text.join(" ")).unwrap();
    writeln!(out, "value: {}", solution.value).unwrap();
    if violations.is_empty() {
        writeln!(out, "feasible: yes").unwrap();
    } else {
        let v: Vec<String> = violations.iter().map(ToString::to_string).collect();
        writeln!(out, "feasible: no ({})", v.join("; ")).unwrap();
    }
    if let Some(beta) = beta {
        let audit = smooth_max_audit(instance, beta)?;
        writeln!(out, "smooth_max_beta: {beta}").unwrap();
        writeln!(out, "smooth_max_max_gap: {}", audit.max_gap).unwrap();
        writeln!(out, "smooth_max_bound: {}", audit.bound).unwrap();
        writeln!(out, "smooth_max_within_bound: {}", if audit.within_bound { "yes" } else { "no" }).unwrap();
    }
    Ok(out)
}

/// Smooth-max aggregation gap measured against its `ln(K)/beta` bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothMaxAudit {
    /// Largest `smooth - hard` difference over all blocks.
    pub max_gap: f64,
    pub bound: f64,
    /// Every block respects `0 <= gap <= bound`, allowing a few ulps of the
    /// block maximum: a tied block has a gap of exactly `ln(K)/beta`, and
    /// `(h + bound) - h` can round one ulp above it.
    pub within_bound: bool,
}

pub fn smooth_max_audit(instance: &ProblemInstance, beta: f64) -> CliResult<SmoothMaxAudit> {
    let smooth = smooth_aggregate(instance, SmoothMaxConfig::new(beta)?);
    let hard = aggregate_max(instance);
    let bound = (instance.slots_per_subframe() as f64).ln() / beta;
    let mut audit = SmoothMaxAudit { max_gap: 0.0, bound, within_bound: true };
    for (&s, &h) in smooth.as_slice().iter().zip(hard.d.as_slice()) {
        let gap = s - h;
        let slack = 4.0 * f64::EPSILON * h.abs().max(bound);
        audit.max_gap = audit.max_gap.max(gap);
        audit.within_bound &= gap >= -slack && gap <= bound + slack;
    }
    Ok(audit)
}

fn beta_audit_note(cfg: &RunConfig) -> CliResult<Option<String>> {
    let Some(beta) = cfg.beta else { return Ok(None) };
    let instance = generate_instance(&cfg.scenario, 0)?;
    let a = smooth_max_audit(&instance, beta)?;
    let verdict = if a.within_bound { "within bound" } else { "BOUND VIOLATED" };
    Ok(Some(format!(
        "smooth-max audit on trial 0 (beta={beta}): max gap {:e}, bound {:e}, {verdict}",
        a.max_gap, a.bound
    )))
}

/// Output of a figure command: the CSV text and optional diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureOutput {
    pub file_name: &'static str,
    pub csv: String,
    pub notes: Vec<String>,
}

impl FigureOutput {
    pub fn write_to(&self, dir: &Path) -> CliResult<PathBuf> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(self.file_name);
        fs::write(&path, &self.csv).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}

/// Trial-averaged rate statistics per algorithm (`fig4.csv`).
pub fn cmd_simulate(cfg: &RunConfig) -> CliResult<FigureOutput> {
    cfg.validate()?;
    let results = run_trials(&cfg.scenario, &cfg.algorithms, cfg.trials, &cfg.run_options())?;
    let csv = csv::fig4(&results, &cfg.algorithms, cfg.scenario.data_bandwidth_hz)?;
    Ok(FigureOutput { file_name: "fig4.csv", csv, notes: beta_audit_note(cfg)?.into_iter().collect() })
}

/// Mean worst-vehicle rate against vehicle count (`fig5.csv`).
pub fn cmd_sweep(cfg: &RunConfig) -> CliResult<FigureOutput> {
    cfg.validate()?;
    let points = sweep_density(&cfg.scenario, &cfg.vehicle_counts, &cfg.algorithms, cfg.trials, &cfg.run_options())?;
    Ok(FigureOutput { file_name: "fig5.csv", csv: csv::fig5(&points), notes: Vec::new() })
}

/// Pooled spectral-efficiency CDFs (`fig6.csv`).
pub fn cmd_cdf(cfg: &RunConfig) -> CliResult<FigureOutput> {
    cfg.validate()?;
    let results = run_trials(&cfg.scenario, &cfg.algorithms, cfg.trials, &cfg.run_options())?;
    let grid = default_cdf_grid();
    let series = cfg
        .algorithms
        .iter()
        .map(|&a| empirical_cdf(&results, a, &grid, cfg.scenario.data_bandwidth_hz).map(|s| (a, s)))
        .collect::<crate::Result<Vec<(Algorithm, _)>>>()?;
    Ok(FigureOutput { file_name: "fig6.csv", csv: csv::fig6(&series), notes: Vec::new() })
}
