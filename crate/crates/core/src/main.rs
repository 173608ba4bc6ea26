use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use sidelink_alloc::cli::selftest::{render_report, run_selftest, SelfTestOptions, SuiteResult};
use sidelink_alloc::cli::{
    cmd_cdf, cmd_simulate, cmd_solve, cmd_sweep, load_config, load_instance, parse_algorithms, parse_workers, CliError,
    CliResult, FigureOutput, RunConfig, EXIT_CONFIG, EXIT_OK, EXIT_SELFTEST_FAILED,
};

#[derive(Parser)]
#[command(name = "sidelink-alloc", version, about = "Conflict-free sidelink resource allocation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file (`N S K` header, then N rows of S*K rates).
    Solve {
        instance: PathBuf,
        /// Also report the smooth-max aggregation gap at this sharpness.
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Trial-averaged rate statistics per algorithm -> fig4.csv
    Simulate(RunArgs),
    /// Worst-vehicle rate versus vehicle count -> fig5.csv
    Sweep(RunArgs),
    /// Pooled spectral-efficiency CDFs -> fig6.csv
    Cdf(RunArgs),
    /// Property suites on small random instances.
    Selftest {
        /// 100 instances instead of 1000.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt the solver to check that the suites detect it.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    vehicles: Option<usize>,
    #[arg(long)]
    subframes: Option<usize>,
    #[arg(long)]
    slots: Option<usize>,
    /// Comma-separated: graph, exhaustive, greedy, random, unconstrained.
    #[arg(long)]
    algorithms: Option<String>,
    /// Comma-separated vehicle counts for `sweep`.
    #[arg(long)]
    vehicle_counts: Option<String>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Thread count or `auto`.
    #[arg(long)]
    workers: Option<String>,
    #[arg(long)]
    beta: Option<f64>,
    /// 20 trials instead of the configured count.
    #[arg(long)]
    quick: bool,
}

impl RunArgs {
    fn resolve(&self) -> CliResult<RunConfig> {
        let mut cfg = load_config(self.config.as_deref())?;
        let s = &mut cfg.scenario;
        if let Some(v) = self.seed {
            s.seed = v;
        }
        if let Some(v) = self.vehicles {
            s.num_vehicles = v;
        }
        if let Some(v) = self.subframes {
            s.num_subframes = v;
        }
        if let Some(v) = self.slots {
            s.slots_per_subframe = v;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if self.quick {
            cfg.trials = cfg.trials.min(20);
        }
        if let Some(list) = &self.algorithms {
            cfg.algorithms = parse_algorithms(list)?;
        }
        if let Some(list) = &self.vehicle_counts {
            cfg.vehicle_counts = list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError { code: EXIT_CONFIG, message: format!("bad --vehicle-counts: {e}") })?;
        }
        if let Some(dir) = &self.out_dir {
            cfg.out_dir = dir.clone();
        }
        if let Some(w) = &self.workers {
            cfg.workers = parse_workers(w)?;
        }
        if self.beta.is_some() {
            cfg.beta = self.beta;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(args: &RunArgs, command: fn(&RunConfig) -> CliResult<FigureOutput>) -> CliResult<()> {
    let cfg = args.resolve()?;
    let started = Instant::now();
    let output = command(&cfg)?;
    let path = output.write_to(&cfg.out_dir)?;
    for note in &output.notes {
        eprintln!("{note}");
    }
    eprintln!("wrote {} in {:.2?}", path.display(), started.elapsed());
    Ok(())
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Solve { instance, beta } => {
            let instance = load_instance(&instance)?;
            print!("{}", cmd_solve(&instance, beta)?);
        }
        Command::Simulate(args) => emit(&args, cmd_simulate)?,
        Command::Sweep(args) => emit(&args, cmd_sweep)?,
        Command::Cdf(args) => emit(&args, cmd_cdf)?,
        Command::Selftest { quick, seed, inject_fault } => {
            let options = SelfTestOptions { instances: if quick { 100 } else { 1000 }, seed, inject_fault };
            let started = Instant::now();
            let results = run_selftest(&options);
            print!("{}", render_report(&results));
            println!("elapsed: {:.3?}", started.elapsed());
            if !results.iter().all(SuiteResult::ok) {
                return Ok(EXIT_SELFTEST_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
