//! Batch CLI for the Monte Carlo harness.
//!
//! `hdbf run --config <file>` executes the experiment described by a flat
//! key-value config file, or a sweep over one axis, and writes the metrics
//! CSV (plus optional SVG charts and a reproducibility metadata sidecar)
//! into the output directory. Exit codes: 0 success, 1 configuration error,
//! 2 runtime/data error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hdbf::harness::{self, config, output, HarnessError, SweepAxis};
use hdbf::rng;

#[derive(Parser)]
#[command(name = "hdbf", version, about = "High-dimensional two-sample location test studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment (or an axis sweep) and write CSV/SVG outputs.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration file (flat `key = value` lines).
    #[arg(long)]
    config: PathBuf,

    /// Sweep axis: p, lambda or eta. Without it the config is run as a
    /// single point.
    #[arg(long, requires = "values")]
    axis: Option<String>,

    /// Comma-separated sweep values for the chosen axis.
    #[arg(long, value_delimiter = ',', requires = "axis")]
    values: Option<Vec<f64>>,

    /// Override the enabled tests (comma-separated subset of fs, cq, plugin).
    #[arg(long)]
    tests: Option<String>,

    /// Override the number of replications per point.
    #[arg(long)]
    reps: Option<usize>,

    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Override the worker thread count (a number, or auto).
    #[arg(long)]
    threads: Option<String>,

    /// Output directory for CSV/SVG artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Also write one SVG chart per metric.
    #[arg(long)]
    plot: bool,
}

fn main() -> ExitCode {
    // Map argument-parse failures onto the config-error exit code; help and
    // version requests still exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => match run(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(err.exit_code() as u8)
            }
        },
    }
}

fn run(args: RunArgs) -> Result<(), HarnessError> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| {
        HarnessError::Config(format!("cannot read config {}: {e}", args.config.display()))
    })?;
    let mut cfg = config::parse_config_str(&text)?;
    if let Some(tests) = &args.tests {
        cfg.tests = config::parse_tests(tests).map_err(HarnessError::Config)?;
    }
    if let Some(reps) = args.reps {
        cfg.replications = reps;
    }
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(threads) = &args.threads {
        cfg.threads = config::parse_threads(threads).map_err(HarnessError::Config)?;
    }
    cfg.validate()?;

    let (axis, values) = match (&args.axis, &args.values) {
        (Some(axis), Some(values)) => {
            (axis.parse::<SweepAxis>().map_err(HarnessError::Config)?, values.clone())
        }
        (None, None) => (SweepAxis::P, vec![cfg.p as f64]),
        _ => {
            return Err(HarnessError::Config(
                "--axis and --values must be given together".into(),
            ))
        }
    };

    let table = harness::run_sweep(&cfg, axis, &values)?;
    let paths = output::emit_outputs(&table, &args.out, args.plot)?;

    let values_list =
        values.iter().map(|v| output::format_float(*v)).collect::<Vec<_>>().join(",");
    let metadata = format!(
        "rng = {}\naxis = {axis}\nvalues = {values_list}\n\n[config]\n{}",
        rng::algorithm_description(),
        config::render_config(&cfg)
    );
    let meta_path = args.out.join("run_metadata.txt");
    std::fs::write(&meta_path, metadata)
        .map_err(|e| HarnessError::Io { path: meta_path.clone(), message: e.to_string() })?;

    print!("{}", output::table_to_csv(&table));
    for path in paths.iter().chain(std::iter::once(&meta_path)) {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}
