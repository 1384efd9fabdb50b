//! `specmult` — experiment driver for the finite-volume random-operator
//! laboratory.
//!
//! Each subcommand runs one experiment kind; without `--config` it uses
//! the built-in recipe for that kind.  Exit codes: 0 success, 2 config or
//! schema problem, 3 numerical failure (diagnostics written next to the
//! artifacts).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use specmult::config::ExperimentConfig;
use specmult::runner::{run, RunError, RunOptions};

#[derive(Parser)]
#[command(
    name = "specmult",
    version,
    about = "Multiplicity, Green-matrix, and eigenvalue-count experiments for random operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config; defaults to the subcommand's built-in recipe.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Master seed override.
    #[arg(long, global = true, env = "SPECMULT_SEED", value_name = "U64")]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "SPECMULT_THREADS", value_name = "N")]
    threads: Option<usize>,
    /// Artifact output directory.
    #[arg(long, global = true, default_value = "artifacts", value_name = "DIR")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster sampled spectra and check multiplicity windows.
    Multiplicity,
    /// Tail-probability ratio tables over |J| × |B|.
    Minami,
    /// Count distributions, Poisson fit, negligibility.
    Stats,
    /// Schur-vs-direct resolvent agreement and Herglotz sweep.
    GreenCheck,
    /// Planted kernel-dimension equivalence instances.
    KernelCheck,
    /// The stacked-chain multiplicity counterexample experiment.
    Counterexample,
}

impl Command {
    fn kind(&self) -> &'static str {
        match self {
            Command::Multiplicity => "multiplicity",
            Command::Minami => "minami",
            Command::Stats => "stats",
            Command::GreenCheck => "green-check",
            Command::KernelCheck => "kernel-check",
            Command::Counterexample => "counterexample",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let kind = cli.command.kind();
    let config = match &cli.config {
        Some(path) => match ExperimentConfig::load(path) {
            Ok(cfg) => {
                if cfg.experiment.name() != kind {
                    eprintln!(
                        "error: config is a '{}' experiment but the subcommand is '{kind}'",
                        cfg.experiment.name()
                    );
                    return ExitCode::from(2);
                }
                cfg
            }
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
        },
        None => ExperimentConfig::recipe(kind).expect("every subcommand has a recipe"),
    };
    let out_dir = config
        .out_dir
        .as_ref()
        .map(PathBuf::from)
        .filter(|_| cli.out == PathBuf::from("artifacts"))
        .unwrap_or(cli.out.clone());
    let opts = RunOptions {
        threads: cli.threads,
        out_dir,
        seed_override: cli.seed,
    };
    match run(&config, &opts) {
        Ok(summary) => {
            println!("{kind}: ok");
            for path in &summary.artifacts {
                println!("  wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            match &err {
                RunError::Numerical(_) | RunError::Io(_) => {
                    eprintln!("  diagnostics: {}", opts.out_dir.join("diagnostics.txt").display());
                }
                RunError::Config(_) => {}
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
