//! Command-line front end for the experiment harness: JSON config in, CSV
//! out. Exit codes: 0 success, 2 configuration error, 3 chain/runtime error,
//! 4 stream exhausted.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use mcqmc::experiments::{
    run_coupling_report, run_discrepancy_report, run_vrf_experiment, vrf_csv, CouplingConfig,
    DiscrepancyConfig, ExperimentConfig,
};
use mcqmc::McqmcError;

#[derive(Parser)]
#[command(name = "mcqmc", version, about = "CUD-driven MCMC experiment harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Variance-reduction factors: randomized-CUD treatment vs IID baseline
    Vrf(Common),
    /// Star-discrepancy diagnostics for configured streams
    Discrepancy(Common),
    /// Coupling and contraction probes
    Couple(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment configuration
    #[arg(long)]
    config: PathBuf,
    /// CSV output path (overrides the config's `out` field)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed override
    #[arg(long)]
    seed: Option<u64>,
}

fn load_config<T: DeserializeOwned>(path: &PathBuf) -> Result<T, McqmcError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| McqmcError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| McqmcError::Config(format!("cannot parse {}: {e}", path.display())))
}

fn resolve_out(cli: &Option<PathBuf>, cfg: &Option<PathBuf>) -> Result<PathBuf, McqmcError> {
    cli.clone()
        .or_else(|| cfg.clone())
        .ok_or_else(|| McqmcError::Config("no output path: pass --out or set `out`".into()))
}

fn run() -> Result<(), McqmcError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Vrf(common) => {
            let mut cfg: ExperimentConfig = load_config(&common.config)?;
            if let Some(seed) = common.seed {
                cfg.master_seed = seed;
            }
            let out = resolve_out(&common.out, &cfg.out)?;
            let rows = run_vrf_experiment(&cfg)?;
            std::fs::write(&out, vrf_csv(&cfg, &rows))?;
        }
        Command::Discrepancy(common) => {
            let mut cfg: DiscrepancyConfig = load_config(&common.config)?;
            if let Some(seed) = common.seed {
                cfg.master_seed = seed;
            }
            let out = resolve_out(&common.out, &cfg.out)?;
            std::fs::write(&out, run_discrepancy_report(&cfg)?)?;
        }
        Command::Couple(common) => {
            let mut cfg: CouplingConfig = load_config(&common.config)?;
            if let Some(seed) = common.seed {
                cfg.master_seed = seed;
            }
            let out = resolve_out(&common.out, &cfg.out)?;
            std::fs::write(&out, run_coupling_report(&cfg)?)?;
        }
    }
    Ok(())
}

fn exit_code(err: &McqmcError) -> u8 {
    match err {
        McqmcError::Config(_) => 2,
        McqmcError::Exhausted { .. } => 4,
        McqmcError::Replicate { source, .. } => exit_code(source),
        _ => 3,
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
