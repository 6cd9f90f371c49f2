//! `hullforge`: runs configured experiments and writes machine-readable
//! results.
//!
//! ```text
//! hullforge <axioms|estimate|variance|markov|clt|rates> --config <path>
//!           [--seed N] [--threads N] [--out DIR]
//! ```
//!
//! Exit codes: 0 when every check passes, 1 on a statistical or axiom
//! failure, 2 on usage or configuration errors.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use crate::commands::{run, Command, RunArgs};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "hullforge", version, about = "Monte Carlo experiments for hull-based Poisson functionals")]
struct Cli {
    /// Pipeline to run.
    #[arg(value_enum)]
    command: Command,
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configured base seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism); results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn main_inner(cli: &Cli) -> Result<bool, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot start thread pool: {e}")))?;
    }
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", cli.config.display())))?;
    let outcome = run(&RunArgs { command: cli.command, config_text: &text, seed: cli.seed, out: &cli.out })?;
    for l in &outcome.lines {
        println!("{l}");
    }
    println!("{}", if outcome.pass { "overall: PASS" } else { "overall: FAIL" });
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hullforge: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
