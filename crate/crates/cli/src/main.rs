//! `naelab` command-line front end.

mod bench;
mod bounds;
mod config;
mod generate;
mod maxsat;
mod solve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::Config;

#[derive(Parser, Debug)]
#[command(name = "naelab", version, about = "NAE-k-SAT solvers, MAX-(NAE-)SAT approximation and bound calculators")]
struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Defaults file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide (NAE-)satisfiability of a DIMACS instance.
    Solve(solve::Args),
    /// Approximate or solve MAX-(NAE-)SAT.
    Maxsat(maxsat::Args),
    /// Emit bound tables, curves and equation-system solutions.
    Bounds(bounds::Args),
    /// Write a random instance in DIMACS format.
    Generate(generate::Args),
    /// Run self-check batteries against the oracles.
    Verify(verify::Args),
    /// Time the solver engines on random instances.
    Bench(bench::Args),
}

/// Error that maps to exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub const EXIT_SAT: u8 = 10;
pub const EXIT_UNSAT: u8 = 20;

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(n) = cli.threads.or(cfg.get_parsed("threads")?) {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Solve(a) => solve::run(a, &cfg),
        Command::Maxsat(a) => maxsat::run(a, &cfg),
        Command::Bounds(a) => bounds::run(a, &cfg),
        Command::Generate(a) => generate::run(a, &cfg),
        Command::Verify(a) => verify::run(a, &cfg),
        Command::Bench(a) => bench::run(a, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
