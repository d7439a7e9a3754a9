use std::path::PathBuf;

use naelab::formula::{emit_dimacs_with_planted, random_instance, random_mixed_instance, GeneratorMode};

use crate::config::{pick, Config};
use crate::usage;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    pub n: usize,
    /// Clause length; ignored when --lengths is given.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Comma-separated clause lengths drawn uniformly per clause.
    #[arg(long, value_delimiter = ',')]
    pub lengths: Option<Vec<usize>>,
    #[arg(long)]
    pub m: usize,
    /// uniform | planted-nae
    #[arg(long, default_value = "uniform")]
    pub generator: GeneratorMode,
    #[arg(long, env = "NAELAB_SEED")]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: Args, cfg: &Config) -> anyhow::Result<u8> {
    let seed = pick(args.seed, cfg, "seed", 0)?;
    let file = match &args.lengths {
        Some(lens) => random_mixed_instance(args.n, lens, args.m, args.generator == GeneratorMode::PlantedNae, seed),
        None => random_instance(args.n, args.k, args.m, args.generator, seed),
    }
    .map_err(|e| usage(e.to_string()))?;
    let text = emit_dimacs_with_planted(&file.instance, file.planted.as_ref());
    match &args.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}
