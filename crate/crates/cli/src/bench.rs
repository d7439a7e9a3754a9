use std::time::Instant;

use clap::ValueEnum;
use naelab::formula::{random_instance, GeneratorMode};
use naelab::naesolve::{dpll, solve_nae, SolverConfig};
use naelab::oracle::brute_decide;
use naelab::transform::to_conjugate_instance;
use naelab::Mode;

use crate::config::{pick, Config};
use crate::usage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchEngine {
    BrDls,
    Dpll,
    Oracle,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "br-dls,dpll,oracle")]
    pub engines: Vec<BenchEngine>,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, value_delimiter = ',', default_value = "10,14,18")]
    pub n: Vec<usize>,
    /// Clauses per variable.
    #[arg(long, default_value_t = 2.0)]
    pub ratio: f64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value = "uniform")]
    pub generator: GeneratorMode,
    #[arg(long, env = "NAELAB_SEED")]
    pub seed: Option<u64>,
}

pub fn run(args: Args, cfg: &Config) -> anyhow::Result<u8> {
    let seed = pick(args.seed, cfg, "seed", 0)?;
    if args.ratio <= 0.0 {
        return Err(usage("--ratio must be positive"));
    }
    println!("engine,k,n,m,trial,status,seconds");
    for &n in &args.n {
        let m = (args.ratio * n as f64).round() as usize;
        for trial in 0..args.trials {
            let f = random_instance(n, args.k, m, args.generator, seed.wrapping_add(trial as u64))
                .map_err(|e| usage(e.to_string()))?
                .instance;
            for &engine in &args.engines {
                let start = Instant::now();
                let sat = match engine {
                    BenchEngine::BrDls => solve_nae(&f, &SolverConfig::default())?.outcome.is_sat(),
                    BenchEngine::Dpll => dpll(&to_conjugate_instance(&f)?).is_sat(),
                    BenchEngine::Oracle => brute_decide(&f, Mode::Nae)?.is_some(),
                };
                let name = engine.to_possible_value().expect("named").get_name().to_string();
                let status = if sat { "sat" } else { "unsat" };
                println!("{name},{},{n},{m},{trial},{status},{:.6}", args.k, start.elapsed().as_secs_f64());
            }
        }
    }
    Ok(0)
}
