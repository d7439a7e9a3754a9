use std::path::PathBuf;

use anyhow::Context;
use clap::ValueEnum;
use naelab::approx::{random_walk_repeat, reduce_solve, ApproxError, ApproxTrace, ExactEngine, ReduceOptions};
use naelab::formula::parse_dimacs;
use naelab::matmul::Kernel;
use naelab::oracle::brute_max;
use naelab::williams::exact_max;
use naelab::{Mode, Rational};
use serde::Serialize;

use crate::config::{parse_ratio, pick, Config};
use crate::usage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Randomwalk,
    Reducesolve,
    Williams,
    Oracle,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Target performance ratio δ, e.g. 0.9 or 9/10.
    #[arg(long)]
    pub delta: Option<String>,
    /// Random-walk restarts.
    #[arg(long)]
    pub restarts: Option<u64>,
    /// ReduceSolve: eliminate exactly this many variables.
    #[arg(long)]
    pub t: Option<usize>,
    /// ReduceSolve: exact engine for the residual (auto|williams|oracle).
    #[arg(long)]
    pub residual: Option<String>,
    /// ReduceSolve: draw the eliminated variables uniformly (seeded) instead of derandomizing.
    #[arg(long)]
    pub random_completion: bool,
    /// Matrix kernel for Williams (naive|strassen).
    #[arg(long)]
    pub kernel: Option<Kernel>,
    /// Also compute the optimum by brute force and report the ratio.
    #[arg(long)]
    pub compare_oracle: bool,
    #[arg(long, env = "NAELAB_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Serialize)]
struct Report {
    algo: Algo,
    mode: Mode,
    n: usize,
    m: usize,
    #[serde(with = "ratio_string")]
    delta: Rational,
    achieved: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimum: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meets_delta: Option<bool>,
    assignment: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<ApproxTrace>,
}

mod ratio_string {
    pub fn serialize<S: serde::Serializer>(r: &naelab::Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }
}

fn residual_engine(s: &str) -> anyhow::Result<ExactEngine> {
    match s {
        "auto" => Ok(ExactEngine::Auto),
        "williams" => Ok(ExactEngine::Williams),
        "oracle" => Ok(ExactEngine::Oracle),
        other => Err(usage(format!("unknown residual engine '{other}' (expected auto|williams|oracle)"))),
    }
}

pub fn run(args: Args, cfg: &Config) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let f = parse_dimacs(&text)?;
    let mode = pick(args.mode, cfg, "mode", Mode::Nae)?;
    let delta = parse_ratio(args.delta.as_deref().or(cfg.get("delta")).unwrap_or("9/10"))?;
    if delta < Rational::from_integer(0.into()) || delta > Rational::from_integer(1.into()) {
        return Err(usage(format!("--delta {delta} outside [0, 1]")));
    }
    let seed = pick(args.seed, cfg, "seed", 0)?;
    let kernel = pick(args.kernel, cfg, "kernel", Kernel::Strassen)?;
    let restarts = pick(args.restarts, cfg, "restarts", 1000)?;
    if args.algo == Algo::Randomwalk && restarts == 0 {
        return Err(usage("--restarts must be at least 1"));
    }
    let optimum = if args.compare_oracle || args.algo == Algo::Oracle { Some(brute_max(&f, mode)?) } else { None };
    let opt_value = optimum.as_ref().map(|o| o.0);

    let (assignment, achieved, trace) = match args.algo {
        Algo::Randomwalk => {
            let r = random_walk_repeat(&f, mode, &delta, restarts, seed, opt_value)?;
            (r.assignment, r.achieved, Some(r.trace))
        }
        Algo::Reducesolve => {
            let engine = residual_engine(args.residual.as_deref().or(cfg.get("residual")).unwrap_or("auto"))?;
            let opts = ReduceOptions {
                t_override: args.t,
                engine,
                kernel,
                random_completion: args.random_completion.then_some(seed),
                compare_oracle: false,
            };
            let r = reduce_solve(&f, mode, &delta, &opts).map_err(|e| match e {
                ApproxError::ResidualTooLong { .. } => {
                    anyhow::anyhow!("{e}; try --residual oracle (n <= 24) or a smaller --t")
                }
                other => other.into(),
            })?;
            (r.assignment, r.achieved, Some(r.trace))
        }
        Algo::Williams => {
            let e = exact_max(&f, mode, kernel)?;
            (e.assignment, e.value, None)
        }
        Algo::Oracle => {
            let (v, a) = optimum.clone().expect("computed above");
            (a, v, None)
        }
    };

    let ratio =
        opt_value.map(
            |o| {
                if o == 0 {
                    Rational::from_integer(1.into())
                } else {
                    Rational::new(achieved.into(), o.into())
                }
            },
        );
    let report = Report {
        algo: args.algo,
        mode,
        n: f.num_vars(),
        m: f.num_clauses(),
        meets_delta: ratio.as_ref().map(|r| *r >= delta),
        delta,
        achieved,
        optimum: opt_value,
        ratio: ratio.map(|r| r.to_string()),
        assignment: assignment.to_dimacs_literals(),
        trace,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        let name = report.algo.to_possible_value().expect("named").get_name().to_string();
        println!("algo {name} mode {mode} achieved {achieved}/{}", report.m);
        if let (Some(o), Some(r)) = (report.optimum, &report.ratio) {
            println!("optimum {o} ratio {r} meets_delta {}", report.meets_delta.unwrap_or(false));
        }
        if let Some(ApproxTrace::ReduceSolve { t, eta, fe_clauses, residual_optimum, engine, .. }) = &report.trace {
            println!(
                "t {t} eta {eta} eliminated_clauses {fe_clauses} residual_optimum {residual_optimum} engine {engine}"
            );
        }
        let lits: Vec<String> = report.assignment.iter().map(i64::to_string).collect();
        println!("v {} 0", lits.join(" "));
    }
    Ok(0)
}
