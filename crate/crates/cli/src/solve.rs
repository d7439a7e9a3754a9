use std::path::PathBuf;

use anyhow::Context;
use clap::ValueEnum;
use naelab::formula::{parse_dimacs, stats};
use naelab::naesolve::{dpll, solve_nae, DlsStrategy, SolveOutcome, SolveTrace, SolverConfig};
use naelab::oracle::brute_decide;
use naelab::transform::to_conjugate_instance;
use naelab::{Assignment, Clause, Instance, Literal, Mode};
use serde::Serialize;

use crate::config::{parse_ratio, pick, Config};
use crate::{usage, EXIT_SAT, EXIT_UNSAT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Auto,
    BrDls,
    Dpll,
    Oracle,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// DIMACS CNF file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum)]
    pub engine: Option<Engine>,
    /// Branching threshold ν as a rational, e.g. 1/10.
    #[arg(long)]
    pub nu: Option<String>,
    /// Local-search strategy of the DLS phase.
    #[arg(long)]
    pub dls: Option<DlsStrategy>,
    #[arg(long, env = "NAELAB_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    status: &'static str,
    mode: Mode,
    engine: Engine,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    assignment: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a SolveTrace>,
}

/// `F` is satisfiable iff `{C ∨ z : C ∈ F}` is NAE-satisfiable for a fresh `z`.
fn sat_to_nae(f: &Instance) -> Instance {
    let z = f.num_vars() as u32 + 1;
    let clauses = f
        .clauses()
        .iter()
        .map(|c| Clause::new(c.literals().iter().copied().chain([Literal::pos(z)])).expect("fresh variable"))
        .collect();
    Instance::new(f.num_vars() + 1, clauses).expect("variables in range")
}

fn nae_to_sat_assignment(f: &Instance, a: &Assignment) -> Assignment {
    let z = f.num_vars() as u32 + 1;
    let flip = a.get(z);
    Assignment::from_bits((1..=f.num_vars() as u32).map(|v| a.get(v) != flip).collect())
}

pub fn run(args: Args, cfg: &Config) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let f = parse_dimacs(&text)?;
    let mode = pick(args.mode, cfg, "mode", Mode::Nae)?;
    let engine = match args.engine {
        Some(e) => e,
        None => match cfg.get("engine") {
            Some(s) => Engine::from_str(s, true).map_err(|e| usage(format!("config key engine: {e}")))?,
            None => Engine::Auto,
        },
    };
    let nu = match args.nu.as_deref().or(cfg.get("nu")) {
        Some(s) => Some(parse_ratio(s)?),
        None => None,
    };
    let solver = SolverConfig {
        nu,
        dls_strategy: pick(args.dls, cfg, "dls", DlsStrategy::CoveringCode)?,
        seed: pick(args.seed, cfg, "seed", 0)?,
        ..Default::default()
    };
    solver.validate().map_err(|e| usage(e.to_string()))?;

    let mut trace = None;
    let outcome = match (engine, mode) {
        (Engine::Oracle, _) => match brute_decide(&f, mode)? {
            Some(a) => SolveOutcome::Satisfiable(a),
            None => SolveOutcome::Unsatisfiable,
        },
        (Engine::Auto | Engine::BrDls, Mode::Nae) => {
            let r = solve_nae(&f, &solver)?;
            trace = Some(r.trace);
            r.outcome
        }
        (Engine::BrDls, Mode::Sat) => {
            let g = sat_to_nae(&f);
            let r = solve_nae(&g, &solver)?;
            trace = Some(r.trace);
            match r.outcome {
                SolveOutcome::Satisfiable(a) => SolveOutcome::Satisfiable(nae_to_sat_assignment(&f, &a)),
                SolveOutcome::Unsatisfiable => SolveOutcome::Unsatisfiable,
            }
        }
        (Engine::Dpll, Mode::Nae) => {
            if f.has_unit_clause() {
                SolveOutcome::Unsatisfiable
            } else {
                dpll(&to_conjugate_instance(&f)?)
            }
        }
        (Engine::Auto | Engine::Dpll, Mode::Sat) => dpll(&f),
    };
    if let Some(a) = outcome.assignment() {
        anyhow::ensure!(f.is_satisfied_by(a, mode), "internal error: assignment does not satisfy the instance");
    }

    let status = if outcome.is_sat() { "sat" } else { "unsat" };
    if args.json {
        let report = Report {
            status,
            mode,
            engine,
            n: f.num_vars(),
            m: f.num_clauses(),
            eta: stats(&f).ok().map(|s| s.eta.to_string()),
            assignment: outcome.assignment().map(|a| a.to_dimacs_literals()),
            trace: trace.as_ref(),
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("s {}", if outcome.is_sat() { "SATISFIABLE" } else { "UNSATISFIABLE" });
        if let Some(a) = outcome.assignment() {
            let lits: Vec<String> = a.to_dimacs_literals().iter().map(i64::to_string).collect();
            println!("v {} 0", lits.join(" "));
        }
        if let Some(t) = &trace {
            println!(
                "c mode {mode} path {} k {} pairs {} nu {} branches {}/{} codewords {} ball_nodes {}",
                serde_json::to_value(t.path)?.as_str().unwrap_or("?"),
                t.k,
                t.pairs,
                t.nu,
                t.branches_explored,
                t.branches_total,
                t.codewords,
                t.ball_nodes
            );
        }
    }
    Ok(if outcome.is_sat() { EXIT_SAT } else { EXIT_UNSAT })
}
