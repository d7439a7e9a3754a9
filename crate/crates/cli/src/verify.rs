use clap::ValueEnum;
use naelab::approx::{guess_success_probability, random_walk, walk_success_probability};
use naelab::bounds::{lp_closed_form, MAX_K};
use naelab::formula::{emit_dimacs, random_instance, satisfiable_subformula, GeneratorMode};
use naelab::naesolve::{sample_pair_assignment, solve_nae, PairDistribution, SolverConfig};
use naelab::oracle::{brute_decide, brute_max, check_lp_constraints, lp_solve_symmetric};
use naelab::scalar::{rational, rational_to_f64};
use naelab::{Mode, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{pick, Config};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lp,
    Solver,
    Walk,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Inject {
    /// Move probability mass from weight-1 to weight-2 points of `π`.
    CorruptPi,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Instances for the solver and walk batteries.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Samples per k for the Monte-Carlo λ check.
    #[arg(long, default_value_t = 100_000)]
    pub draws: usize,
    #[arg(long, env = "NAELAB_SEED")]
    pub seed: Option<u64>,
    /// Deliberately break an input to exercise the failure path.
    #[arg(long, value_enum)]
    pub inject: Option<Inject>,
}

#[derive(Serialize)]
struct Check {
    suite: &'static str,
    property: String,
    pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    detail: Value,
}

fn point_string(k: u32, p: u32) -> String {
    (0..k).map(|j| if (p >> j) & 1 == 1 { '1' } else { '0' }).collect()
}

fn corrupt(k: u32, pi: &mut [Rational]) {
    let eps = rational(1, 1000);
    let up = &eps * rational(2, k as i64 - 1);
    for (p, v) in pi.iter_mut().enumerate() {
        match p.count_ones() {
            1 => *v -= &eps,
            2 => *v += &up,
            _ => {}
        }
    }
}

fn lp_suite(inject: Option<Inject>, out: &mut Vec<Check>) {
    for k in 3..=MAX_K {
        let closed = lp_closed_form(k).expect("k in range");
        let mut pi = closed.pi_table();
        if inject == Some(Inject::CorruptPi) {
            corrupt(k, &mut pi);
        }
        let check = match check_lp_constraints(k, &pi, &closed.lambda) {
            Ok(c) => c,
            Err(e) => {
                out.push(Check {
                    suite: "lp",
                    property: format!("k={k}"),
                    pass: false,
                    detail: json!({"error": e.to_string()}),
                });
                continue;
            }
        };
        let oracle = lp_solve_symmetric(k).expect("k in range");
        let agrees = oracle.lambda == closed.lambda && oracle.pi_by_distance == closed.pi_by_distance;
        let detail = if check.feasible() && agrees {
            json!({"lambda": closed.lambda.to_string()})
        } else {
            json!({
                "lambda": closed.lambda.to_string(),
                "min_lhs": check.min_lhs.to_string(),
                "sum": check.sum.to_string(),
                "violated": check.violated.iter().map(|&p| point_string(k, p)).collect::<Vec<_>>(),
                "matches_elimination": agrees,
            })
        };
        out.push(Check { suite: "lp", property: format!("k={k}"), pass: check.feasible() && agrees, detail });
    }
}

fn solver_suite(trials: usize, seed: u64, out: &mut Vec<Check>) {
    let forced = SolverConfig { nu: Some(rational(1, 1000)), ..Default::default() };
    let mut bad: Option<Value> = None;
    let mut disagreements = 0;
    for i in 0..trials as u64 {
        let k = 3 + (i % 2) as usize;
        let n = 8 + (i % 9) as usize;
        let m = n * if k == 3 { 2 } else { 5 } + (i % 5) as usize;
        let generator = if i % 4 == 3 { GeneratorMode::PlantedNae } else { GeneratorMode::Uniform };
        let f = random_instance(n, k, m, generator, seed.wrapping_add(i)).expect("valid parameters").instance;
        let cfg = if i % 2 == 0 { forced.clone() } else { SolverConfig::default() };
        let r = solve_nae(&f, &cfg).expect("k within range");
        let truth = brute_decide(&f, Mode::Nae).expect("small n").is_some();
        let valid = r.outcome.assignment().is_none_or(|a| f.is_satisfied_by(a, Mode::Nae));
        if r.outcome.is_sat() != truth || !valid {
            disagreements += 1;
            bad.get_or_insert_with(|| json!({"trial": i, "solver_sat": r.outcome.is_sat(), "oracle_sat": truth, "dimacs": emit_dimacs(&f)}));
        }
    }
    out.push(Check {
        suite: "solver",
        property: "agrees_with_brute_force".into(),
        pass: disagreements == 0,
        detail: json!({"trials": trials, "disagreements": disagreements, "counterexample": bad}),
    });
}

fn walk_suite(trials: usize, draws: usize, seed: u64, out: &mut Vec<Check>) {
    for k in 3..=5u32 {
        let dist = PairDistribution::new(k).expect("k in range");
        let lambda = rational_to_f64(&dist.lambda);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let samples: Vec<u32> = (0..draws).map(|_| sample_pair_assignment(&dist, &mut rng)).collect();
        let base = 1.0 / (k - 1) as f64;
        let mut worst = (0.0f64, 0u32);
        for star in 1..(1u32 << k) - 1 {
            let value = |a: u32| base.powi((a ^ star).count_ones() as i32);
            let (mut m1, mut m2) = (0.0, 0.0);
            for a in 1..(1u32 << k) - 1 {
                let p = rational_to_f64(&dist.pi[a as usize]);
                m1 += p * value(a);
                m2 += p * value(a) * value(a);
            }
            let sigma = ((m2 - m1 * m1) / draws as f64).sqrt();
            let mean = samples.iter().map(|&a| value(a)).sum::<f64>() / draws as f64;
            let z = (mean - lambda).abs() / sigma;
            if z > worst.0 {
                worst = (z, star);
            }
        }
        out.push(Check {
            suite: "walk",
            property: format!("lambda_monte_carlo_k={k}"),
            pass: worst.0 <= 3.0,
            detail: json!({"lambda": lambda, "worst_sigma": worst.0, "worst_point": point_string(k, worst.1)}),
        });
    }

    let (n, restarts, delta) = (12usize, 2000usize, 0.875);
    let mut below = Vec::new();
    for i in 0..trials.min(20) as u64 {
        let f =
            random_instance(n, 3, 5 * n, GeneratorMode::Uniform, seed.wrapping_add(1000 + i)).expect("valid").instance;
        let (opt, best) = brute_max(&f, Mode::Nae).expect("small n");
        let theta = satisfiable_subformula(&f, &best, Mode::Nae).theta.map_or(3.0, |t| rational_to_f64(&t));
        let bound =
            walk_success_probability(3, delta, f.num_clauses(), opt, n).max(guess_success_probability(theta, delta, n));
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2000 + i));
        let hits =
            (0..restarts).filter(|_| random_walk(&f, Mode::Nae, &mut rng).score as f64 >= delta * opt as f64).count();
        let freq = hits as f64 / restarts as f64;
        let sigma = (bound * (1.0 - bound) / restarts as f64).sqrt();
        if freq < bound - 3.0 * sigma {
            below.push(json!({"instance": i, "frequency": freq, "bound": bound}));
        }
    }
    out.push(Check {
        suite: "walk",
        property: "success_frequency_meets_bound".into(),
        pass: below.is_empty(),
        detail: json!({"instances": trials.min(20), "below": below}),
    });
}

pub fn run(args: Args, cfg: &Config) -> anyhow::Result<u8> {
    let seed = pick(args.seed, cfg, "seed", 0)?;
    let trials = pick(args.trials, cfg, "trials", 200)?;
    let mut checks = Vec::new();
    if matches!(args.suite, Suite::Lp | Suite::All) {
        lp_suite(args.inject, &mut checks);
    }
    if matches!(args.suite, Suite::Solver | Suite::All) {
        solver_suite(trials, seed, &mut checks);
    }
    if matches!(args.suite, Suite::Walk | Suite::All) {
        walk_suite(trials, args.draws, seed, &mut checks);
    }
    for c in &checks {
        println!("{}", serde_json::to_string(c)?);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!("{}", json!({"summary": {"passed": checks.len() - failed, "failed": failed}}));
    Ok(if failed == 0 { 0 } else { 1 })
}
