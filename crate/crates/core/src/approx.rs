//! Approximation algorithms for MAX-(NAE-)k-SAT: a restarted random walk that
//! keeps the best assignment seen, and ReduceSolve, which eliminates
//! low-occurrence variables, solves the rest exactly and completes greedily.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{xi, BoundsError};
use crate::formula::{count_satisfied, stats, Assignment, Clause, Instance, Mode, PartialAssignment, Var};
use crate::matmul::Kernel;
use crate::oracle::{brute_max, OracleError, MAX_LIMIT};
use crate::scalar::rational_to_f64;
use crate::williams::{exact_max, WilliamsError, WILLIAMS_LIMIT};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApproxError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(
        "residual has {mode} clauses of length {len}; no exact engine applies (use the oracle engine for small n)"
    )]
    ResidualTooLong { len: usize, mode: Mode },
    #[error("t = {t} must be below n = {n}")]
    InfeasibleT { t: usize, n: usize },
    #[error("restarts must be at least 1")]
    NoRestarts,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Williams(#[from] WilliamsError),
}

/// Best assignment found by one walk and the score history of its improvements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkResult {
    pub assignment: Assignment,
    pub score: usize,
    pub improvements: Vec<usize>,
}

/// Incremental clause bookkeeping for the walk.
struct WalkState<'a> {
    f: &'a Instance,
    mode: Mode,
    alpha: Assignment,
    true_count: Vec<usize>,
    occurs: Vec<Vec<usize>>,
    unsat: Vec<usize>,
    pos: Vec<usize>,
}

const NOT_LISTED: usize = usize::MAX;

impl<'a> WalkState<'a> {
    fn new(f: &'a Instance, mode: Mode, alpha: Assignment) -> Self {
        let mut occurs = vec![Vec::new(); f.num_vars() + 1];
        for (i, c) in f.clauses().iter().enumerate() {
            for v in c.vars() {
                occurs[v as usize].push(i);
            }
        }
        let mut s = WalkState {
            f,
            mode,
            alpha,
            true_count: vec![0; f.num_clauses()],
            occurs,
            unsat: Vec::new(),
            pos: vec![NOT_LISTED; f.num_clauses()],
        };
        for i in 0..f.num_clauses() {
            s.true_count[i] = f.clauses()[i].literals().iter().filter(|l| l.value(&s.alpha)).count();
            s.refresh(i);
        }
        s
    }

    fn satisfied(&self, i: usize) -> bool {
        let t = self.true_count[i];
        match self.mode {
            Mode::Sat => t > 0,
            Mode::Nae => t > 0 && t < self.f.clauses()[i].len(),
        }
    }

    fn refresh(&mut self, i: usize) {
        let listed = self.pos[i] != NOT_LISTED;
        match (self.satisfied(i), listed) {
            (false, false) => {
                self.pos[i] = self.unsat.len();
                self.unsat.push(i);
            }
            (true, true) => {
                let p = self.pos[i];
                let last = *self.unsat.last().expect("listed");
                self.unsat.swap_remove(p);
                if last != i {
                    self.pos[last] = p;
                }
                self.pos[i] = NOT_LISTED;
            }
            _ => {}
        }
    }

    fn flip(&mut self, v: Var) {
        let new = !self.alpha.get(v);
        self.alpha.set(v, new);
        for idx in 0..self.occurs[v as usize].len() {
            let i = self.occurs[v as usize][idx];
            let lit = self.f.clauses()[i].literals().iter().find(|l| l.var() == v).expect("occurs");
            if lit.value_of(new) {
                self.true_count[i] += 1;
            } else {
                self.true_count[i] -= 1;
            }
            self.refresh(i);
        }
    }

    fn score(&self) -> usize {
        self.f.num_clauses() - self.unsat.len()
    }
}

/// One walk of `3n` steps from a random start, returning the best assignment seen.
pub fn random_walk<R: Rng + ?Sized>(f: &Instance, mode: Mode, rng: &mut R) -> WalkResult {
    random_walk_steps(f, mode, 3 * f.num_vars(), rng)
}

pub fn random_walk_steps<R: Rng + ?Sized>(f: &Instance, mode: Mode, steps: usize, rng: &mut R) -> WalkResult {
    let start = Assignment::random(f.num_vars(), rng);
    let mut s = WalkState::new(f, mode, start);
    let mut best = s.alpha.clone();
    let mut best_score = s.score();
    let mut improvements = vec![best_score];
    for _ in 0..steps {
        if s.unsat.is_empty() {
            break;
        }
        let i = *s.unsat.choose(rng).expect("non-empty");
        let v = f.clauses()[i].literals().choose(rng).expect("non-empty clause").var();
        s.flip(v);
        if s.score() > best_score {
            best_score = s.score();
            best = s.alpha.clone();
            improvements.push(best_score);
        }
    }
    WalkResult { assignment: best, score: best_score, improvements }
}

/// Restarts needed to succeed with constant probability: `⌈c / p⌉`.
pub fn restarts_for(c: f64, p: f64) -> u64 {
    assert!(p > 0.0 && p <= 1.0, "probability in (0, 1]");
    (c / p).ceil() as u64
}

/// Success probability of one walk when the optimum ratio is known:
/// `(2 - 2 p_δ)^{-n}` with `p_δ = (1-δ)/(k(m/s* - δ))`.
pub fn walk_success_probability(k: usize, delta: f64, m: usize, opt: usize, n: usize) -> f64 {
    if opt == 0 {
        return 1.0;
    }
    let p = crate::bounds::p_delta(k as u32, &delta, &(m as f64 / opt as f64));
    (2.0 - 2.0 * p).powi(-(n as i32))
}

/// Success probability of the random start alone: `2^{-θn/(1-δ+θ)}`.
pub fn guess_success_probability(theta: f64, delta: f64, n: usize) -> f64 {
    crate::bounds::guess_base(theta, delta).powi(-(n as i32))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElimStep {
    pub var: Var,
    pub occurrence: usize,
    /// `m^(i)`, clauses left before the step.
    pub m_before: usize,
    pub m_after: usize,
    /// `occurrence ≤ k·m^(i)/(n-i-1)`.
    pub bound_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum ApproxTrace {
    RandomWalk {
        restarts: u64,
        /// Restarts whose best assignment reached `δ·s(α*)` (when the optimum is known).
        successes: Option<u64>,
    },
    ReduceSolve {
        t: usize,
        #[serde(with = "crate::formula::rational_string")]
        eta: Rational,
        steps: Vec<ElimStep>,
        eliminated: Vec<Var>,
        fe_clauses: usize,
        residual_clauses: usize,
        residual_optimum: usize,
        engine: String,
        completion_satisfied: usize,
        #[serde(with = "crate::formula::rational_string")]
        completion_expectation: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxResult {
    pub assignment: Assignment,
    /// `s(α̂)`.
    pub achieved: usize,
    pub optimum: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::formula::opt_rational")]
    pub ratio_vs_oracle: Option<Rational>,
    pub trace: ApproxTrace,
}

impl ApproxResult {
    fn with_optimum(mut self, opt: Option<usize>) -> Self {
        self.optimum = opt;
        self.ratio_vs_oracle = opt.map(|o| {
            if o == 0 {
                Rational::from_integer(1.into())
            } else {
                Rational::new(self.achieved.into(), o.into())
            }
        });
        self
    }

    pub fn meets(&self, delta: &Rational) -> Option<bool> {
        self.ratio_vs_oracle.as_ref().map(|r| r >= delta)
    }
}

fn check_nae_units(f: &Instance, mode: Mode) -> Result<(), ApproxError> {
    if mode == Mode::Nae && f.has_unit_clause() {
        return Err(ApproxError::PreconditionViolated("NAE instances must not contain 1-clauses".into()));
    }
    Ok(())
}

/// Best of `restarts` independent walks. Restart `i` draws from stream `i` of
/// the seeded generator; ties go to the lexicographically smallest assignment.
pub fn random_walk_repeat(
    f: &Instance,
    mode: Mode,
    delta: &Rational,
    restarts: u64,
    seed: u64,
    optimum: Option<usize>,
) -> Result<ApproxResult, ApproxError> {
    check_nae_units(f, mode)?;
    if restarts == 0 {
        return Err(ApproxError::NoRestarts);
    }
    let target = optimum.map(|o| delta * Rational::from_integer(o.into()));
    let runs: Vec<(usize, Assignment, bool)> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let w = random_walk(f, mode, &mut rng);
            let ok = target.as_ref().is_some_and(|t| Rational::from_integer(w.score.into()) >= *t);
            (w.score, w.assignment, ok)
        })
        .collect();
    let successes = runs.iter().filter(|r| r.2).count() as u64;
    let (achieved, assignment, _) =
        runs.into_iter().min_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1))).expect("at least one restart");
    Ok(ApproxResult {
        assignment,
        achieved,
        optimum: None,
        ratio_vs_oracle: None,
        trace: ApproxTrace::RandomWalk { restarts, successes: optimum.map(|_| successes) },
    }
    .with_optimum(optimum))
}

/// Number of variables to eliminate: `max(0, ⌊(1 - (2x-1)^{1/k}) n⌋)` with
/// `x = 1 - (1-δ)ξ`, clamped to `n - 1`.
pub fn choose_t(n: usize, k: usize, delta: f64, eta: f64, mode: Mode) -> Result<usize, ApproxError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(BoundsError::DeltaOutOfRange(delta).into());
    }
    if n == 0 {
        return Ok(0);
    }
    let x = 1.0 - (1.0 - delta) * xi(k as u32, &eta, mode)?;
    let t = ((1.0 - (2.0 * x - 1.0).powf(1.0 / k as f64)) * n as f64).floor();
    Ok((t.max(0.0) as usize).min(n - 1))
}

/// Conditional probability that a clause ends up (NAE-)satisfied, given the
/// fixed literal values and `u` further literals on fresh uniform variables.
fn clause_expectation(mode: Mode, fixed_true: usize, fixed_false: usize, u: u32) -> Rational {
    let one = Rational::from_integer(1.into());
    let half_pow = |e: u32| Rational::new(1.into(), BigInt::from(1u64) << e);
    match mode {
        Mode::Sat => {
            if fixed_true > 0 {
                one
            } else {
                one - half_pow(u)
            }
        }
        Mode::Nae => {
            if fixed_true > 0 && fixed_false > 0 {
                one
            } else if fixed_true + fixed_false > 0 {
                one - half_pow(u)
            } else if u == 0 {
                Rational::zero()
            } else {
                one - half_pow(u - 1)
            }
        }
    }
}

fn expectation_of(c: &Clause, mode: Mode, value: &dyn Fn(Var) -> Option<bool>) -> Rational {
    let (mut t, mut fl, mut u) = (0, 0, 0);
    for l in c.literals() {
        match value(l.var()) {
            Some(b) if l.value_of(b) => t += 1,
            Some(_) => fl += 1,
            None => u += 1,
        }
    }
    clause_expectation(mode, t, fl, u)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub assignment: PartialAssignment,
    /// Expected satisfied count of `F_e` before any `V_e` variable is fixed.
    pub initial_expectation: Rational,
    pub satisfied: usize,
}

/// Assigns `ve` in index order, each time taking the value with the larger
/// exact conditional expectation (true on ties), so the expectation never
/// drops. With `random_seed` set the values are drawn uniformly instead.
pub fn cond_prob_complete(
    fe: &[Clause],
    ve: &[Var],
    alpha1: &PartialAssignment,
    mode: Mode,
    random_seed: Option<u64>,
) -> Result<Completion, ApproxError> {
    let ve_set: HashSet<Var> = ve.iter().copied().collect();
    for c in fe {
        if !c.vars().any(|v| ve_set.contains(&v)) {
            return Err(ApproxError::PreconditionViolated(format!("clause {c} has no eliminated variable")));
        }
        if let Some(v) = c.vars().find(|v| !ve_set.contains(v) && !alpha1.contains(*v)) {
            return Err(ApproxError::PreconditionViolated(format!("variable {v} of {c} is unassigned")));
        }
    }
    let mut order: Vec<Var> = ve.to_vec();
    order.sort_unstable();
    let mut current = alpha1.clone();
    let total = |p: &PartialAssignment| -> Rational { fe.iter().map(|c| expectation_of(c, mode, &|v| p.get(v))).sum() };
    let initial_expectation = total(&current);
    let mut rng = random_seed.map(ChaCha8Rng::seed_from_u64);
    let mut running = initial_expectation.clone();
    for v in order {
        let touching: Vec<&Clause> = fe.iter().filter(|c| c.contains_var(v)).collect();
        let local = |p: &PartialAssignment, val: Option<bool>| -> Rational {
            touching.iter().map(|c| expectation_of(c, mode, &|w| if w == v { val } else { p.get(w) })).sum()
        };
        let before = local(&current, None);
        let choice = match rng.as_mut() {
            Some(r) => r.gen(),
            None => local(&current, Some(true)) >= local(&current, Some(false)),
        };
        let after = local(&current, Some(choice));
        running = running - before + after;
        current.assign(v, choice).map_err(|e| ApproxError::PreconditionViolated(e.to_string()))?;
        if rng.is_none() {
            debug_assert!(running >= initial_expectation);
        }
    }
    let assigned: PartialAssignment = ve.iter().map(|&v| (v, current.get(v).expect("assigned"))).collect();
    let satisfied =
        fe.iter().filter(|c| expectation_of(c, mode, &|v| current.get(v)) == Rational::from_integer(1.into())).count();
    Ok(Completion { assignment: assigned, initial_expectation, satisfied })
}

/// Exact engine for the residual instance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactEngine {
    /// Williams when clause lengths allow, else brute force when small enough.
    #[default]
    Auto,
    Williams,
    Oracle,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    pub t_override: Option<usize>,
    pub engine: ExactEngine,
    pub kernel: Kernel,
    /// Draw `V_e` uniformly instead of by conditional expectations.
    pub random_completion: Option<u64>,
    /// Compute the optimum by brute force and report the ratio.
    pub compare_oracle: bool,
}

fn williams_ok(len: usize, mode: Mode) -> bool {
    match mode {
        Mode::Sat => len <= 2,
        Mode::Nae => len <= 3,
    }
}

fn solve_residual(
    r: &Instance,
    mode: Mode,
    opts: &ReduceOptions,
) -> Result<(usize, Assignment, &'static str), ApproxError> {
    let len = r.max_len();
    let use_williams = match opts.engine {
        ExactEngine::Williams => true,
        ExactEngine::Oracle => false,
        ExactEngine::Auto => williams_ok(len, mode) && r.num_vars() <= WILLIAMS_LIMIT,
    };
    if use_williams {
        if !williams_ok(len, mode) {
            return Err(ApproxError::ResidualTooLong { len, mode });
        }
        let e = exact_max(r, mode, opts.kernel)?;
        return Ok((e.value, e.assignment, "williams"));
    }
    if opts.engine == ExactEngine::Auto && r.num_vars() > MAX_LIMIT {
        return Err(ApproxError::ResidualTooLong { len, mode });
    }
    let (v, a) = brute_max(r, mode)?;
    Ok((v, a, "oracle"))
}

/// ReduceSolve: eliminate `t` lowest-occurrence variables (ties to the smallest
/// index), solve the remaining clauses exactly, then complete the eliminated
/// variables by conditional expectations.
pub fn reduce_solve(
    f: &Instance,
    mode: Mode,
    delta: &Rational,
    opts: &ReduceOptions,
) -> Result<ApproxResult, ApproxError> {
    check_nae_units(f, mode)?;
    let n = f.num_vars();
    let k = f.max_len();
    let eta = stats(f).map(|s| s.eta).unwrap_or_else(|_| Rational::from_integer((k.max(2) as i64).into()));
    let t = match opts.t_override {
        Some(t) => t,
        None if f.num_clauses() == 0 => 0,
        None => choose_t(n, k, rational_to_f64(delta), rational_to_f64(&eta), mode)?,
    };
    if t >= n.max(1) {
        return Err(ApproxError::InfeasibleT { t, n });
    }

    let mut remaining: Vec<Clause> = f.clauses().to_vec();
    let mut fe: Vec<Clause> = Vec::new();
    let mut eliminated: Vec<Var> = Vec::new();
    let mut is_out = vec![false; n + 1];
    let mut steps = Vec::with_capacity(t);
    for i in 0..t {
        let mut occ = vec![0usize; n + 1];
        for c in &remaining {
            for v in c.vars() {
                occ[v as usize] += 1;
            }
        }
        let v = (1..=n as Var).filter(|&v| !is_out[v as usize]).min_by_key(|&v| (occ[v as usize], v)).expect("t < n");
        let m_before = remaining.len();
        let (hit, keep): (Vec<Clause>, Vec<Clause>) = remaining.into_iter().partition(|c| c.contains_var(v));
        remaining = keep;
        fe.extend(hit);
        is_out[v as usize] = true;
        eliminated.push(v);
        let occurrence = occ[v as usize];
        let bound_ok = occurrence * (n - i - 1) <= k * m_before;
        steps.push(ElimStep { var: v, occurrence, m_before, m_after: remaining.len(), bound_ok });
    }

    let residual = Instance::new(n, remaining).expect("same variables");
    let (compact, map) = residual.compact();
    let (residual_optimum, local, engine) = if compact.num_clauses() == 0 {
        (0, Assignment::all_false(compact.num_vars()), "none")
    } else {
        solve_residual(&compact, mode, opts)?
    };
    let mut alpha1 = PartialAssignment::new();
    for (i, &orig) in map.iter().enumerate() {
        alpha1.assign(orig, local.get(i as Var + 1)).expect("distinct");
    }
    for v in 1..=n as Var {
        if !is_out[v as usize] && !alpha1.contains(v) {
            alpha1.assign(v, false).expect("unassigned");
        }
    }
    let completion = cond_prob_complete(&fe, &eliminated, &alpha1, mode, opts.random_completion)?;
    let full = alpha1.union(&completion.assignment).expect("disjoint variables").complete(n);
    let achieved = count_satisfied(f, &full, mode);
    let optimum = if opts.compare_oracle { Some(brute_max(f, mode)?.0) } else { None };
    Ok(ApproxResult {
        assignment: full,
        achieved,
        optimum: None,
        ratio_vs_oracle: None,
        trace: ApproxTrace::ReduceSolve {
            t,
            eta,
            steps,
            eliminated,
            fe_clauses: fe.len(),
            residual_clauses: compact.num_clauses(),
            residual_optimum,
            engine: engine.to_string(),
            completion_satisfied: completion.satisfied,
            completion_expectation: completion.initial_expectation,
        },
    }
    .with_optimum(optimum))
}

/// `ratio` as `f64`, for reporting.
pub fn ratio_f64(r: &ApproxResult) -> Option<f64> {
    r.ratio_vs_oracle.as_ref().and_then(|x| x.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_instance, random_mixed_instance, GeneratorMode};
    use crate::scalar::rational;

    #[test]
    fn walk_best_is_monotone_and_correct() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for seed in 0..30 {
            let f = random_instance(12, 3, 60, GeneratorMode::Uniform, seed).unwrap().instance;
            for mode in [Mode::Sat, Mode::Nae] {
                let w = random_walk(&f, mode, &mut rng);
                assert!(w.improvements.windows(2).all(|p| p[0] < p[1]));
                assert_eq!(count_satisfied(&f, &w.assignment, mode), w.score);
            }
        }
    }

    #[test]
    fn single_nae_2_clause() {
        let f = Instance::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let r = random_walk_repeat(&f, Mode::Nae, &rational(1, 1), 50, 3, Some(1)).unwrap();
        assert_eq!(r.achieved, 1);
        assert!(matches!(r.trace, ApproxTrace::RandomWalk { successes: Some(50), .. }));
        assert!(matches!(random_walk_repeat(&f, Mode::Nae, &rational(1, 1), 0, 3, None), Err(ApproxError::NoRestarts)));
    }

    #[test]
    fn repeat_is_deterministic_and_single_restart_matches_walk() {
        let f = random_instance(14, 3, 70, GeneratorMode::Uniform, 9).unwrap().instance;
        let a = random_walk_repeat(&f, Mode::Nae, &rational(7, 8), 40, 5, None).unwrap();
        let b = random_walk_repeat(&f, Mode::Nae, &rational(7, 8), 40, 5, None).unwrap();
        assert_eq!(a, b);
        let one = random_walk_repeat(&f, Mode::Nae, &rational(7, 8), 1, 5, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        rng.set_stream(0);
        assert_eq!(one.achieved, random_walk(&f, Mode::Nae, &mut rng).score);
    }

    #[test]
    fn choose_t_examples() {
        assert_eq!(choose_t(30, 3, 1.0, 2.0, Mode::Nae).unwrap(), 0);
        assert_eq!(choose_t(30, 3, 0.9, 2.0, Mode::Nae).unwrap(), 1);
        for n in 1..50 {
            for d in 0..=10 {
                assert!(choose_t(n, 3, d as f64 / 10.0, 3.0, Mode::Nae).unwrap() < n);
            }
        }
    }

    #[test]
    fn completion_examples() {
        let fe = vec![Clause::from_dimacs(&[1, 2]).unwrap()];
        let alpha1: PartialAssignment = [(2, false)].into_iter().collect();
        let c = cond_prob_complete(&fe, &[1], &alpha1, Mode::Nae, None).unwrap();
        assert_eq!(c.assignment.get(1), Some(true));
        assert_eq!(c.satisfied, 1);
        let fe = vec![Clause::from_dimacs(&[1, 2, -3]).unwrap()];
        let alpha1: PartialAssignment = [(2, true), (3, true)].into_iter().collect();
        for seed in [None, Some(1), Some(2)] {
            assert_eq!(cond_prob_complete(&fe, &[1], &alpha1, Mode::Nae, seed).unwrap().satisfied, 1);
        }
        let bad = cond_prob_complete(&fe, &[1], &PartialAssignment::new(), Mode::Nae, None);
        assert!(matches!(bad, Err(ApproxError::PreconditionViolated(_))));
    }

    #[test]
    fn reduce_solve_invariants() {
        for seed in 0..40u64 {
            let n = 8 + seed as usize % 6;
            let f = random_mixed_instance(n, &[2, 3], 4 * n, seed % 2 == 0, seed).unwrap().instance;
            for t in [0, 1, n / 3, n - 1] {
                let opts = ReduceOptions { t_override: Some(t), compare_oracle: true, ..Default::default() };
                let r = reduce_solve(&f, Mode::Nae, &rational(9, 10), &opts).unwrap();
                assert_eq!(count_satisfied(&f, &r.assignment, Mode::Nae), r.achieved);
                let ApproxTrace::ReduceSolve { fe_clauses, completion_satisfied, residual_optimum, steps, .. } =
                    &r.trace
                else {
                    unreachable!()
                };
                assert!(2 * completion_satisfied >= *fe_clauses);
                assert!(r.achieved >= *residual_optimum);
                assert!(steps.iter().all(|s| s.bound_ok));
                if t == 0 {
                    assert_eq!(r.ratio_vs_oracle, Some(rational(1, 1)));
                }
            }
        }
    }

    #[test]
    fn reduce_solve_errors() {
        let f = random_instance(6, 4, 12, GeneratorMode::Uniform, 1).unwrap().instance;
        let r = reduce_solve(
            &f,
            Mode::Nae,
            &rational(1, 1),
            &ReduceOptions { engine: ExactEngine::Williams, ..Default::default() },
        );
        assert!(matches!(r, Err(ApproxError::ResidualTooLong { len: 4, .. })));
        let r =
            reduce_solve(&f, Mode::Nae, &rational(1, 2), &ReduceOptions { t_override: Some(6), ..Default::default() });
        assert!(matches!(r, Err(ApproxError::InfeasibleT { .. })));
        let r = reduce_solve(&f, Mode::Nae, &rational(1, 1), &ReduceOptions::default()).unwrap();
        assert_eq!(r.achieved, brute_max(&f, Mode::Nae).unwrap().0);
    }
}
