//! Deterministic NAE-k-SAT solving: branching on conjugate pairs when they are
//! few, covering-code local search when they are many.

mod br;
mod distribution;
mod dls;
mod dpll;
mod twosat;
mod walk;

pub use br::{br, BrResult, BrStats};
pub use distribution::{pair_weight, sample_pair_assignment, PairDistribution};
pub use dls::{ball_search, covers, dls, hamming_code, pair_code, BallResult, DlsStats};
pub use dpll::dpll;
pub use twosat::solve_2sat;
pub use walk::{schoening, schoening_from};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{nae_det_bound, MAX_K};
use crate::formula::{Assignment, Instance};
use crate::transform::to_conjugate_instance;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NaeError {
    #[error("clause length {k} exceeds the supported maximum {max}")]
    KTooLarge { k: usize, max: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("strategy misuse: {0}")]
    StrategyMisuse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "assignment", rename_all = "lowercase")]
pub enum SolveOutcome {
    Satisfiable(Assignment),
    Unsatisfiable,
}

impl SolveOutcome {
    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            SolveOutcome::Satisfiable(a) => Some(a),
            SolveOutcome::Unsatisfiable => None,
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Satisfiable(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DlsStrategy {
    #[default]
    CoveringCode,
    RandomizedWalk,
}

impl std::str::FromStr for DlsStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "covering-code" => Ok(DlsStrategy::CoveringCode),
            "randomized-walk" => Ok(DlsStrategy::RandomizedWalk),
            other => Err(format!("unknown DLS strategy '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Branching threshold; `None` uses the balancing value for the instance's `k`.
    #[serde(default, with = "crate::formula::opt_rational")]
    pub nu: Option<Rational>,
    pub dls_strategy: DlsStrategy,
    pub walk_restarts: u64,
    #[serde(with = "crate::formula::rational_string")]
    pub ball_radius_fraction: Rational,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            nu: None,
            dls_strategy: DlsStrategy::CoveringCode,
            walk_restarts: 1000,
            ball_radius_fraction: Rational::new(1.into(), 3.into()),
            seed: 0,
        }
    }
}

impl SolverConfig {
    /// The ν to use for clause width `k`.
    pub fn nu_for(&self, k: usize) -> Result<Rational, NaeError> {
        let nu = match &self.nu {
            Some(nu) => nu.clone(),
            None => {
                let det = nae_det_bound::<f64>(k as u32).map_err(|e| NaeError::InvalidConfig(e.to_string()))?;
                // six decimals keep the value readable; the balance is flat near ν
                let micro = (det.nu * 1e6).round() as i64;
                Rational::new(micro.into(), 1_000_000.into())
            }
        };
        let zero = Rational::from_integer(0.into());
        let cap = Rational::new(1.into(), (k as i64).into());
        if nu <= zero || nu >= cap {
            return Err(NaeError::InvalidConfig(format!("ν = {nu} outside (0, 1/{k})")));
        }
        Ok(nu)
    }

    pub fn validate(&self) -> Result<(), NaeError> {
        let f = &self.ball_radius_fraction;
        if *f <= Rational::from_integer(0.into()) || *f > Rational::new(1.into(), 2.into()) {
            return Err(NaeError::InvalidConfig(format!("ball radius fraction {f} outside (0, 1/2]")));
        }
        Ok(())
    }
}

/// Which engine produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolvePath {
    /// No clauses, or a 1-clause (never NAE-satisfiable).
    Trivial,
    TwoSat,
    Br,
    Dls,
    /// Randomized DLS found nothing; the covering-code DLS decided.
    DlsFallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveTrace {
    pub k: usize,
    pub n: usize,
    pub path: SolvePath,
    /// `|P|`, the number of independent conjugate pairs found.
    pub pairs: usize,
    #[serde(with = "crate::formula::rational_string")]
    pub nu: Rational,
    pub branches_total: u64,
    pub branches_explored: u64,
    pub codewords: u64,
    pub ball_nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub trace: SolveTrace,
}

/// Decides NAE-satisfiability of `f`. Returns an NAE-satisfying assignment iff one exists.
pub fn solve_nae(f: &Instance, cfg: &SolverConfig) -> Result<SolveReport, NaeError> {
    cfg.validate()?;
    let n = f.num_vars();
    let k = f.max_len();
    let mut trace = SolveTrace {
        k,
        n,
        path: SolvePath::Trivial,
        pairs: 0,
        nu: Rational::from_integer(0.into()),
        branches_total: 0,
        branches_explored: 0,
        codewords: 0,
        ball_nodes: 0,
    };
    if f.num_clauses() == 0 {
        return Ok(SolveReport { outcome: SolveOutcome::Satisfiable(Assignment::all_false(n)), trace });
    }
    if f.has_unit_clause() {
        return Ok(SolveReport { outcome: SolveOutcome::Unsatisfiable, trace });
    }
    if k > MAX_K as usize {
        return Err(NaeError::KTooLarge { k, max: MAX_K as usize });
    }
    let g = to_conjugate_instance(f).expect("no 1-clauses");
    if k == 2 {
        trace.path = SolvePath::TwoSat;
        return Ok(SolveReport { outcome: solve_2sat(&g)?, trace });
    }

    let nu = cfg.nu_for(k)?;
    trace.nu = nu.clone();
    let (result, stats) = br(&g, &nu);
    trace.pairs = stats.pairs;
    trace.branches_total = stats.branches_total;
    trace.branches_explored = stats.branches_explored;
    let pairs = match result {
        BrResult::Solved(outcome) => {
            trace.path = SolvePath::Br;
            return Ok(SolveReport { outcome, trace });
        }
        BrResult::Pairs(p) => p,
    };

    trace.path = SolvePath::Dls;
    if cfg.dls_strategy == DlsStrategy::RandomizedWalk {
        if let Ok((outcome, stats)) = dls(&g, &pairs, cfg) {
            trace.codewords = stats.codewords;
            return Ok(SolveReport { outcome, trace });
        }
        trace.path = SolvePath::DlsFallback;
    }
    let covering = SolverConfig { dls_strategy: DlsStrategy::CoveringCode, ..cfg.clone() };
    let (outcome, stats) = dls(&g, &pairs, &covering)?;
    trace.codewords = stats.codewords;
    trace.ball_nodes = stats.ball_nodes;
    Ok(SolveReport { outcome, trace })
}

/// Chunk size for deterministic parallel scans: tasks inside a chunk run in
/// parallel, chunks run in order, and the first success by ordinal wins.
pub(crate) const SCAN_CHUNK: u64 = 256;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_instance, GeneratorMode, Mode};
    use crate::oracle::brute_decide;
    use crate::scalar::rational;

    fn check(f: &Instance, cfg: &SolverConfig) -> SolveReport {
        let r = solve_nae(f, cfg).unwrap();
        let want = brute_decide(f, Mode::Nae).unwrap();
        assert_eq!(r.outcome.is_sat(), want.is_some(), "{f}");
        if let Some(a) = r.outcome.assignment() {
            assert!(f.is_satisfied_by(a, Mode::Nae));
        }
        r
    }

    #[test]
    fn trivial_examples() {
        let f = Instance::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let r = check(&f, &SolverConfig::default());
        assert!(r.outcome.is_sat());
        let all = Instance::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]).unwrap();
        assert_eq!(check(&all, &SolverConfig::default()).outcome, SolveOutcome::Unsatisfiable);
        let unit = Instance::from_dimacs_clauses(2, &[&[1], &[1, 2]]).unwrap();
        assert_eq!(check(&unit, &SolverConfig::default()).outcome, SolveOutcome::Unsatisfiable);
        assert!(check(&Instance::empty(3), &SolverConfig::default()).outcome.is_sat());
    }

    #[test]
    fn agrees_with_oracle_on_both_paths() {
        let tiny = SolverConfig { nu: Some(rational(1, 1000)), ..Default::default() };
        let wide = SolverConfig { nu: Some(rational(24, 100)), ..Default::default() };
        let mut paths = std::collections::HashSet::new();
        for seed in 0..60u64 {
            let n = 6 + (seed as usize % 7);
            let k = 3 + (seed as usize % 2);
            let m = [n, 2 * n, 4 * n][seed as usize % 3];
            let mode = if seed % 4 == 0 { GeneratorMode::PlantedNae } else { GeneratorMode::Uniform };
            let f = random_instance(n, k, m, mode, seed).unwrap().instance;
            for cfg in [&tiny, &wide, &SolverConfig::default()] {
                paths.insert(check(&f, cfg).trace.path);
            }
        }
        assert!(paths.contains(&SolvePath::Br) && paths.contains(&SolvePath::Dls));
    }

    #[test]
    fn randomized_strategy_falls_back() {
        let cfg = SolverConfig {
            nu: Some(rational(1, 1000)),
            dls_strategy: DlsStrategy::RandomizedWalk,
            walk_restarts: 20,
            ..Default::default()
        };
        for seed in 0..20u64 {
            let f = random_instance(10, 3, 40, GeneratorMode::Uniform, seed).unwrap().instance;
            check(&f, &cfg);
        }
    }

    #[test]
    fn config_validation() {
        let f = random_instance(8, 3, 10, GeneratorMode::Uniform, 1).unwrap().instance;
        let bad = SolverConfig { nu: Some(rational(1, 2)), ..Default::default() };
        assert!(matches!(solve_nae(&f, &bad), Err(NaeError::InvalidConfig(_))));
        let bad = SolverConfig { ball_radius_fraction: rational(3, 4), ..Default::default() };
        assert!(matches!(solve_nae(&f, &bad), Err(NaeError::InvalidConfig(_))));
        let nu = SolverConfig::default().nu_for(3).unwrap();
        assert!(nu > rational(15, 100) && nu < rational(16, 100));
    }
}
