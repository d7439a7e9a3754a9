//! Ground truth: exhaustive search over all assignments and an exact LP solver
//! that is independent of the closed-form LP solution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{is_nae_point, LpSolution};
use crate::formula::{Assignment, Instance, Mode};
use crate::linalg::{solve, LinalgError};
use crate::Rational;

/// Largest instance accepted by [`brute_decide`].
pub const DECIDE_LIMIT: usize = 30;
/// Largest instance accepted by [`brute_max`].
pub const MAX_LIMIT: usize = 24;
/// Largest `k` whose LP constraints are checked point by point.
pub const LP_BRUTE_LIMIT: u32 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} variables; exhaustive search is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("k = {0} outside 3..=16")]
    KOutOfRange(u32),
    #[error("LP system is singular")]
    SingularSystem,
    #[error("π table has {got} entries, expected {want}")]
    TableSize { got: usize, want: usize },
    #[error("π table is not symmetric and k = {0} is too large for point-wise checking")]
    NotSymmetric(u32),
}

impl From<LinalgError> for OracleError {
    fn from(_: LinalgError) -> Self {
        OracleError::SingularSystem
    }
}

const LANES: usize = 64;
const LANE_BITS: usize = 6;

/// Lane pattern of variable `j < 6` inside one 64-assignment word.
const PATTERNS: [u64; LANE_BITS] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Clauses as (var index, positive) lists, ready for word evaluation.
struct Packed {
    n: usize,
    clauses: Vec<Vec<(usize, bool)>>,
    mode: Mode,
}

impl Packed {
    fn new(f: &Instance, mode: Mode) -> Self {
        let clauses = f
            .clauses()
            .iter()
            .map(|c| c.literals().iter().map(|l| (l.var() as usize - 1, l.is_positive())).collect())
            .collect();
        Packed { n: f.num_vars(), clauses, mode }
    }

    fn words(&self) -> u64 {
        1u64 << self.n.saturating_sub(LANE_BITS)
    }

    fn valid_mask(&self) -> u64 {
        if self.n >= LANE_BITS {
            u64::MAX
        } else {
            (1u64 << (1usize << self.n)) - 1
        }
    }

    #[inline]
    fn var_word(&self, word: u64, var: usize) -> u64 {
        if var < LANE_BITS {
            PATTERNS[var]
        } else if (word >> (var - LANE_BITS)) & 1 == 1 {
            u64::MAX
        } else {
            0
        }
    }

    /// Lanes in which clause `c` is satisfied.
    #[inline]
    fn clause_word(&self, word: u64, c: &[(usize, bool)]) -> u64 {
        let mut any = 0u64;
        let mut all = u64::MAX;
        for &(v, pos) in c {
            let x = self.var_word(word, v);
            let lit = if pos { x } else { !x };
            any |= lit;
            all &= lit;
        }
        match self.mode {
            Mode::Sat => any,
            Mode::Nae => any & !all,
        }
    }
}

fn lane_assignment(n: usize, word: u64, lane: u32) -> Assignment {
    Assignment::from_index(n, (word << LANE_BITS) | lane as u64)
}

/// First satisfying assignment in index order (variable 1 is the lowest bit), or `None`.
pub fn brute_decide(f: &Instance, mode: Mode) -> Result<Option<Assignment>, OracleError> {
    brute_decide_limit(f, mode, DECIDE_LIMIT)
}

pub fn brute_decide_limit(f: &Instance, mode: Mode, limit: usize) -> Result<Option<Assignment>, OracleError> {
    if f.num_vars() > limit {
        return Err(OracleError::TooLarge { n: f.num_vars(), limit });
    }
    let p = Packed::new(f, mode);
    let valid = p.valid_mask();
    let hit = (0..p.words()).into_par_iter().find_map_first(|w| {
        let mut sat = valid;
        for c in &p.clauses {
            sat &= p.clause_word(w, c);
            if sat == 0 {
                return None;
            }
        }
        Some((w, sat.trailing_zeros()))
    });
    Ok(hit.map(|(w, lane)| lane_assignment(p.n, w, lane)))
}

/// Number of satisfying assignments.
pub fn brute_count(f: &Instance, mode: Mode) -> Result<u64, OracleError> {
    if f.num_vars() > DECIDE_LIMIT {
        return Err(OracleError::TooLarge { n: f.num_vars(), limit: DECIDE_LIMIT });
    }
    let p = Packed::new(f, mode);
    let valid = p.valid_mask();
    Ok((0..p.words())
        .into_par_iter()
        .map(|w| p.clauses.iter().fold(valid, |acc, c| acc & p.clause_word(w, c)).count_ones() as u64)
        .sum())
}

/// Maximum number of satisfied clauses and the first assignment attaining it.
pub fn brute_max(f: &Instance, mode: Mode) -> Result<(usize, Assignment), OracleError> {
    if f.num_vars() > MAX_LIMIT {
        return Err(OracleError::TooLarge { n: f.num_vars(), limit: MAX_LIMIT });
    }
    let p = Packed::new(f, mode);
    let valid = p.valid_mask();
    let planes = (usize::BITS - f.num_clauses().leading_zeros()).max(1) as usize;
    let (best, w, lane) = (0..p.words())
        .into_par_iter()
        .map(|w| {
            // bit-sliced per-lane counters
            let mut counter = vec![0u64; planes];
            for c in &p.clauses {
                let mut carry = p.clause_word(w, c);
                for plane in counter.iter_mut() {
                    if carry == 0 {
                        break;
                    }
                    let next = *plane & carry;
                    *plane ^= carry;
                    carry = next;
                }
            }
            let mut best = (0usize, w, 0u32);
            let mut found = false;
            for lane in 0..LANES as u32 {
                if (valid >> lane) & 1 == 0 {
                    continue;
                }
                let count = counter
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (b, plane)| acc | ((((plane >> lane) & 1) as usize) << b));
                if !found || count > best.0 {
                    best = (count, w, lane);
                    found = true;
                }
            }
            best
        })
        .reduce(
            || (0, u64::MAX, 0),
            |a, b| {
                if a.0 > b.0 || (a.0 == b.0 && (a.1, a.2) <= (b.1, b.2)) {
                    a
                } else {
                    b
                }
            },
        );
    Ok((best, lane_assignment(p.n, w, lane)))
}

fn binom(n: u32, r: u32) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Solves the conjugate-pair covering LP by reducing to the `k` unknowns
/// `π_1..π_{k-1}, λ` (π depends only on the Hamming weight of a point) and
/// eliminating exactly. The reduction ties every constraint to equality.
pub fn lp_solve_symmetric(k: u32) -> Result<LpSolution, OracleError> {
    if !(3..=16).contains(&k) {
        return Err(OracleError::KOutOfRange(k));
    }
    let q = Rational::new(BigInt::one(), BigInt::from(k - 1));
    let n = k as usize; // unknowns p_1..p_{k-1} then λ
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for j in 1..k {
        let mut row = vec![Rational::zero(); n];
        for y in 1..k {
            let mut coeff = Rational::zero();
            for i in 0..=j.min(y) {
                if y - i > k - j {
                    continue;
                }
                let d = j + y - 2 * i;
                coeff += Rational::from_integer(binom(j, i) * binom(k - j, y - i))
                    * crate::scalar::Scalar::powi_exact(&q, d);
            }
            row[(y - 1) as usize] = coeff;
        }
        row[n - 1] = -Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    let mut norm = vec![Rational::zero(); n];
    for y in 1..k {
        norm[(y - 1) as usize] = Rational::from_integer(binom(k, y));
    }
    a.push(norm);
    b.push(Rational::one());

    let x = solve(&a, &b)?;
    let mut pi_by_distance = vec![Rational::zero(); k as usize + 1];
    for y in 1..k {
        pi_by_distance[y as usize] = x[(y - 1) as usize].clone();
    }
    Ok(LpSolution { k, lambda: x[n - 1].clone(), pi_by_distance })
}

/// Outcome of checking a `π` table against the LP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCheck {
    pub k: u32,
    /// Points `a*` with `Σ_a π(a) (k-1)^{-d(a,a*)} < λ`.
    pub violated: Vec<u32>,
    /// Smallest left-hand side over all `a* ∈ A`.
    pub min_lhs: Rational,
    pub sum: Rational,
    pub nonnegative: bool,
    pub support_ok: bool,
}

impl LpCheck {
    pub fn feasible(&self) -> bool {
        self.violated.is_empty() && self.sum == Rational::one() && self.nonnegative && self.support_ok
    }
}

/// Checks a full `2^k`-entry `π` table against every LP constraint at value `λ`.
///
/// Up to [`LP_BRUTE_LIMIT`] every pair `(a, a*)` is evaluated exactly; above it
/// the table must depend only on Hamming weight and one representative per
/// weight class is evaluated.
pub fn check_lp_constraints(k: u32, pi: &[Rational], lambda: &Rational) -> Result<LpCheck, OracleError> {
    if !(3..=16).contains(&k) {
        return Err(OracleError::KOutOfRange(k));
    }
    let size = 1usize << k;
    if pi.len() != size {
        return Err(OracleError::TableSize { got: pi.len(), want: size });
    }
    let nonnegative = pi.iter().all(|p| !p.is_negative());
    let support_ok = pi[0].is_zero() && pi[size - 1].is_zero();
    let pow: Vec<BigInt> = (0..=k).map(|e| num_traits::pow(BigInt::from(k - 1), e as usize)).collect();

    // Scale to integers: lhs(a*) * L * (k-1)^k = Σ N(a) (k-1)^{k-d(a,a*)}.
    // Pointwise, `terms` lists (point, multiplicity 1); by class, one entry per
    // Hamming weight with its binomial multiplicity folded in per star.
    let (entries, symmetric): (Vec<&Rational>, bool) = if k <= LP_BRUTE_LIMIT {
        (pi.iter().collect(), false)
    } else {
        let class: Vec<&Rational> = (0..=k).map(|y| &pi[(1usize << y) - 1]).collect();
        if !(0..size).all(|a| pi[a] == *class[a.count_ones() as usize]) {
            return Err(OracleError::NotSymmetric(k));
        }
        (class, true)
    };
    let lcm = entries.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let numer: Vec<BigInt> = entries.iter().map(|p| &lcm / p.denom() * p.numer()).collect();
    let binom = |n: u32, r: u32| -> BigInt {
        if r > n {
            return BigInt::zero();
        }
        (0..r).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
    };
    let total: BigInt =
        if symmetric { (0..=k).map(|y| binom(k, y) * &numer[y as usize]).sum() } else { numer.iter().sum() };
    let sum = Rational::new(total, lcm.clone());
    let scale = Rational::from_integer(lcm.clone() * &pow[k as usize]);
    let lhs_at = |star: u32| -> BigInt {
        if symmetric {
            // a of weight y overlapping a* (weight j) in i ones lies at distance j + y - 2i
            let j = star.count_ones();
            let mut acc = BigInt::zero();
            for y in 0..=k {
                for i in 0..=y.min(j) {
                    let count = binom(j, i) * binom(k - j, y - i);
                    if !count.is_zero() {
                        acc += count * &numer[y as usize] * &pow[(k + 2 * i - j - y) as usize];
                    }
                }
            }
            acc
        } else {
            numer
                .iter()
                .enumerate()
                .filter(|(_, n)| !n.is_zero())
                .map(|(a, n)| n * &pow[(k - (a as u32 ^ star).count_ones()) as usize])
                .sum()
        }
    };

    let stars: Vec<u32> = if symmetric {
        (1..k).map(|j| (1u32 << j) - 1).collect()
    } else {
        (0..size as u32).filter(|&s| is_nae_point(k, s)).collect()
    };
    let values: Vec<(u32, BigInt)> = stars.par_iter().map(|&s| (s, lhs_at(s))).collect();
    let target = lambda * &scale;
    let mut violated = Vec::new();
    let mut min = None::<BigInt>;
    for (s, v) in values {
        if Rational::from_integer(v.clone()) < target {
            violated.push(s);
        }
        if min.as_ref().is_none_or(|m| v < *m) {
            min = Some(v);
        }
    }
    let min_lhs = Rational::from_integer(min.unwrap_or_default()) / scale;
    Ok(LpCheck { k, violated, min_lhs, sum, nonnegative, support_ok })
}
