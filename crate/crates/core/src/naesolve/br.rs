use rayon::prelude::*;
use serde::Serialize;

use crate::formula::{Assignment, Instance, PartialAssignment};
use crate::transform::{fix_and_simplify, greedy_pairs, PairSet};
use crate::Rational;

use super::{dpll, solve_2sat, SolveOutcome, SCAN_CHUNK};

pub enum BrResult {
    Solved(SolveOutcome),
    Pairs(PairSet),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BrStats {
    pub pairs: usize,
    /// `(2^k - 2)^{|P|}` when branching, 0 otherwise (saturating).
    pub branches_total: u64,
    /// Branches up to and including the first success, in enumeration order.
    pub branches_explored: u64,
}

/// Partial assignment of branch `index`: digit `i` (base `2^k - 2`) picks the
/// local point `digit + 1` of pair `i`, so `0^k` and `1^k` never occur.
pub(crate) fn branch_assignment(pairs: &PairSet, index: u64) -> PartialAssignment {
    let mut rest = index;
    let mut partial = PartialAssignment::new();
    for p in pairs.pairs() {
        let base = (1u64 << p.len()) - 2;
        let point = (rest % base) as u32 + 1;
        rest /= base;
        for (v, b) in p.assignment_for(point) {
            partial.assign(v, b).expect("pairs are variable-disjoint");
        }
    }
    partial
}

fn solve_branch(g: &Instance, partial: &PartialAssignment) -> Option<Assignment> {
    let residual = fix_and_simplify(g, partial).ok()?;
    let outcome =
        if residual.max_len() <= 2 { solve_2sat(&residual).expect("length checked") } else { dpll(&residual) };
    let mut alpha = outcome.assignment()?.clone();
    alpha.apply(partial);
    Some(alpha)
}

/// Branching phase on a conjugate-closed instance. With fewer than `ν·n`
/// independent pairs, every NAE-consistent assignment of the pairs is tried and
/// the shortened residual is solved; otherwise the pairs are returned.
pub fn br(g: &Instance, nu: &Rational) -> (BrResult, BrStats) {
    let pairs = greedy_pairs(g);
    let mut stats = BrStats { pairs: pairs.len(), ..Default::default() };
    let threshold = nu * Rational::from_integer(g.num_vars().into());
    if Rational::from_integer(pairs.len().into()) >= threshold {
        return (BrResult::Pairs(pairs), stats);
    }
    let total = pairs
        .pairs()
        .iter()
        .try_fold(1u64, |acc, p| acc.checked_mul((1u64 << p.len()) - 2))
        .expect("branch count fits in u64 below the threshold");
    stats.branches_total = total;

    let mut start = 0;
    while start < total {
        let end = (start + SCAN_CHUNK).min(total);
        let hit = (start..end).into_par_iter().find_map_first(|i| {
            let partial = branch_assignment(&pairs, i);
            solve_branch(g, &partial).map(|a| (i, a))
        });
        if let Some((i, alpha)) = hit {
            stats.branches_explored = i + 1;
            return (BrResult::Solved(SolveOutcome::Satisfiable(alpha)), stats);
        }
        start = end;
    }
    stats.branches_explored = total;
    (BrResult::Solved(SolveOutcome::Unsatisfiable), stats)
}
