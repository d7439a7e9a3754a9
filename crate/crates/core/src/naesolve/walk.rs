use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Assignment, Instance, Mode};

/// Schöning's walk from a uniformly random start.
pub fn schoening<R: Rng + ?Sized>(f: &Instance, mode: Mode, steps: usize, rng: &mut R) -> Option<Assignment> {
    let start = Assignment::random(f.num_vars(), rng);
    schoening_from(f, mode, start, steps, rng)
}

/// Repeatedly flips a random variable of a random unsatisfied clause.
pub fn schoening_from<R: Rng + ?Sized>(
    f: &Instance,
    mode: Mode,
    mut alpha: Assignment,
    steps: usize,
    rng: &mut R,
) -> Option<Assignment> {
    let mut unsat = Vec::with_capacity(f.num_clauses());
    for step in 0..=steps {
        unsat.clear();
        unsat.extend(f.clauses().iter().filter(|c| !c.is_satisfied(&alpha, mode)));
        if unsat.is_empty() {
            return Some(alpha);
        }
        if step == steps {
            break;
        }
        let c = unsat.choose(rng).expect("non-empty");
        let l = c.literals().choose(rng).expect("non-empty clause");
        alpha.flip(l.var());
    }
    None
}
