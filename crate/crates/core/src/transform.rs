//! Conjugate pairs: the NAE→SAT transformation, greedy extraction of a
//! maximal set of variable-disjoint pairs, and partial-assignment simplification.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::formula::{Clause, Instance, Literal, PartialAssignment, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("instance contains a 1-clause, which can never be NAE-satisfied")]
    UnitClausePresent,
    #[error("empty clause derived (conflict)")]
    Conflict,
}

/// Order-independent identity of a clause: sorted variables plus a polarity mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClauseKey {
    vars: Vec<Var>,
    positive_mask: u64,
}

impl ClauseKey {
    pub fn of(clause: &Clause) -> Self {
        assert!(clause.len() <= 64, "clause keys support at most 64 literals");
        let mut lits: Vec<Literal> = clause.literals().to_vec();
        lits.sort_unstable_by_key(|l| l.var());
        let positive_mask = lits.iter().enumerate().fold(0u64, |m, (i, l)| m | ((l.is_positive() as u64) << i));
        ClauseKey { vars: lits.iter().map(|l| l.var()).collect(), positive_mask }
    }

    pub fn conjugate(&self) -> Self {
        let full = if self.vars.len() == 64 { u64::MAX } else { (1u64 << self.vars.len()) - 1 };
        ClauseKey { vars: self.vars.clone(), positive_mask: self.positive_mask ^ full }
    }
}

/// Same variables, every polarity flipped.
pub fn conjugate(clause: &Clause) -> Clause {
    Clause::new(clause.literals().iter().map(|l| l.negate())).expect("conjugate of a valid clause is valid")
}

/// A clause and its conjugate over the same variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatePair {
    pub clause: Clause,
    pub conjugate: Clause,
}

impl ConjugatePair {
    pub fn new(clause: Clause) -> Self {
        let conjugate = conjugate(&clause);
        ConjugatePair { clause, conjugate }
    }

    pub fn len(&self) -> usize {
        self.clause.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clause.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.clause.vars()
    }

    /// Variable values realising local point `point`, where bit `j` is the
    /// truth value of the `j`-th literal of `clause`.
    pub fn assignment_for(&self, point: u32) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.clause.literals().iter().enumerate().map(move |(j, l)| (l.var(), (point >> j & 1 == 1) == l.is_positive()))
    }

    /// Local point (literal-truth bitmask) of a variable-value lookup.
    pub fn point_of(&self, value: impl Fn(Var) -> bool) -> u32 {
        self.clause.literals().iter().enumerate().fold(0u32, |p, (j, l)| p | ((l.value_of(value(l.var())) as u32) << j))
    }
}

/// Pairwise variable-disjoint conjugate pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairSet {
    pairs: Vec<ConjugatePair>,
}

impl PairSet {
    pub fn pairs(&self) -> &[ConjugatePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn vars(&self) -> HashSet<Var> {
        self.pairs.iter().flat_map(|p| p.vars()).collect()
    }

    /// Adds a pair if it is disjoint from the current ones.
    pub fn try_push(&mut self, pair: ConjugatePair) -> bool {
        let used = self.vars();
        if pair.vars().any(|v| used.contains(&v)) {
            return false;
        }
        self.pairs.push(pair);
        true
    }

    /// True when no conjugate pair of `instance` among clauses of length `k`
    /// (the instance's maximum) is variable-disjoint from every selected pair.
    pub fn is_maximal_in(&self, instance: &Instance) -> bool {
        let k = instance.max_len();
        let used = self.vars();
        let keys: HashSet<ClauseKey> = instance.clauses().iter().map(ClauseKey::of).collect();
        !instance.clauses().iter().any(|c| {
            c.len() == k && keys.contains(&ClauseKey::of(c).conjugate()) && c.vars().all(|v| !used.contains(&v))
        })
    }
}

/// Adds the conjugate of every clause. Multiplicities: each key appears
/// `max(count(key), count(conjugate key))` times, so closed inputs are fixed points.
pub fn to_conjugate_instance(instance: &Instance) -> Result<Instance, TransformError> {
    if instance.has_unit_clause() {
        return Err(TransformError::UnitClausePresent);
    }
    let mut count: HashMap<ClauseKey, usize> = HashMap::new();
    for c in instance.clauses() {
        *count.entry(ClauseKey::of(c)).or_default() += 1;
    }
    let target = |key: &ClauseKey| -> usize {
        count.get(key).copied().unwrap_or(0).max(count.get(&key.conjugate()).copied().unwrap_or(0))
    };
    let mut emitted: HashMap<ClauseKey, usize> = HashMap::new();
    let mut out = Vec::with_capacity(instance.num_clauses() * 2);
    for c in instance.clauses() {
        let key = ClauseKey::of(c);
        let conj_key = key.conjugate();
        for (clause, key) in [(c.clone(), key), (conjugate(c), conj_key)] {
            let e = emitted.entry(key.clone()).or_default();
            if *e < target(&key) {
                *e += 1;
                out.push(clause);
            }
        }
    }
    Ok(Instance::new(instance.num_vars(), out).expect("same variable range"))
}

/// Scans clauses in order and keeps each maximum-length clause whose conjugate
/// is present and whose variables are untouched by the pairs chosen so far.
pub fn greedy_pairs(instance: &Instance) -> PairSet {
    let k = instance.max_len();
    let mut set = PairSet::default();
    if k < 2 {
        return set;
    }
    let keys: HashSet<ClauseKey> = instance.clauses().iter().map(ClauseKey::of).collect();
    let mut used = vec![false; instance.num_vars() + 1];
    for c in instance.clauses() {
        if c.len() != k || c.vars().any(|v| used[v as usize]) {
            continue;
        }
        if !keys.contains(&ClauseKey::of(c).conjugate()) {
            continue;
        }
        for v in c.vars() {
            used[v as usize] = true;
        }
        set.pairs.push(ConjugatePair::new(c.clone()));
    }
    set
}

/// Removes satisfied clauses and false literals. Variable numbering is kept.
pub fn fix_and_simplify(instance: &Instance, partial: &PartialAssignment) -> Result<Instance, TransformError> {
    let mut out = Vec::with_capacity(instance.num_clauses());
    'clauses: for c in instance.clauses() {
        let mut kept = Vec::with_capacity(c.len());
        for &l in c.literals() {
            match partial.get(l.var()) {
                Some(v) if l.value_of(v) => continue 'clauses,
                Some(_) => {}
                None => kept.push(l),
            }
        }
        if kept.is_empty() {
            return Err(TransformError::Conflict);
        }
        out.push(Clause::new(kept).expect("subset of a valid clause"));
    }
    Ok(Instance::new(instance.num_vars(), out).expect("same variable range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_instance, Assignment, GeneratorMode, Mode};
    use crate::oracle::brute_decide;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(n: usize, cs: &[&[i64]]) -> Instance {
        Instance::from_dimacs_clauses(n, cs).unwrap()
    }

    fn multiset(i: &Instance) -> Vec<(Vec<u32>, u64)> {
        let mut v: Vec<_> = i
            .clauses()
            .iter()
            .map(|c| {
                let k = ClauseKey::of(c);
                (k.vars, k.positive_mask)
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn conjugate_examples() {
        let c = Clause::from_dimacs(&[1, -2]).unwrap();
        assert_eq!(conjugate(&c), Clause::from_dimacs(&[-1, 2]).unwrap());
        assert_eq!(conjugate(&conjugate(&c)), c);
    }

    #[test]
    fn conjugate_nae_equivalence_on_three_clauses() {
        for signs in 0..8u32 {
            let c = Clause::new((0..3).map(|i| Literal::new(i + 1, signs >> i & 1 == 1))).unwrap();
            let cc = conjugate(&c);
            for idx in 0..8 {
                let a = Assignment::from_index(3, idx);
                assert_eq!(
                    c.is_satisfied(&a, Mode::Nae),
                    c.is_satisfied(&a, Mode::Sat) && cc.is_satisfied(&a, Mode::Sat)
                );
            }
        }
    }

    #[test]
    fn transform_examples() {
        let f = inst(2, &[&[1, 2]]);
        assert_eq!(to_conjugate_instance(&f).unwrap(), inst(2, &[&[1, 2], &[-1, -2]]));
        assert_eq!(to_conjugate_instance(&inst(2, &[&[1]])), Err(TransformError::UnitClausePresent));
        // clause whose conjugate is already present is not duplicated
        let g = inst(3, &[&[1, 2, 3], &[-1, -2, -3], &[1, -2]]);
        let t = to_conjugate_instance(&g).unwrap();
        assert_eq!(t.num_clauses(), 4);
    }

    #[test]
    fn transform_is_idempotent() {
        for seed in 0..50 {
            let f = random_instance(8, 3, 12, GeneratorMode::Uniform, seed).unwrap().instance;
            let once = to_conjugate_instance(&f).unwrap();
            let twice = to_conjugate_instance(&once).unwrap();
            assert_eq!(multiset(&once), multiset(&twice));
        }
    }

    #[test]
    fn transform_equisatisfiable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..150 {
            let n = rng.gen_range(3..=12);
            let m = rng.gen_range(1..=3 * n);
            let f = random_instance(n, 3, m, GeneratorMode::Uniform, seed).unwrap().instance;
            let t = to_conjugate_instance(&f).unwrap();
            let nae = brute_decide(&f, Mode::Nae).unwrap();
            let sat = brute_decide(&t, Mode::Sat).unwrap();
            assert_eq!(nae.is_some(), sat.is_some());
            if let Some(a) = sat {
                assert!(f.is_satisfied_by(&a, Mode::Nae));
            }
        }
    }

    #[test]
    fn greedy_examples() {
        let disjoint = to_conjugate_instance(&inst(6, &[&[1, 2, 3], &[4, 5, 6]])).unwrap();
        assert_eq!(greedy_pairs(&disjoint).len(), 2);
        let sharing = to_conjugate_instance(&inst(5, &[&[1, 2, 3], &[3, 4, 5]])).unwrap();
        let p = greedy_pairs(&sharing);
        assert_eq!(p.len(), 1);
        assert!(p.is_maximal_in(&sharing));
    }

    #[test]
    fn greedy_is_maximal_and_residual_shrinks() {
        for seed in 0..200u64 {
            let n = 6 + (seed % 20) as usize;
            let k = 3 + (seed % 2) as usize;
            let f = random_instance(n, k, 2 * n, GeneratorMode::Uniform, seed).unwrap().instance;
            let t = to_conjugate_instance(&f).unwrap();
            let p = greedy_pairs(&t);
            assert!(p.is_maximal_in(&t));
            // pairwise disjoint
            let total: usize = p.pairs().iter().map(|q| q.len()).sum();
            assert_eq!(total, p.vars().len());
            // fixing every pair to any NAE point leaves a (k-1)-instance
            let mut partial = PartialAssignment::new();
            for pair in p.pairs() {
                for (v, b) in pair.assignment_for(1) {
                    partial.assign(v, b).unwrap();
                }
            }
            if let Ok(res) = fix_and_simplify(&t, &partial) {
                assert!(res.max_len() < k);
            }
        }
    }

    #[test]
    fn fix_examples() {
        let f = inst(2, &[&[1, 2]]);
        let x1 = |b| [(1, b)].into_iter().collect::<PartialAssignment>();
        assert_eq!(fix_and_simplify(&f, &x1(true)).unwrap().num_clauses(), 0);
        assert_eq!(fix_and_simplify(&f, &x1(false)).unwrap(), inst(2, &[&[2]]));
        assert_eq!(fix_and_simplify(&inst(1, &[&[1]]), &x1(false)), Err(TransformError::Conflict));
    }

    #[test]
    fn fix_preserves_extensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..100 {
            let n = rng.gen_range(3..=10);
            let f = random_instance(n, 3, 2 * n, GeneratorMode::Uniform, seed).unwrap().instance;
            let fixed: PartialAssignment = (1..=n as u32)
                .filter(|_| rng.gen_bool(0.4))
                .collect::<Vec<_>>()
                .into_iter()
                .map(|v| (v, rng.gen()))
                .collect();
            let simplified = fix_and_simplify(&f, &fixed);
            for idx in 0..(1u64 << n) {
                let a = Assignment::from_index(n, idx);
                if fixed.iter().any(|(v, b)| a.get(v) != b) {
                    continue;
                }
                let lhs = f.is_satisfied_by(&a, Mode::Sat);
                let rhs = simplified.as_ref().map(|s| s.is_satisfied_by(&a, Mode::Sat)).unwrap_or(false);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pair_point_round_trip() {
        let pair = ConjugatePair::new(Clause::from_dimacs(&[3, -1, 2]).unwrap());
        for point in 0..8u32 {
            let vals: HashMap<Var, bool> = pair.assignment_for(point).collect();
            assert_eq!(pair.point_of(|v| vals[&v]), point);
        }
        // literal-space 0 falsifies the clause, 7 falsifies the conjugate
        let vals: HashMap<Var, bool> = pair.assignment_for(0).collect();
        let a = Assignment::from_bits((1..=3).map(|v| vals[&v]).collect());
        assert!(!pair.clause.is_satisfied(&a, Mode::Sat));
    }
}
