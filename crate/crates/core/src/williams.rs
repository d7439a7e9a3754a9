//! Exact MAX-2-SAT and MAX-NAE-{2,3}-SAT through maximum-weight triangles.
//!
//! Each clause becomes a polynomial of degree at most two in the 0/1 variables
//! that equals 1 exactly when the clause is satisfied. The variables are split
//! into three parts; every term is charged to one of the three bipartite weight
//! matrices so that the weight of a triangle `(a, b, c)` equals the number of
//! clauses satisfied by the combined assignment.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Assignment, Clause, Instance, Literal, Mode, Var};
use crate::matmul::{multiply, Kernel, Matrix};
use crate::Weight;

/// Largest instance handled (part matrices have `2^{⌈n/3⌉}` rows).
pub const WILLIAMS_LIMIT: usize = 33;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WilliamsError {
    #[error("{mode} clause of length {len} has no quadratic indicator")]
    DegreeTooHigh { len: usize, mode: Mode },
    #[error("instance has {n} variables; limit is {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Integer polynomial of degree ≤ 2 in variables `x_v ∈ {0,1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuadraticPoly {
    pub constant: Weight,
    pub linear: BTreeMap<Var, Weight>,
    /// Keys `(u, v)` with `u < v`.
    pub quadratic: BTreeMap<(Var, Var), Weight>,
}

impl QuadraticPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    fn add_linear(&mut self, v: Var, c: Weight) {
        *self.linear.entry(v).or_insert(0) += c;
    }

    fn add_quadratic(&mut self, u: Var, v: Var, c: Weight) {
        let key = if u < v { (u, v) } else { (v, u) };
        *self.quadratic.entry(key).or_insert(0) += c;
    }

    /// Adds `c · l`.
    fn add_literal(&mut self, l: Literal, c: Weight) {
        if l.is_positive() {
            self.add_linear(l.var(), c);
        } else {
            self.constant += c;
            self.add_linear(l.var(), -c);
        }
    }

    /// Adds `c · l1 · l2` for literals on distinct variables.
    fn add_product(&mut self, l1: Literal, l2: Literal, c: Weight) {
        // l = s + t x with (s, t) = (0, 1) or (1, -1)
        let st = |l: Literal| if l.is_positive() { (0, 1) } else { (1, -1) };
        let (s1, t1) = st(l1);
        let (s2, t2) = st(l2);
        self.constant += c * s1 * s2;
        self.add_linear(l2.var(), c * s1 * t2);
        self.add_linear(l1.var(), c * s2 * t1);
        self.add_quadratic(l1.var(), l2.var(), c * t1 * t2);
    }

    pub fn add(&mut self, other: &QuadraticPoly) {
        self.constant += other.constant;
        for (&v, &c) in &other.linear {
            self.add_linear(v, c);
        }
        for (&(u, v), &c) in &other.quadratic {
            self.add_quadratic(u, v, c);
        }
    }

    pub fn eval(&self, alpha: &Assignment) -> Weight {
        let x = |v: Var| alpha.get(v) as Weight;
        self.constant
            + self.linear.iter().map(|(&v, &c)| c * x(v)).sum::<Weight>()
            + self.quadratic.iter().map(|(&(u, v), &c)| c * x(u) * x(v)).sum::<Weight>()
    }
}

/// Indicator polynomial of "clause satisfied" under `mode`.
pub fn clause_poly(clause: &Clause, mode: Mode) -> Result<QuadraticPoly, WilliamsError> {
    let l = clause.literals();
    let mut p = QuadraticPoly::zero();
    match (mode, l.len()) {
        (Mode::Sat, 1) => p.add_literal(l[0], 1),
        (Mode::Sat, 2) => {
            p.add_literal(l[0], 1);
            p.add_literal(l[1], 1);
            p.add_product(l[0], l[1], -1);
        }
        (Mode::Nae, 1) => {}
        (Mode::Nae, 2) => {
            p.add_literal(l[0], 1);
            p.add_literal(l[1], 1);
            p.add_product(l[0], l[1], -2);
        }
        (Mode::Nae, 3) => {
            for i in 0..3 {
                p.add_literal(l[i], 1);
                p.add_product(l[i], l[(i + 1) % 3], -1);
            }
        }
        (mode, len) => return Err(WilliamsError::DegreeTooHigh { len, mode }),
    }
    Ok(p)
}

pub fn instance_poly(f: &Instance, mode: Mode) -> Result<QuadraticPoly, WilliamsError> {
    let mut p = QuadraticPoly::zero();
    for c in f.clauses() {
        p.add(&clause_poly(c, mode)?);
    }
    Ok(p)
}

/// The three bipartite weight matrices and the variable split behind them.
#[derive(Debug, Clone)]
pub struct TripartiteWeights {
    /// Variables of each part; local bit `i` of a part index is `parts[p][i]`.
    pub parts: [Vec<Var>; 3],
    pub w01: Matrix<Weight>,
    pub w12: Matrix<Weight>,
    pub w02: Matrix<Weight>,
}

/// Charges for one bipartite matrix between a row part and a column part.
#[derive(Default)]
struct Charge {
    constant: Weight,
    row: Vec<(usize, usize, Weight)>,
    col: Vec<(usize, usize, Weight)>,
    cross: Vec<(usize, usize, Weight)>,
}

/// Local polynomial values over all assignments of one part; a linear term is
/// stored as `(i, i, c)`.
fn local_values(bits: usize, terms: &[(usize, usize, Weight)]) -> Vec<Weight> {
    (0..1usize << bits)
        .map(|a| terms.iter().filter(|&&(i, j, _)| (a >> i) & 1 == 1 && (a >> j) & 1 == 1).map(|&(_, _, c)| c).sum())
        .collect()
}

fn charge_matrix(rows_bits: usize, cols_bits: usize, ch: &Charge) -> Matrix<Weight> {
    let rv = local_values(rows_bits, &ch.row);
    let cv = local_values(cols_bits, &ch.col);
    Matrix::from_fn(1 << rows_bits, 1 << cols_bits, |a, c| {
        ch.constant
            + rv[a]
            + cv[c]
            + ch.cross
                .iter()
                .filter(|&&(i, j, _)| (a >> i) & 1 == 1 && (c >> j) & 1 == 1)
                .map(|&(_, _, w)| w)
                .sum::<Weight>()
    })
}

/// Splits `1..=n` into three contiguous parts and builds the weight matrices.
///
/// Cross-part quadratic terms go to the matrix of their two parts; linear and
/// internal quadratic terms of part `p` go to `W_{p,(p+1) mod 3}`; the constant
/// goes to `W_01`.
pub fn build_weights(f: &Instance, mode: Mode) -> Result<TripartiteWeights, WilliamsError> {
    Ok(build_weights_from_poly(&instance_poly(f, mode)?, f.num_vars()))
}

pub fn build_weights_from_poly(poly: &QuadraticPoly, n: usize) -> TripartiteWeights {
    let s0 = n.div_ceil(3);
    let s1 = (n - s0).div_ceil(2);
    let bounds = [0, s0, s0 + s1, n];
    let parts: [Vec<Var>; 3] = std::array::from_fn(|p| ((bounds[p] + 1)..=bounds[p + 1]).map(|v| v as Var).collect());
    let locate = |v: Var| -> (usize, usize) {
        let i = v as usize - 1;
        let p = (0..3).find(|&p| i < bounds[p + 1]).expect("variable in range");
        (p, i - bounds[p])
    };

    // matrices indexed 0: (0,1), 1: (1,2), 2: (0,2)
    let mut ch: [Charge; 3] = Default::default();
    ch[0].constant = poly.constant;
    // internal terms of part p land on matrix p; row side for p = 0, 1 and column side of W_02 for p = 2
    let mut internal = |p: usize, i: usize, j: usize, c: Weight| match p {
        0 => ch[0].row.push((i, j, c)),
        1 => ch[1].row.push((i, j, c)),
        _ => ch[2].col.push((i, j, c)),
    };
    let mut cross = Vec::new();
    for (&v, &c) in &poly.linear {
        if c != 0 {
            let (p, i) = locate(v);
            internal(p, i, i, c);
        }
    }
    for (&(u, v), &c) in &poly.quadratic {
        if c == 0 {
            continue;
        }
        let ((pu, iu), (pv, iv)) = (locate(u), locate(v));
        if pu == pv {
            internal(pu, iu, iv, c);
        } else {
            cross.push(((pu, iu), (pv, iv), c));
        }
    }
    for ((pu, iu), (pv, iv), c) in cross {
        // pu < pv since u < v and parts are contiguous
        let m = match (pu, pv) {
            (0, 1) => 0,
            (1, 2) => 1,
            _ => 2,
        };
        ch[m].cross.push((iu, iv, c));
    }
    let sizes = [s0, s1, n - s0 - s1];
    TripartiteWeights {
        w01: charge_matrix(sizes[0], sizes[1], &ch[0]),
        w12: charge_matrix(sizes[1], sizes[2], &ch[1]),
        w02: charge_matrix(sizes[0], sizes[2], &ch[2]),
        parts,
    }
}

/// Best triangle value and its lexicographically smallest witness `(a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub weight: Weight,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

fn distinct_desc(m: &Matrix<Weight>) -> Vec<Weight> {
    let mut v: Vec<Weight> = m.values().to_vec();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v.dedup();
    v
}

/// Maximises `W01[a][b] + W12[b][c] + W02[a][c]`.
///
/// For every pair of realised values `(k1, k2)` the indicator product
/// `[W01 = k1] · [W12 = k2]` marks the `(a, c)` joined by some `b`; pairs that
/// cannot beat the current best even with the largest `W02` entry are skipped.
pub fn max_weight_triangle(w: &TripartiteWeights, kernel: Kernel) -> Triangle {
    let (na, nb, nc) = (w.w01.rows(), w.w01.cols(), w.w12.cols());
    let k1s = distinct_desc(&w.w01);
    let k2s = distinct_desc(&w.w12);
    let w02_max = *w.w02.values().iter().max().expect("non-empty");
    let mut pairs: Vec<(Weight, Weight)> = k1s.iter().flat_map(|&a| k2s.iter().map(move |&b| (a, b))).collect();
    pairs.sort_by_key(|&(a, b)| std::cmp::Reverse(a + b));

    let mut best: Option<Triangle> = None;
    for (k1, k2) in pairs {
        if let Some(t) = best {
            if k1 + k2 + w02_max < t.weight {
                break;
            }
        }
        let ind1 = Matrix::from_fn(na, nb, |a, b| (w.w01.get(a, b) == k1) as i32);
        let ind2 = Matrix::from_fn(nb, nc, |b, c| (w.w12.get(b, c) == k2) as i32);
        let joined = multiply(&ind1, &ind2, kernel);
        for a in 0..na {
            for c in 0..nc {
                if joined.get(a, c) == 0 {
                    continue;
                }
                let weight = k1 + k2 + w.w02.get(a, c);
                if best.is_some_and(|t| weight < t.weight || (weight == t.weight && a > t.a)) {
                    continue;
                }
                let b = (0..nb).find(|&b| w.w01.get(a, b) == k1 && w.w12.get(b, c) == k2).expect("witness exists");
                let cand = Triangle { weight, a, b, c };
                if best.is_none_or(|t| weight > t.weight || (a, b, c) < (t.a, t.b, t.c)) {
                    best = Some(cand);
                }
            }
        }
    }
    best.expect("at least one triangle")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactMax {
    pub value: usize,
    pub assignment: Assignment,
}

/// Maximum number of simultaneously satisfiable clauses, exactly.
pub fn exact_max(f: &Instance, mode: Mode, kernel: Kernel) -> Result<ExactMax, WilliamsError> {
    let n = f.num_vars();
    if n > WILLIAMS_LIMIT {
        return Err(WilliamsError::TooLarge { n, limit: WILLIAMS_LIMIT });
    }
    let poly = instance_poly(f, mode)?;
    let w = build_weights_from_poly(&poly, n);
    let t = max_weight_triangle(&w, kernel);
    let mut alpha = Assignment::all_false(n);
    for (p, idx) in [t.a, t.b, t.c].into_iter().enumerate() {
        for (i, &v) in w.parts[p].iter().enumerate() {
            alpha.set(v, (idx >> i) & 1 == 1);
        }
    }
    debug_assert_eq!(poly.eval(&alpha), t.weight);
    Ok(ExactMax { value: t.weight.max(0) as usize, assignment: alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{count_satisfied, random_mixed_instance};
    use crate::oracle::brute_max;

    #[test]
    fn clause_polys_are_indicators() {
        let clauses: [&[i64]; 6] = [&[1], &[-2], &[1, -2], &[-1, -2], &[1, 2, 3], &[-1, 2, -3]];
        for lits in clauses {
            let c = Clause::from_dimacs(lits).unwrap();
            for mode in [Mode::Sat, Mode::Nae] {
                let Ok(p) = clause_poly(&c, mode) else {
                    assert!(mode == Mode::Sat && c.len() == 3);
                    continue;
                };
                for idx in 0..8 {
                    let a = Assignment::from_index(3, idx);
                    assert_eq!(p.eval(&a), c.is_satisfied(&a, mode) as Weight, "{c} {mode} {idx}");
                }
            }
        }
        let c = Clause::from_dimacs(&[1, 2, 3, 4]).unwrap();
        assert!(matches!(clause_poly(&c, Mode::Nae), Err(WilliamsError::DegreeTooHigh { len: 4, .. })));
    }

    #[test]
    fn triangle_weight_counts_satisfied_clauses() {
        let f = random_mixed_instance(7, &[2, 3], 20, false, 5).unwrap().instance;
        let w = build_weights(&f, Mode::Nae).unwrap();
        for a in 0..w.w01.rows() {
            for b in 0..w.w01.cols() {
                for c in 0..w.w12.cols() {
                    let mut alpha = Assignment::all_false(7);
                    for (p, idx) in [a, b, c].into_iter().enumerate() {
                        for (i, &v) in w.parts[p].iter().enumerate() {
                            alpha.set(v, (idx >> i) & 1 == 1);
                        }
                    }
                    let tri = w.w01.get(a, b) + w.w12.get(b, c) + w.w02.get(a, c);
                    assert_eq!(tri as usize, count_satisfied(&f, &alpha, Mode::Nae));
                }
            }
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        for seed in 0..30u64 {
            let n = 2 + (seed as usize % 11);
            for (mode, lens) in [(Mode::Nae, vec![2, 3]), (Mode::Sat, vec![1, 2])] {
                let lens: Vec<usize> = lens.into_iter().filter(|&l| l <= n).collect();
                let f = random_mixed_instance(n, &lens, 2 * n + 3, false, seed).unwrap().instance;
                for kernel in [Kernel::Naive, Kernel::Strassen] {
                    let got = exact_max(&f, mode, kernel).unwrap();
                    let (want, _) = brute_max(&f, mode).unwrap();
                    assert_eq!(got.value, want, "seed {seed} {mode}");
                    assert_eq!(count_satisfied(&f, &got.assignment, mode), want);
                }
            }
        }
    }

    #[test]
    fn nae_poly_is_inclusion_exclusion_of_sat_polys() {
        for lits in [&[1i64, -2][..], &[1, 2, 3], &[-1, 2, -3]] {
            let c = Clause::from_dimacs(lits).unwrap();
            let conj = crate::transform::conjugate(&c);
            let n = 3;
            for idx in 0..1u64 << n {
                let a = Assignment::from_index(n, idx);
                let both = c.is_satisfied(&a, Mode::Sat) as Weight + conj.is_satisfied(&a, Mode::Sat) as Weight - 1;
                assert_eq!(clause_poly(&c, Mode::Nae).unwrap().eval(&a), both);
            }
        }
    }

    fn exhaustive(w: &TripartiteWeights) -> Triangle {
        let mut best: Option<Triangle> = None;
        for a in 0..w.w01.rows() {
            for b in 0..w.w01.cols() {
                for c in 0..w.w12.cols() {
                    let weight = w.w01.get(a, b) + w.w12.get(b, c) + w.w02.get(a, c);
                    if best.is_none_or(|t| weight > t.weight) {
                        best = Some(Triangle { weight, a, b, c });
                    }
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn triangle_matches_exhaustive_on_random_weights() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (dim, range) in [(2usize, 3i64), (8, 5), (8, 40), (5, 1)] {
            for _ in 0..20 {
                let mut gen = |r: usize, c: usize| Matrix::from_fn(r, c, |_, _| rng.gen_range(-range..=range));
                let w = TripartiteWeights {
                    parts: Default::default(),
                    w01: gen(dim, dim),
                    w12: gen(dim, dim),
                    w02: gen(dim, dim),
                };
                for kernel in [Kernel::Naive, Kernel::Strassen] {
                    assert_eq!(max_weight_triangle(&w, kernel), exhaustive(&w));
                }
            }
        }
        let zero = TripartiteWeights {
            parts: Default::default(),
            w01: Matrix::zeros(4, 4),
            w12: Matrix::zeros(4, 4),
            w02: Matrix::zeros(4, 4),
        };
        assert_eq!(max_weight_triangle(&zero, Kernel::Naive), Triangle { weight: 0, a: 0, b: 0, c: 0 });
    }

    #[test]
    fn empty_and_degenerate() {
        let f = Instance::empty(0);
        assert_eq!(exact_max(&f, Mode::Nae, Kernel::Naive).unwrap().value, 0);
        let f = Instance::from_dimacs_clauses(2, &[&[1], &[2]]).unwrap();
        assert_eq!(exact_max(&f, Mode::Nae, Kernel::Naive).unwrap().value, 0);
        assert_eq!(exact_max(&f, Mode::Sat, Kernel::Naive).unwrap().value, 2);
    }
}
