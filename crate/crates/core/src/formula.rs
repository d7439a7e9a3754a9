//! CNF data model: literals, clauses, instances and assignments, plus DIMACS
//! I/O, satisfaction counting and clause-length statistics.
//!
//! Variables are numbered from 1, matching DIMACS. An [`Instance`] is a clause
//! multiset; clauses never contain a variable twice.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

pub type Var = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("malformed DIMACS header: {0}")]
    MalformedHeader(String),
    #[error("malformed DIMACS body at line {line}: {msg}")]
    MalformedBody { line: usize, msg: String },
    #[error("variable {var} out of range 1..={num_vars}")]
    VariableOutOfRange { var: i64, num_vars: usize },
    #[error("clause contains both x{0} and its negation")]
    TautologicalClause(Var),
    #[error("empty clause")]
    EmptyClause,
    #[error("instance has no clauses")]
    EmptyInstance,
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),
    #[error("assignment has {got} variables, expected {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("variable x{0} assigned twice")]
    DoubleAssignment(Var),
}

/// Which notion of clause satisfaction is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// At least one literal true.
    Sat,
    /// At least one literal true and at least one false.
    Nae,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Sat => write!(f, "sat"),
            Mode::Nae => write!(f, "nae"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sat" => Ok(Mode::Sat),
            "nae" => Ok(Mode::Nae),
            other => Err(format!("unknown mode '{other}' (expected sat|nae)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        Literal { var, positive }
    }

    pub fn pos(var: Var) -> Self {
        Literal::new(var, true)
    }

    pub fn neg(var: Var) -> Self {
        Literal::new(var, false)
    }

    /// From a signed DIMACS integer (non-zero).
    pub fn from_dimacs(lit: i64) -> Self {
        assert!(lit != 0);
        Literal::new(lit.unsigned_abs() as Var, lit > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negate(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    /// Truth value under `alpha`.
    #[inline]
    pub fn value(self, alpha: &Assignment) -> bool {
        alpha.get(self.var) == self.positive
    }

    /// Literal value given the variable value.
    #[inline]
    pub fn value_of(self, var_value: bool) -> bool {
        var_value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

/// A non-empty, tautology-free set of literals (kept in insertion order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    /// Builds a clause, collapsing repeated literals.
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Result<Self, FormulaError> {
        let mut seen: Vec<Literal> = Vec::new();
        for lit in lits {
            if let Some(prev) = seen.iter().find(|l| l.var == lit.var) {
                if prev.positive != lit.positive {
                    return Err(FormulaError::TautologicalClause(lit.var));
                }
                continue;
            }
            seen.push(lit);
        }
        if seen.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        Ok(Clause { lits: seen })
    }

    /// Shorthand for tests and examples: signed DIMACS literals.
    pub fn from_dimacs(lits: &[i64]) -> Result<Self, FormulaError> {
        if lits.contains(&0) {
            return Err(FormulaError::MalformedBody { line: 0, msg: "literal 0".into() });
        }
        Clause::new(lits.iter().map(|&l| Literal::from_dimacs(l)))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.lits.iter().any(|l| l.var == v)
    }

    /// `(some literal true, some literal false)` under `alpha`.
    #[inline]
    pub fn truth_profile(&self, alpha: &Assignment) -> (bool, bool) {
        let mut any_true = false;
        let mut any_false = false;
        for &l in &self.lits {
            if l.value(alpha) {
                any_true = true;
            } else {
                any_false = true;
            }
        }
        (any_true, any_false)
    }

    #[inline]
    pub fn is_satisfied(&self, alpha: &Assignment, mode: Mode) -> bool {
        match mode {
            Mode::Sat => self.lits.iter().any(|l| l.value(alpha)),
            Mode::Nae => {
                let (t, f) = self.truth_profile(alpha);
                t && f
            }
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A total truth assignment over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn all_false(n: usize) -> Self {
        Assignment { bits: vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// Variable `i` takes bit `i - 1` of `index`.
    pub fn from_index(n: usize, index: u64) -> Self {
        Assignment { bits: (0..n).map(|i| (index >> i) & 1 == 1).collect() }
    }

    /// Inverse of [`Assignment::from_index`]; `None` beyond 64 variables.
    pub fn to_index(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i)))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Assignment { bits: (0..n).map(|_| rng.gen()).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, var: Var) -> bool {
        self.bits[var as usize - 1]
    }

    #[inline]
    pub fn set(&mut self, var: Var, value: bool) {
        self.bits[var as usize - 1] = value;
    }

    #[inline]
    pub fn flip(&mut self, var: Var) {
        let b = &mut self.bits[var as usize - 1];
        *b = !*b;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn hamming(&self, other: &Assignment) -> usize {
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }

    /// Overwrites every variable of `partial`.
    pub fn apply(&mut self, partial: &PartialAssignment) {
        for (v, b) in partial.iter() {
            self.set(v, b);
        }
    }

    /// `"0110…"` with variable 1 first.
    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Assignment::from_bits)
    }

    /// Signed DIMACS model line body: `1 -2 3 …`.
    pub fn to_dimacs_literals(&self) -> Vec<i64> {
        self.bits.iter().enumerate().map(|(i, &b)| if b { i as i64 + 1 } else { -(i as i64 + 1) }).collect()
    }
}

/// A truth mapping on a subset of the variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialAssignment {
    assigned: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn assign(&mut self, var: Var, value: bool) -> Result<(), FormulaError> {
        if self.assigned.insert(var, value).is_some() {
            return Err(FormulaError::DoubleAssignment(var));
        }
        Ok(())
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.assigned.get(&var).copied()
    }

    pub fn contains(&self, var: Var) -> bool {
        self.assigned.contains_key(&var)
    }

    pub fn len(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.assigned.iter().map(|(&v, &b)| (v, b))
    }

    /// Disjoint union; fails on overlap.
    pub fn union(&self, other: &PartialAssignment) -> Result<PartialAssignment, FormulaError> {
        let mut out = self.clone();
        for (v, b) in other.iter() {
            out.assign(v, b)?;
        }
        Ok(out)
    }

    /// Extends to a total assignment, unassigned variables false.
    pub fn complete(&self, n: usize) -> Assignment {
        let mut a = Assignment::all_false(n);
        a.apply(self);
        a
    }
}

impl FromIterator<(Var, bool)> for PartialAssignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        PartialAssignment { assigned: iter.into_iter().collect() }
    }
}

/// A clause multiset over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl Instance {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for c in &clauses {
            for l in c.literals() {
                if l.var() as usize > num_vars {
                    return Err(FormulaError::VariableOutOfRange { var: l.var() as i64, num_vars });
                }
            }
        }
        Ok(Instance { num_vars, clauses })
    }

    /// Test helper: clauses as signed DIMACS literal lists.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self, FormulaError> {
        let cs = clauses.iter().map(|c| Clause::from_dimacs(c)).collect::<Result<Vec<_>, _>>()?;
        Instance::new(num_vars, cs)
    }

    pub fn empty(num_vars: usize) -> Self {
        Instance { num_vars, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    /// Longest clause length, 0 for the empty instance.
    pub fn max_len(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.clauses.iter().map(Clause::len).min().unwrap_or(0)
    }

    pub fn has_unit_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.len() == 1)
    }

    /// Same clauses viewed over a different number of variables.
    pub fn with_num_vars(&self, num_vars: usize) -> Result<Self, FormulaError> {
        Instance::new(num_vars, self.clauses.clone())
    }

    /// Per-variable occurrence counts, indexed by variable (slot 0 unused).
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0usize; self.num_vars + 1];
        for c in &self.clauses {
            for v in c.vars() {
                occ[v as usize] += 1;
            }
        }
        occ
    }

    /// Variables that occur in at least one clause, ascending.
    pub fn occurring_vars(&self) -> Vec<Var> {
        let occ = self.occurrences();
        (1..=self.num_vars as Var).filter(|&v| occ[v as usize] > 0).collect()
    }

    pub fn is_satisfied_by(&self, alpha: &Assignment, mode: Mode) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied(alpha, mode))
    }

    /// Renumbers the occurring variables to `1..=k` (ascending order kept).
    /// Returns the compact instance and the original variable of each new index.
    pub fn compact(&self) -> (Instance, Vec<Var>) {
        let vars = self.occurring_vars();
        let mut remap = vec![0 as Var; self.num_vars + 1];
        for (i, &v) in vars.iter().enumerate() {
            remap[v as usize] = i as Var + 1;
        }
        let clauses = self
            .clauses
            .iter()
            .map(|c| Clause { lits: c.lits.iter().map(|l| Literal::new(remap[l.var as usize], l.positive)).collect() })
            .collect();
        (Instance { num_vars: vars.len(), clauses }, vars)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_dimacs(self))
    }
}

/// DIMACS text together with the optional `c planted <bits>` annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsFile {
    pub instance: Instance,
    pub planted: Option<Assignment>,
}

/// Parses DIMACS CNF text.
pub fn parse_dimacs(text: &str) -> Result<Instance, FormulaError> {
    parse_dimacs_file(text).map(|f| f.instance)
}

pub fn parse_dimacs_file(text: &str) -> Result<DimacsFile, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut planted = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let mut words = rest.split_whitespace();
                if words.next() == Some("planted") {
                    if let Some(bits) = words.next() {
                        planted = Assignment::from_bit_string(bits);
                    }
                }
                continue;
            }
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(FormulaError::MalformedHeader("duplicate problem line".into()));
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.len() != 4 || words[0] != "p" || words[1] != "cnf" {
                return Err(FormulaError::MalformedHeader(line.to_string()));
            }
            let n = words[2].parse().map_err(|_| FormulaError::MalformedHeader(line.to_string()))?;
            let m = words[3].parse().map_err(|_| FormulaError::MalformedHeader(line.to_string()))?;
            header = Some((n, m));
            continue;
        }
        if line.starts_with('%') {
            // SATLIB end marker
            break;
        }
        let Some((n, _)) = header else {
            return Err(FormulaError::MalformedHeader("clause before problem line".into()));
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| FormulaError::MalformedBody { line: lineno + 1, msg: format!("bad token '{tok}'") })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(FormulaError::EmptyClause);
                }
                clauses.push(Clause::from_dimacs(&current)?);
                current.clear();
            } else {
                if lit.unsigned_abs() as usize > n {
                    return Err(FormulaError::VariableOutOfRange { var: lit.abs(), num_vars: n });
                }
                current.push(lit);
            }
        }
    }
    let Some((n, _)) = header else {
        return Err(FormulaError::MalformedHeader("missing problem line".into()));
    };
    if !current.is_empty() {
        // tolerate a missing final terminator
        clauses.push(Clause::from_dimacs(&current)?);
    }
    if let Some(p) = &planted {
        if p.len() != n {
            planted = None;
        }
    }
    Ok(DimacsFile { instance: Instance::new(n, clauses)?, planted })
}

pub fn emit_dimacs(instance: &Instance) -> String {
    emit_dimacs_with_planted(instance, None)
}

pub fn emit_dimacs_with_planted(instance: &Instance, planted: Option<&Assignment>) -> String {
    let mut out = String::new();
    if let Some(p) = planted {
        out.push_str(&format!("c planted {}\n", p.to_bit_string()));
    }
    out.push_str(&format!("p cnf {} {}\n", instance.num_vars, instance.clauses.len()));
    for c in &instance.clauses {
        for l in c.literals() {
            out.push_str(&l.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// `s(α)`: number of clauses satisfied (or NAE-satisfied) by `alpha`.
pub fn count_satisfied(instance: &Instance, alpha: &Assignment, mode: Mode) -> usize {
    debug_assert_eq!(alpha.len(), instance.num_vars);
    instance.clauses.iter().filter(|c| c.is_satisfied(alpha, mode)).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceStats {
    /// `m_by_len[i]` is the number of clauses of length `i` (slot 0 unused).
    pub m_by_len: Vec<usize>,
    /// Average clause length η, exact.
    #[serde(with = "rational_string")]
    pub eta: Rational,
    /// Occurrence count per variable (slot 0 unused).
    pub occurrence: Vec<usize>,
}

impl InstanceStats {
    pub fn num_clauses(&self) -> usize {
        self.m_by_len.iter().sum()
    }
}

pub fn stats(instance: &Instance) -> Result<InstanceStats, FormulaError> {
    let m = instance.num_clauses();
    if m == 0 {
        return Err(FormulaError::EmptyInstance);
    }
    let k = instance.max_len();
    let mut m_by_len = vec![0usize; k + 1];
    let mut total = 0usize;
    for c in instance.clauses() {
        m_by_len[c.len()] += 1;
        total += c.len();
    }
    Ok(InstanceStats {
        m_by_len,
        eta: Rational::new(BigInt::from(total), BigInt::from(m)),
        occurrence: instance.occurrences(),
    })
}

/// The subformula `G` of clauses satisfied by `alpha`, with `w = |G|` and its
/// average clause length `θ` (`None` when `G` is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subformula {
    pub g: Instance,
    pub w: usize,
    pub theta: Option<Rational>,
}

pub fn satisfiable_subformula(instance: &Instance, alpha: &Assignment, mode: Mode) -> Subformula {
    let clauses: Vec<Clause> = instance.clauses.iter().filter(|c| c.is_satisfied(alpha, mode)).cloned().collect();
    let w = clauses.len();
    let g = Instance { num_vars: instance.num_vars, clauses };
    let theta = stats(&g).ok().map(|s| s.eta);
    Subformula { g, w, theta }
}

/// `B_τ(G)`: variables whose occurrence in `g` is at most `τ = λ·w/n`.
pub fn subtau_variables(g: &Instance, lambda: &Rational) -> Result<Vec<Var>, FormulaError> {
    let w = g.num_clauses();
    if w == 0 {
        return Err(FormulaError::EmptyInstance);
    }
    assert!(lambda > &Rational::from_integer(0.into()), "λ must be positive");
    let n = g.num_vars();
    let tau = lambda * Rational::new(BigInt::from(w), BigInt::from(n.max(1)));
    let occ = g.occurrences();
    Ok((1..=n as Var).filter(|&v| Rational::from_integer(BigInt::from(occ[v as usize])) <= tau).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorMode {
    Uniform,
    PlantedNae,
}

impl std::str::FromStr for GeneratorMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(GeneratorMode::Uniform),
            "planted" | "planted-nae" => Ok(GeneratorMode::PlantedNae),
            other => Err(format!("unknown generator mode '{other}'")),
        }
    }
}

/// Random k-instance with `m` clauses over `k` distinct variables each.
/// In planted mode only clauses NAE-satisfied by a hidden assignment are kept.
pub fn random_instance(
    n: usize,
    k: usize,
    m: usize,
    mode: GeneratorMode,
    seed: u64,
) -> Result<DimacsFile, FormulaError> {
    if k < 2 || n < k {
        return Err(FormulaError::InfeasibleParameters(format!("need k >= 2 and n >= k (n={n}, k={k})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = match mode {
        GeneratorMode::Uniform => None,
        GeneratorMode::PlantedNae => Some(Assignment::random(n, &mut rng)),
    };
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let lits: Vec<Literal> =
            sample(&mut rng, n, k).into_iter().map(|i| Literal::new(i as Var + 1, rng.gen())).collect();
        let clause = Clause { lits };
        if let Some(p) = &planted {
            if !clause.is_satisfied(p, Mode::Nae) {
                continue;
            }
        }
        clauses.push(clause);
    }
    Ok(DimacsFile { instance: Instance { num_vars: n, clauses }, planted })
}

/// Random instance with clause lengths drawn uniformly from `lens`.
pub fn random_mixed_instance(
    n: usize,
    lens: &[usize],
    m: usize,
    planted_nae: bool,
    seed: u64,
) -> Result<DimacsFile, FormulaError> {
    if lens.is_empty() || lens.iter().any(|&k| k == 0 || k > n) {
        return Err(FormulaError::InfeasibleParameters(format!("clause lengths {lens:?} with n={n}")));
    }
    if planted_nae && lens.contains(&1) {
        return Err(FormulaError::InfeasibleParameters("planted NAE needs lengths >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = planted_nae.then(|| Assignment::random(n, &mut rng));
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let k = lens[rng.gen_range(0..lens.len())];
        let lits: Vec<Literal> =
            sample(&mut rng, n, k).into_iter().map(|i| Literal::new(i as Var + 1, rng.gen())).collect();
        let clause = Clause { lits };
        if let Some(p) = &planted {
            if !clause.is_satisfied(p, Mode::Nae) {
                continue;
            }
        }
        clauses.push(clause);
    }
    Ok(DimacsFile { instance: Instance { num_vars: n, clauses }, planted })
}

/// Distinct variables of a collection of clauses.
pub fn vars_of<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> HashSet<Var> {
    clauses.into_iter().flat_map(|c| c.vars()).collect()
}

pub(crate) mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        crate::scalar::parse_rational(&s).ok_or_else(|| serde::de::Error::custom("bad rational"))
    }
}

pub(crate) mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| crate::scalar::parse_rational(&s).ok_or_else(|| serde::de::Error::custom("bad rational"))).transpose()
    }
}
