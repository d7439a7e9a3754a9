use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::formula::{Assignment, Instance, Mode, Var};
use crate::transform::{ConjugatePair, PairSet};
use crate::Rational;

use super::distribution::{pair_weight, sample_pair_assignment, PairDistribution};
use super::walk::schoening_from;
use super::{DlsStrategy, NaeError, SolveOutcome, SolverConfig, SCAN_CHUNK};

/// Largest block of non-pair variables covered by one Hamming code.
pub const FREE_BLOCK: usize = 12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DlsStats {
    /// Codewords (or restarts) up to and including the first success.
    pub codewords: u64,
    /// Search-tree nodes visited by ball search over those codewords.
    pub ball_nodes: u64,
}

type CodeCache = Mutex<HashMap<(bool, u32, u32), Arc<Vec<u32>>>>;

fn cache() -> &'static CodeCache {
    static CACHE: OnceLock<CodeCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Offsets of Hamming weight at most `radius` on `len` bits.
fn ball_offsets(len: u32, radius: u32) -> Vec<u32> {
    (0..1u32 << len).filter(|x| x.count_ones() <= radius).collect()
}

/// Greedy set cover of `universe` by Hamming balls centred in `universe`.
/// Ties go to the larger `priority`, then to the smaller point.
fn greedy_cover(len: u32, radius: u32, universe: &[u32], priority: impl Fn(u32) -> u128) -> Vec<u32> {
    let member: HashSet<u32> = universe.iter().copied().collect();
    let offsets = ball_offsets(len, radius);
    let mut uncovered = member.clone();
    let mut code = Vec::new();
    while !uncovered.is_empty() {
        let best = universe
            .iter()
            .map(|&c| {
                let gain = offsets.iter().filter(|&&o| uncovered.contains(&(c ^ o))).count();
                (gain, priority(c), std::cmp::Reverse(c))
            })
            .max()
            .expect("non-empty universe");
        let c = best.2 .0;
        for o in &offsets {
            uncovered.remove(&(c ^ o));
        }
        code.push(c);
    }
    code.sort_unstable();
    code
}

/// Code on `A ⊆ {0,1}^k` (literal space of a pair) covering `A` within `radius`,
/// built greedily with `π` as tie-break weight.
pub fn pair_code(k: u32, radius: u32) -> Arc<Vec<u32>> {
    let key = (true, k, radius);
    if let Some(c) = cache().lock().expect("cache").get(&key) {
        return c.clone();
    }
    let universe: Vec<u32> = (1..(1u32 << k) - 1).collect();
    let code = Arc::new(greedy_cover(k, radius, &universe, |p| pair_weight(k, p.count_ones())));
    cache().lock().expect("cache").insert(key, code.clone());
    code
}

/// Greedy covering code of `{0,1}^len` with the given radius.
pub fn hamming_code(len: u32, radius: u32) -> Arc<Vec<u32>> {
    let key = (false, len, radius);
    if let Some(c) = cache().lock().expect("cache").get(&key) {
        return c.clone();
    }
    let universe: Vec<u32> = (0..1u32 << len).collect();
    let code = Arc::new(greedy_cover(len, radius, &universe, |_| 0));
    cache().lock().expect("cache").insert(key, code.clone());
    code
}

/// Does every point of `universe` lie within `radius` of some codeword?
pub fn covers(code: &[u32], universe: impl IntoIterator<Item = u32>, radius: u32) -> bool {
    universe.into_iter().all(|x| code.iter().any(|&c| (c ^ x).count_ones() <= radius))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallResult {
    pub found: Option<Assignment>,
    pub nodes: u64,
}

/// Finds an assignment satisfying `f` within Hamming distance `radius` of
/// `center` iff one exists, by branching on every variable of the first
/// unsatisfied clause.
pub fn ball_search(f: &Instance, mode: Mode, center: &Assignment, radius: usize) -> BallResult {
    fn go(f: &Instance, mode: Mode, alpha: &mut Assignment, radius: usize, nodes: &mut u64) -> bool {
        *nodes += 1;
        let Some(c) = f.clauses().iter().find(|c| !c.is_satisfied(alpha, mode)) else {
            return true;
        };
        if radius == 0 {
            return false;
        }
        for l in c.literals() {
            alpha.flip(l.var());
            if go(f, mode, alpha, radius - 1, nodes) {
                return true;
            }
            alpha.flip(l.var());
        }
        false
    }
    let mut alpha = center.clone();
    let mut nodes = 0;
    let found = go(f, mode, &mut alpha, radius, &mut nodes).then_some(alpha);
    BallResult { found, nodes }
}

enum Block<'a> {
    Pair { pair: &'a ConjugatePair, code: Arc<Vec<u32>> },
    Free { vars: Vec<Var>, code: Arc<Vec<u32>> },
}

impl Block<'_> {
    fn code_len(&self) -> u64 {
        match self {
            Block::Pair { code, .. } | Block::Free { code, .. } => code.len() as u64,
        }
    }

    fn write(&self, word: u32, alpha: &mut Assignment) {
        match self {
            Block::Pair { pair, .. } => {
                for (v, b) in pair.assignment_for(word) {
                    alpha.set(v, b);
                }
            }
            Block::Free { vars, .. } => {
                for (i, &v) in vars.iter().enumerate() {
                    alpha.set(v, (word >> i) & 1 == 1);
                }
            }
        }
    }
}

fn floor_fraction(fraction: &Rational, len: usize) -> u32 {
    (fraction * Rational::from_integer(len.into())).floor().to_integer().try_into().expect("small radius")
}

fn free_vars(g: &Instance, pairs: &PairSet) -> Vec<Var> {
    let used = pairs.vars();
    g.occurring_vars().into_iter().filter(|v| !used.contains(v)).collect()
}

/// Local-search phase on a conjugate-closed instance with a maximal pair set.
///
/// The covering-code strategy scans a product code (one code on `A` per pair,
/// Hamming codes on blocks of the remaining variables) and runs ball search
/// around every codeword; it is complete. The randomized strategy samples
/// centres from `π` and walks; it cannot certify unsatisfiability.
pub fn dls(g: &Instance, pairs: &PairSet, cfg: &SolverConfig) -> Result<(SolveOutcome, DlsStats), NaeError> {
    cfg.validate()?;
    match cfg.dls_strategy {
        DlsStrategy::CoveringCode => Ok(dls_covering(g, pairs, &cfg.ball_radius_fraction)),
        DlsStrategy::RandomizedWalk => dls_randomized(g, pairs, cfg),
    }
}

fn dls_covering(g: &Instance, pairs: &PairSet, fraction: &Rational) -> (SolveOutcome, DlsStats) {
    let n = g.num_vars();
    let mut blocks = Vec::new();
    let mut radius = 0usize;
    for p in pairs.pairs() {
        let r = floor_fraction(fraction, p.len());
        radius += r as usize;
        blocks.push(Block::Pair { pair: p, code: pair_code(p.len() as u32, r) });
    }
    for chunk in free_vars(g, pairs).chunks(FREE_BLOCK) {
        let r = floor_fraction(fraction, chunk.len());
        radius += r as usize;
        blocks.push(Block::Free { vars: chunk.to_vec(), code: hamming_code(chunk.len() as u32, r) });
    }
    let total =
        blocks.iter().try_fold(1u64, |acc, b| acc.checked_mul(b.code_len())).expect("product code size fits in u64");

    let center = |mut index: u64| {
        let mut alpha = Assignment::all_false(n);
        for b in &blocks {
            let len = b.code_len();
            let word = match b {
                Block::Pair { code, .. } | Block::Free { code, .. } => code[(index % len) as usize],
            };
            index /= len;
            b.write(word, &mut alpha);
        }
        alpha
    };

    let mut stats = DlsStats::default();
    let mut start = 0;
    while start < total {
        let end = (start + SCAN_CHUNK).min(total);
        let results: Vec<BallResult> =
            (start..end).into_par_iter().map(|i| ball_search(g, Mode::Sat, &center(i), radius)).collect();
        for (i, r) in results.into_iter().enumerate() {
            stats.ball_nodes += r.nodes;
            if let Some(a) = r.found {
                stats.codewords = start + i as u64 + 1;
                return (SolveOutcome::Satisfiable(a), stats);
            }
        }
        start = end;
    }
    stats.codewords = total;
    (SolveOutcome::Unsatisfiable, stats)
}

fn dls_randomized(g: &Instance, pairs: &PairSet, cfg: &SolverConfig) -> Result<(SolveOutcome, DlsStats), NaeError> {
    let n = g.num_vars();
    let free = free_vars(g, pairs);
    let mut dists: HashMap<usize, PairDistribution> = HashMap::new();
    for p in pairs.pairs() {
        dists.entry(p.len()).or_insert_with(|| PairDistribution::new(p.len() as u32).expect("pair width within range"));
    }
    let hit = (0..cfg.walk_restarts).into_par_iter().find_map_first(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i);
        let mut alpha = Assignment::all_false(n);
        for p in pairs.pairs() {
            let point = sample_pair_assignment(&dists[&p.len()], &mut rng);
            for (v, b) in p.assignment_for(point) {
                alpha.set(v, b);
            }
        }
        for &v in &free {
            alpha.set(v, rand::Rng::gen(&mut rng));
        }
        schoening_from(g, Mode::Sat, alpha, 3 * n, &mut rng).map(|a| (i, a))
    });
    match hit {
        Some((i, a)) => Ok((SolveOutcome::Satisfiable(a), DlsStats { codewords: i + 1, ball_nodes: 0 })),
        None => Err(NaeError::StrategyMisuse(format!(
            "randomized walk found nothing in {} restarts and cannot certify unsatisfiability",
            cfg.walk_restarts
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{random_instance, GeneratorMode};
    use crate::oracle::brute_decide;
    use crate::scalar::rational;
    use crate::transform::{greedy_pairs, to_conjugate_instance};
    use rand::Rng;

    #[test]
    fn codes_cover_their_spaces() {
        for len in 1..=FREE_BLOCK as u32 {
            for r in 0..=len / 2 {
                let code = hamming_code(len, r);
                assert!(covers(&code, 0..1u32 << len, r), "len {len} r {r}");
            }
        }
        for k in 3..=8u32 {
            for r in 0..=k / 2 {
                let code = pair_code(k, r);
                assert!(code.iter().all(|&c| c != 0 && c != (1 << k) - 1));
                assert!(covers(&code, 1..(1u32 << k) - 1, r));
            }
        }
        assert_eq!(pair_code(3, 0).len(), 6);
        assert_eq!(hamming_code(4, 0).len(), 16);
    }

    #[test]
    fn ball_search_radius_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..40u64 {
            let n = 12;
            let file = random_instance(n, 3, 5 * n, GeneratorMode::PlantedNae, seed).unwrap();
            let f = file.instance;
            let sol = file.planted.unwrap();
            let r = rng.gen_range(0..=4);
            let mut center = sol.clone();
            for v in rand::seq::index::sample(&mut rng, n, r) {
                center.flip(v as Var + 1);
            }
            // the nearest solution may be closer than the planted one
            let nearest = (0..1u64 << n)
                .map(|i| Assignment::from_index(n, i))
                .filter(|a| f.is_satisfied_by(a, Mode::Nae))
                .map(|a| a.hamming(&center))
                .min()
                .unwrap();
            assert!(nearest <= r);
            let hit = ball_search(&f, Mode::Nae, &center, nearest);
            assert!(f.is_satisfied_by(hit.found.as_ref().unwrap(), Mode::Nae));
            if nearest > 0 {
                assert!(ball_search(&f, Mode::Nae, &center, nearest - 1).found.is_none());
            }
        }
    }

    #[test]
    fn ball_search_unsat() {
        let f = Instance::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]).unwrap();
        for r in 0..=2 {
            assert!(ball_search(&f, Mode::Nae, &Assignment::all_false(2), r).found.is_none());
        }
    }

    #[test]
    fn covering_dls_agrees_with_oracle() {
        for seed in 0..60u64 {
            let n = 8 + seed as usize % 7;
            let k = 3 + seed as usize % 2;
            let mode = if seed % 3 == 0 { GeneratorMode::PlantedNae } else { GeneratorMode::Uniform };
            let f = random_instance(n, k, [2, 4, 8][seed as usize % 3] * n, mode, seed).unwrap().instance;
            let g = to_conjugate_instance(&f).unwrap();
            let pairs = greedy_pairs(&g);
            for fraction in [rational(1, 3), rational(1, 100), rational(1, 2)] {
                let cfg = SolverConfig { ball_radius_fraction: fraction, ..Default::default() };
                let (out, _) = dls(&g, &pairs, &cfg).unwrap();
                assert_eq!(out.is_sat(), brute_decide(&f, Mode::Nae).unwrap().is_some(), "seed {seed}");
                if let Some(a) = out.assignment() {
                    assert!(f.is_satisfied_by(a, Mode::Nae));
                }
            }
        }
    }

    #[test]
    fn randomized_refuses_to_certify_unsat() {
        let f = Instance::from_dimacs_clauses(3, &[&[1, 2, 3], &[1, 2, -3], &[1, -2, 3], &[-1, 2, 3]]).unwrap();
        let g = to_conjugate_instance(&f).unwrap();
        assert!(brute_decide(&f, Mode::Nae).unwrap().is_none());
        let pairs = greedy_pairs(&g);
        let cfg = SolverConfig { dls_strategy: DlsStrategy::RandomizedWalk, walk_restarts: 10, ..Default::default() };
        assert!(matches!(dls(&g, &pairs, &cfg), Err(NaeError::StrategyMisuse(_))));
    }
}
