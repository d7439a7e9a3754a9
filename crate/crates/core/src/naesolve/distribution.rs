use rand::Rng;

use crate::bounds::{is_nae_point, lp_closed_form, BoundsError};
use crate::oracle::{check_lp_constraints, LpCheck, OracleError};
use crate::Rational;

/// Integer weight proportional to `π` at a point of Hamming weight `y`:
/// `((k-1)^y - (-1)^y) ((k-1)^{k-y} - (-1)^{k-y})`. The weights sum to the LP
/// denominator.
pub fn pair_weight(k: u32, y: u32) -> u128 {
    if y == 0 || y == k {
        return 0;
    }
    let f = |e: u32| -> i128 { (k as i128 - 1).pow(e) - if e.is_multiple_of(2) { 1 } else { -1 } };
    (f(y) * f(k - y)) as u128
}

/// The covering distribution `π` over `A` for one conjugate pair.
#[derive(Debug, Clone)]
pub struct PairDistribution {
    pub k: u32,
    pub lambda: Rational,
    pub pi: Vec<Rational>,
    cumulative: Vec<u128>,
}

impl PairDistribution {
    pub fn new(k: u32) -> Result<Self, BoundsError> {
        let sol = lp_closed_form(k)?;
        let mut acc = 0u128;
        let cumulative = (0..1u32 << k)
            .map(|p| {
                acc += pair_weight(k, p.count_ones());
                acc
            })
            .collect();
        Ok(PairDistribution { k, pi: sol.pi_table(), lambda: sol.lambda, cumulative })
    }

    /// Exact check of every LP constraint.
    pub fn check(&self) -> Result<LpCheck, OracleError> {
        check_lp_constraints(self.k, &self.pi, &self.lambda)
    }

    pub fn total_weight(&self) -> u128 {
        *self.cumulative.last().expect("non-empty")
    }
}

/// Draws `a ∈ A` with probability `π(a)`.
pub fn sample_pair_assignment<R: Rng + ?Sized>(dist: &PairDistribution, rng: &mut R) -> u32 {
    let r = rng.gen_range(0..dist.total_weight());
    let p = dist.cumulative.partition_point(|&c| c <= r) as u32;
    debug_assert!(is_nae_point(dist.k, p));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::lp_denominator;
    use crate::scalar::rational;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn weights_are_proportional_to_pi() {
        for k in 3..=16 {
            let d = PairDistribution::new(k).unwrap();
            assert_eq!(BigInt::from(d.total_weight()), lp_denominator(k));
            for p in [1u32, 3, (1 << k) - 2] {
                let w = Rational::from_integer(BigInt::from(pair_weight(k, p.count_ones())));
                assert_eq!(w / Rational::from_integer(lp_denominator(k)), d.pi[p as usize]);
            }
        }
    }

    #[test]
    fn distribution_satisfies_lp() {
        for k in 3..=7 {
            assert!(PairDistribution::new(k).unwrap().check().unwrap().feasible());
        }
    }

    #[test]
    fn k3_sampling_is_uniform() {
        let d = PairDistribution::new(3).unwrap();
        assert!(d.pi[1..7].iter().all(|p| *p == rational(1, 6)));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 100_000;
        let mut counts = [0u32; 8];
        for _ in 0..draws {
            counts[sample_pair_assignment(&d, &mut rng) as usize] += 1;
        }
        assert_eq!(counts[0] + counts[7], 0);
        let p = 1.0 / 6.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for c in &counts[1..7] {
            assert!((*c as f64 - draws as f64 * p).abs() <= 3.0 * sigma, "{counts:?}");
        }
    }
}
