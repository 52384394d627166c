use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Generator for round `round` of an experiment seeded with `seed`. Each
/// round has its own stream, so rounds can run in any order.
pub fn round_rng(seed: u64, round: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(round);
    rng
}

/// `count` distinct integers drawn uniformly from `[-bound, bound] \ {0}`,
/// sorted ascending.
pub fn sample_points(count: usize, bound: u64, rng: &mut impl Rng) -> Result<Vec<Rational>> {
    if count == 0 {
        return Err(Error::InvalidInstance("need at least one point".into()));
    }
    if bound == 0 || count as u64 > bound.saturating_mul(2) {
        return Err(Error::PoolExhausted {
            requested: count,
            bound,
        });
    }
    let b = bound as i64;
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        let v = rng.gen_range(-b..b);
        // Shift the non-negative half up by one to skip 0.
        let v = if v >= 0 { v + 1 } else { v };
        seen.insert(v);
    }
    Ok(seen
        .into_iter()
        .map(|v| Rational::from_integer(v.into()))
        .collect())
}

/// `count` distinct entries of `pool`, sorted ascending.
pub fn sample_from_pool(
    pool: &[Rational],
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Rational>> {
    if count == 0 || count > pool.len() {
        return Err(Error::PoolExhausted {
            requested: count,
            bound: pool.len() as u64,
        });
    }
    let mut out: Vec<Rational> = sample(rng, pool.len(), count)
        .into_iter()
        .map(|i| pool[i].clone())
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn single_point() {
        let pts = sample_points(1, 10, &mut round_rng(1, 0)).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(!pts[0].is_zero());
    }

    #[test]
    fn deterministic() {
        let a = sample_points(8, 1 << 16, &mut round_rng(42, 3)).unwrap();
        let b = sample_points(8, 1 << 16, &mut round_rng(42, 3)).unwrap();
        let c = sample_points(8, 1 << 16, &mut round_rng(42, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn distinct_nonzero_sorted() {
        let mut rng = round_rng(5, 0);
        for _ in 0..10_000 {
            let pts = sample_points(4, 3, &mut rng).unwrap();
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            assert!(pts
                .iter()
                .all(|p| !p.is_zero() && p.numer().magnitude() <= &3u32.into()));
        }
    }

    #[test]
    fn whole_range_reachable() {
        let mut rng = round_rng(9, 0);
        let pts = sample_points(6, 3, &mut rng).unwrap();
        let ints: Vec<i64> = pts
            .iter()
            .map(|p| p.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(ints, vec![-3, -2, -1, 1, 2, 3]);
    }

    #[test]
    fn exhausted() {
        assert!(matches!(
            sample_points(7, 3, &mut round_rng(0, 0)),
            Err(Error::PoolExhausted { .. })
        ));
        assert!(sample_points(0, 3, &mut round_rng(0, 0)).is_err());
    }

    #[test]
    fn pool_sampling() {
        let pool: Vec<Rational> = (1..=5).map(|k| Rational::from_integer(k.into())).collect();
        let pts = sample_from_pool(&pool, 3, &mut round_rng(1, 1)).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(sample_from_pool(&pool, 6, &mut round_rng(1, 1)).is_err());
    }
}
