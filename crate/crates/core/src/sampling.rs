//! Exhaustive-or-random tuple enumeration shared by the scan kernels.
//!
//! Random mode draws from ChaCha8 streams derived from one recorded seed,
//! one stream per fixed-size chunk, so the drawn tuples do not depend on
//! the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0x5EED_C0FF_EE00_0001;
pub const DEFAULT_BUDGET: usize = 2_000_000;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SamplingMode {
    Exhaustive,
    Random { seed: u64, samples: usize },
}

/// `samples` uniform `K`-tuples of indices below `n`.
pub fn random_tuples<const K: usize>(n: usize, samples: usize, seed: u64) -> Vec<[usize; K]> {
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let take = CHUNK.min(samples - c * CHUNK);
            (0..take)
                .map(|_| std::array::from_fn(|_| rng.gen_range(0..n)))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Unordered pairs `i < j`, all of them when they fit in `budget`.
pub fn pairs(n: usize, budget: usize, seed: u64) -> (Vec<(usize, usize)>, SamplingMode) {
    let total = n * n.saturating_sub(1) / 2;
    if total <= budget {
        let all = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        (all, SamplingMode::Exhaustive)
    } else {
        let drawn = random_tuples::<2>(n, budget, seed)
            .into_iter()
            .map(|[a, b]| (a.min(b), a.max(b)))
            .collect();
        (
            drawn,
            SamplingMode::Random {
                seed,
                samples: budget,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_draws_are_reproducible() {
        let a = random_tuples::<4>(10, 10_000, 7);
        let b = random_tuples::<4>(10, 10_000, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10_000);
        assert!(a.iter().flatten().all(|&i| i < 10));
    }

    #[test]
    fn exhaustive_pairs_when_within_budget() {
        let (p, mode) = pairs(5, 100, 1);
        assert_eq!(p.len(), 10);
        assert_eq!(mode, SamplingMode::Exhaustive);
        let (p, mode) = pairs(100, 50, 1);
        assert_eq!(p.len(), 50);
        assert!(matches!(mode, SamplingMode::Random { .. }));
    }
}
