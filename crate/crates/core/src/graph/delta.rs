use rayon::prelude::*;
use serde::Serialize;

use super::{DistanceMatrix, Graph};
use crate::error::Result;
use crate::sampling::{random_tuples, SamplingMode, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaReport {
    pub four_point_delta: f64,
    pub sampling: SamplingMode,
    pub witness: Option<[usize; 4]>,
}

/// Half the gap between the two largest of the three pair sums.
#[inline]
pub(crate) fn four_point_gap(d: &DistanceMatrix, x: usize, y: usize, z: usize, w: usize) -> f64 {
    let mut s = [
        d.get(x, y) + d.get(z, w),
        d.get(x, z) + d.get(y, w),
        d.get(x, w) + d.get(y, z),
    ];
    s.sort_by(f64::total_cmp);
    (s[2] - s[1]) / 2.0
}

fn better(a: (f64, [usize; 4]), b: (f64, [usize; 4])) -> (f64, [usize; 4]) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Four-point hyperbolicity constant of the shortest-path metric.
///
/// Exhaustive over 4-subsets when `n^4 <= sample_budget` (tuples with a
/// repeated point contribute 0), otherwise `sample_budget` random tuples.
pub fn four_point_delta(g: &Graph, sample_budget: usize) -> Result<DeltaReport> {
    g.require_connected()?;
    let n = g.len();
    let d = g.all_pairs_distances();
    let start = (0.0, [0; 4]);
    let exhaustive = (n as u128).pow(4) <= sample_budget as u128;
    let (best, sampling) = if exhaustive {
        let best = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut best = start;
                for y in x + 1..n {
                    for z in y + 1..n {
                        for w in z + 1..n {
                            best = better(best, (four_point_gap(&d, x, y, z, w), [x, y, z, w]));
                        }
                    }
                }
                best
            })
            .reduce(|| start, better);
        (best, SamplingMode::Exhaustive)
    } else {
        let tuples = random_tuples::<4>(n, sample_budget, DEFAULT_SEED);
        let best = tuples
            .par_iter()
            .map(|&[x, y, z, w]| (four_point_gap(&d, x, y, z, w), [x, y, z, w]))
            .reduce(|| start, better);
        (
            best,
            SamplingMode::Random {
                seed: DEFAULT_SEED,
                samples: sample_budget,
            },
        )
    };
    Ok(DeltaReport {
        four_point_delta: best.0,
        sampling,
        witness: (best.0 > 0.0).then_some(best.1),
    })
}
