//! Empirical quasi-isometry constants.
//!
//! For a sample of pairs with source distance `s` and target distance `t`,
//! the additive constant needed at multiplicative constant `λ` is
//! `C(λ) = max(t - λ s, s / λ - t, 0)`. The reported pair minimises
//! `λ + C(λ)` over the grid `λ = 2^(i/4)`, smaller `λ` on ties.

use rayon::prelude::*;
use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::sampling::{pairs, SamplingMode, DEFAULT_SEED};

/// Number of grid points; the grid spans `1 ..= 2^16`.
pub const LAMBDA_GRID: usize = 65;

const MAX_WITNESSES: usize = 8;

fn lambda_at(i: usize) -> f64 {
    (i as f64 / 4.0).exp2()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QiSample {
    pub pair: (usize, usize),
    pub source: f64,
    pub target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QiReport {
    pub lambda: f64,
    pub c: f64,
    pub codensity: f64,
    pub pair_count: usize,
    pub sampling: SamplingMode,
    pub worst_pairs: Vec<(usize, usize)>,
    pub max_source_distance: f64,
    /// Every sampled source distance is at most `λ C`, so the lower bound
    /// carries no information: the map may collapse everything.
    pub degenerate: bool,
}

impl QiReport {
    /// Re-checks `(1/λ) s - C <= t <= λ s + C` on `samples`.
    pub fn holds_on(&self, samples: &[QiSample]) -> bool {
        let slack = 1e-9 * (1.0 + self.c);
        samples.iter().all(|q| {
            q.target <= self.lambda * q.source + self.c + slack
                && q.source / self.lambda - self.c <= q.target + slack
        })
    }
}

fn additive(lambda: f64, q: &QiSample) -> f64 {
    (q.target - lambda * q.source)
        .max(q.source / lambda - q.target)
        .max(0.0)
}

/// Fits `(λ, C)` to already-measured pairs. `codensity` and `sampling` are
/// passed through to the report.
pub fn fit_qi(samples: &[QiSample], codensity: f64, sampling: SamplingMode) -> QiReport {
    let costs: Vec<f64> = (0..LAMBDA_GRID)
        .into_par_iter()
        .map(|i| {
            let lambda = lambda_at(i);
            samples
                .iter()
                .map(|q| additive(lambda, q))
                .fold(0.0f64, f64::max)
        })
        .collect();
    let best = (0..LAMBDA_GRID)
        .min_by(|&a, &b| {
            (lambda_at(a) + costs[a])
                .total_cmp(&(lambda_at(b) + costs[b]))
                .then(a.cmp(&b))
        })
        .expect("grid is nonempty");
    let (lambda, c) = (lambda_at(best), costs[best]);
    let worst_pairs = if c > 0.0 {
        samples
            .iter()
            .filter(|q| additive(lambda, q) >= c * (1.0 - 1e-12))
            .map(|q| q.pair)
            .take(MAX_WITNESSES)
            .collect()
    } else {
        Vec::new()
    };
    let max_source_distance = samples.iter().map(|q| q.source).fold(0.0, f64::max);
    QiReport {
        lambda,
        c,
        codensity,
        pair_count: samples.len(),
        sampling,
        worst_pairs,
        max_source_distance,
        degenerate: max_source_distance > 0.0 && lambda * c >= max_source_distance * (1.0 - 1e-12),
    }
}

/// Quasi-isometry constants of `map: source vertices -> target vertices`.
pub fn qi_estimate(
    map: &[usize],
    source: &Graph,
    target: &Graph,
    sample_budget: usize,
) -> Result<QiReport> {
    if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
        return Err(Error::InvalidParameter(
            "map must send every source vertex to a target vertex".into(),
        ));
    }
    source.require_connected()?;
    target.require_connected()?;
    let ds = source.all_pairs_distances();
    let dt = target.all_pairs_distances();
    let (pairs, sampling) = pairs(source.len(), sample_budget, DEFAULT_SEED);
    let samples: Vec<QiSample> = pairs
        .into_iter()
        .map(|(u, v)| QiSample {
            pair: (u, v),
            source: ds.get(u, v),
            target: dt.get(map[u], map[v]),
        })
        .collect();
    let codensity = codensity(&dt, map);
    Ok(fit_qi(&samples, codensity, sampling))
}

/// Largest distance from a target vertex to the image.
pub(crate) fn codensity(dt: &super::DistanceMatrix, image: &[usize]) -> f64 {
    (0..dt.len())
        .map(|y| {
            image
                .iter()
                .map(|&v| dt.get(y, v))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}
