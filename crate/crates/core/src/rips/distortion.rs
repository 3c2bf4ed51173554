//! Comparison map from RH to H and its additive distortion.
//!
//! `F` sends the RH vertex of point `p` at level `k` to the first level-`k`
//! vertex of H whose ball contains `p`. Pairs are compared only when their
//! branch point in RH sits strictly above the lowest built level; below
//! that the truncated graphs lose the cone points that realize distances.

use rayon::prelude::*;
use serde::Serialize;

use super::{build_h, build_rh, BallMode, DescentTable, LeveledGraph};
use crate::error::Result;
use crate::graph::{fit_qi, QiReport, QiSample};
use crate::metric::FiniteMetricSpace;
use crate::sampling::SamplingMode;
use crate::scale::LevelWindow;

pub const ROUGH_ISOMETRY_BOUND: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RoughIsometryReport {
    pub window: LevelWindow,
    pub max_additive_distortion: usize,
    pub bound: usize,
    pub holds: bool,
    pub interior_pairs: usize,
    pub total_pairs: usize,
    pub worst_pair: Option<(usize, usize)>,
    /// `F` as RH vertex -> H vertex.
    pub map: Vec<usize>,
    pub qi: QiReport,
}

fn hop_matrix(x: &LeveledGraph) -> Vec<Vec<usize>> {
    (0..x.len())
        .into_par_iter()
        .map(|s| {
            x.graph()
                .bfs_hops(s)
                .into_iter()
                .map(|h| h.unwrap_or(usize::MAX))
                .collect()
        })
        .collect()
}

/// First H vertex at the same level whose ball holds the RH vertex's point.
pub fn comparison_map(rh: &LeveledGraph, h: &LeveledGraph) -> Vec<usize> {
    (0..rh.len())
        .map(|v| {
            let (p, k) = (rh.anchor(v), rh.level(v));
            h.level_vertices(k)
                .find(|&w| h.ball(w).is_some_and(|b| b.contains(p)))
                .expect("a maximal separated set covers every point")
        })
        .collect()
}

pub fn rh_to_h_distortion(
    z: &FiniteMetricSpace,
    r: f64,
    window: LevelWindow,
) -> Result<RoughIsometryReport> {
    let rh = build_rh(z, r, window)?;
    let h = build_h(z, r, window, BallMode::Witness)?;
    let map = comparison_map(&rh, &h);
    let d_rh = hop_matrix(&rh);
    let d_h = hop_matrix(&h);
    let table = DescentTable::new(&rh);

    let n = rh.len();
    let samples: Vec<QiSample> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let (rh, table, map, d_rh, d_h) = (&rh, &table, &map, &d_rh, &d_h);
            (a..n).filter_map(move |b| {
                let (level, _) = table.branch(rh, a, b)?;
                (level > window.k_min).then(|| QiSample {
                    pair: (a, b),
                    source: d_rh[a][b] as f64,
                    target: d_h[map[a]][map[b]] as f64,
                })
            })
        })
        .collect();

    let (worst_pair, max_additive_distortion) = samples
        .iter()
        .map(|q| (q.pair, (q.source - q.target).abs() as usize))
        .fold(
            (None, 0),
            |best, (pair, d)| if d > best.1 { (Some(pair), d) } else { best },
        );

    let codensity = (0..h.len())
        .map(|w| map.iter().map(|&v| d_h[w][v]).min().unwrap_or(usize::MAX))
        .max()
        .unwrap_or(0) as f64;
    let qi = fit_qi(&samples, codensity, SamplingMode::Exhaustive);

    Ok(RoughIsometryReport {
        window,
        max_additive_distortion,
        bound: ROUGH_ISOMETRY_BOUND,
        holds: max_additive_distortion <= ROUGH_ISOMETRY_BOUND,
        interior_pairs: samples.len(),
        total_pairs: n * (n + 1) / 2,
        worst_pair,
        map,
        qi,
    })
}
