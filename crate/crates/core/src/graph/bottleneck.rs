//! Bottleneck constant of a unit-length graph.
//!
//! Works on the barycentric subdivision, where every edge gets a midpoint
//! vertex and lengths are counted in half-edges, so that every geodesic
//! between two original vertices has an exact midpoint vertex. "Every path
//! from x to y passes within Δ of m" is tested by deleting the open ball of
//! radius Δ about m and checking that x and y fall apart. A path avoiding
//! the open ball keeps every point at distance at least Δ from m, and an
//! edge of the subdivision survives exactly when both its ends do, so
//! vertex deletion is exact.

use rayon::prelude::*;
use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::sampling::{pairs, SamplingMode, DEFAULT_SEED};

const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BottleneckReport {
    /// Least Δ, a multiple of 1/2, that works for every sampled pair.
    pub delta: f64,
    /// Pairs attaining `delta` (at most 16).
    pub witnesses: Vec<(usize, usize)>,
    pub sampling: SamplingMode,
}

struct Subdivision {
    graph: Graph,
    /// Hop distances in half-edge units.
    dist: Vec<Vec<usize>>,
}

impl Subdivision {
    fn new(g: &Graph) -> Result<Self> {
        let n = g.len();
        let mut graph = Graph::with_vertices(n + g.edge_count());
        for (e, edge) in g.edges().iter().enumerate() {
            graph.add_edge(edge.u, n + e, 1.0, Default::default())?;
            graph.add_edge(n + e, edge.v, 1.0, Default::default())?;
        }
        let dist = (0..graph.len())
            .into_par_iter()
            .map(|s| {
                graph
                    .bfs_hops(s)
                    .into_iter()
                    .map(|h| h.expect("connected"))
                    .collect()
            })
            .collect();
        Ok(Self { graph, dist })
    }

    fn separated(&self, x: usize, y: usize, m: usize, radius: usize) -> bool {
        let around = &self.dist[m];
        self.graph.bfs_hops_masked(x, |w| around[w] >= radius)[y].is_none()
    }

    /// Smallest ball radius (half-edge units) that works for `(x, y)`.
    fn pair_radius(&self, x: usize, y: usize) -> usize {
        let whole = self.dist[x][y];
        let half = whole / 2;
        let mut best = half;
        for m in 0..self.graph.len() {
            if self.dist[x][m] != half || self.dist[y][m] != half {
                continue;
            }
            // separated() is monotone in the radius; radius `half` always
            // counts because then d(x, y) <= 2Δ.
            let (mut lo, mut hi) = (0, best);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if self.separated(x, y, m, mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            best = best.min(lo);
            if best <= 1 {
                break;
            }
        }
        best
    }
}

pub fn bottleneck_delta(g: &Graph, sample_budget: usize) -> Result<BottleneckReport> {
    g.require_connected()?;
    if !g.is_unit() {
        return Err(Error::NonUnitEdges);
    }
    let sub = Subdivision::new(g)?;
    let (pairs, sampling) = pairs(g.len(), sample_budget, DEFAULT_SEED);
    let radii: Vec<usize> = pairs
        .par_iter()
        .map(|&(x, y)| if x == y { 0 } else { sub.pair_radius(x, y) })
        .collect();
    let top = radii.iter().copied().max().unwrap_or(0);
    let witnesses = pairs
        .iter()
        .zip(&radii)
        .filter(|&(_, &r)| r == top && top > 0)
        .map(|(&p, _)| p)
        .take(MAX_WITNESSES)
        .collect();
    Ok(BottleneckReport {
        delta: top as f64 / 2.0,
        witnesses,
        sampling,
    })
}
