//! Ball graph `Γ(X, R, A)` of a unit-length graph.
//!
//! `A` is a maximal `R`-separated vertex set (greedy, ascending ids). Each
//! center `a` contributes the closed ball `B(a, 2R)`; equal balls are one
//! vertex, named by the lowest center, which is also its image under `j`.
//! Two vertices are adjacent when their balls share a vertex of `X`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{fit_qi, EdgeKind, Graph, QiReport, QiSample};
use crate::sampling::SamplingMode;

#[derive(Debug, Clone)]
pub struct GammaGraph {
    pub graph: Graph,
    pub radius: f64,
    /// The separated set, ascending.
    pub centers: Vec<usize>,
    /// Sorted ball members of each Γ vertex.
    pub balls: Vec<Vec<usize>>,
    /// `j`: Γ vertex -> source vertex.
    pub j: Vec<usize>,
    pub source: Graph,
    source_hops: Vec<Vec<usize>>,
}

impl GammaGraph {
    pub fn source_distance(&self, u: usize, v: usize) -> usize {
        self.source_hops[u][v]
    }
}

fn hop_matrix(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.len())
        .into_par_iter()
        .map(|s| {
            g.bfs_hops(s)
                .into_iter()
                .map(|h| h.expect("connected"))
                .collect()
        })
        .collect()
}

pub fn build_gamma(x: &Graph, radius: f64) -> Result<GammaGraph> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "R = {radius} must be positive"
        )));
    }
    if !x.is_unit() {
        return Err(Error::NonUnitEdges);
    }
    x.require_connected()?;
    let hops = hop_matrix(x);
    let n = x.len();

    let mut centers: Vec<usize> = Vec::new();
    for p in 0..n {
        if centers.iter().all(|&a| hops[p][a] as f64 >= radius) {
            centers.push(p);
        }
    }
    let mut balls: Vec<Vec<usize>> = Vec::new();
    let mut j = Vec::new();
    for &a in &centers {
        let ball: Vec<usize> = (0..n)
            .filter(|&u| hops[a][u] as f64 <= 2.0 * radius)
            .collect();
        if !balls.contains(&ball) {
            balls.push(ball);
            j.push(a);
        }
    }
    let ids = j.iter().map(|&a| format!("B({})", x.ids()[a])).collect();
    let mut graph = Graph::new(ids);
    let mut marks = vec![false; n];
    for u in 0..balls.len() {
        for &p in &balls[u] {
            marks[p] = true;
        }
        for v in u + 1..balls.len() {
            if balls[v].iter().any(|&p| marks[p]) {
                graph.add_edge(u, v, 1.0, EdgeKind::Plain)?;
            }
        }
        for &p in &balls[u] {
            marks[p] = false;
        }
    }
    Ok(GammaGraph {
        graph,
        radius,
        centers,
        balls,
        j,
        source: x.clone(),
        source_hops: hops,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GammaCheck {
    pub radius: f64,
    pub pairs_checked: usize,
    /// Pairs with `d(j v, j v') > 4R |vv'|`.
    pub upper_violations: Vec<(usize, usize)>,
    /// Pairs with `R |vv'| - R > d(j v, j v')`.
    pub lower_violations: Vec<(usize, usize)>,
    pub codensity: f64,
    pub codensity_bound: f64,
    /// `j` is a `(4R, 9R + 2)`-quasi-isometry on every vertex pair.
    pub stated_constants_hold: bool,
    pub qi: QiReport,
}

impl GammaCheck {
    pub fn passed(&self) -> bool {
        self.upper_violations.is_empty()
            && self.lower_violations.is_empty()
            && self.codensity <= self.codensity_bound
            && self.stated_constants_hold
    }
}

/// Exhaustive check of the two-sided vertex bounds for `j`.
pub fn verify_gamma_qi(gamma: &GammaGraph) -> GammaCheck {
    let r = gamma.radius;
    let m = gamma.graph.len();
    let ghops = hop_matrix(&gamma.graph);
    let mut samples = Vec::with_capacity(m * (m + 1) / 2);
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for v in 0..m {
        for w in v..m {
            let steps = ghops[v][w] as f64;
            let dj = gamma.source_distance(gamma.j[v], gamma.j[w]) as f64;
            if dj > 4.0 * r * steps {
                upper.push((v, w));
            }
            if r * steps - r > dj {
                lower.push((v, w));
            }
            samples.push(QiSample {
                pair: (v, w),
                source: steps,
                target: dj,
            });
        }
    }
    let (lambda, c) = (4.0 * r, 9.0 * r + 2.0);
    let stated_constants_hold = samples
        .iter()
        .all(|q| q.target <= lambda * q.source + c && q.source / lambda - c <= q.target);
    let codensity = (0..gamma.source.len())
        .map(|u| {
            gamma
                .j
                .iter()
                .map(|&a| gamma.source_distance(u, a))
                .min()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0) as f64;
    let qi = fit_qi(&samples, codensity, SamplingMode::Exhaustive);
    GammaCheck {
        radius: r,
        pairs_checked: samples.len(),
        upper_violations: upper,
        lower_violations: lower,
        codensity,
        codensity_bound: 2.0 * r,
        stated_constants_hold,
        qi,
    }
}

/// `f̂(v) = f(j(v))` on Γ vertices.
pub fn induce_hat_f(gamma: &GammaGraph, f: &[f64]) -> Vec<f64> {
    assert_eq!(f.len(), gamma.source.len(), "f must be total on the source");
    gamma.j.iter().map(|&a| f[a]).collect()
}
