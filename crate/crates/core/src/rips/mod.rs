//! Rips graphs and the two leveled hyperbolic approximations of a finite
//! metric space.
//!
//! Both flavors stack one layer per integer level `k` at scale `r^k`:
//!
//! * **RH** has one vertex per point per level. Level `k` carries the Rips
//!   graph at scale `r^k` (horizontal edges) and a radial edge joins `x` at
//!   level `k` to `x'` at level `k + 1` whenever `d(x, x') <= r^k`.
//! * **H** has one vertex per distinct ball `B(a, 2 r^k)` over a maximal
//!   `r^k`-separated set of centers. Same-level balls that meet are joined
//!   horizontally; a ball is joined radially to every ball one level up
//!   that it contains.

mod branch;
mod distortion;
mod levels;

pub use branch::{branch_point, BranchPointResult, DescentTable};
pub use distortion::{rh_to_h_distortion, RoughIsometryReport, ROUGH_ISOMETRY_BOUND};
pub use levels::{
    level_band_connectivity, level_component_analysis, pq_detector, BandConnectivity, LevelRow,
    PqReport, Verdict,
};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph};
use crate::metric::{greedy_maximal_separated, FiniteMetricSpace};
use crate::scale::{check_parameter, level_scale, within, LevelWindow};

/// Refuse to build approximations larger than this many vertices.
pub const MAX_VERTICES: usize = 250_000;
pub const MAX_LEVELS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "RH")]
    Rh,
}

/// How ball intersection and containment are decided for H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallMode {
    /// Set operations on `{z in Z : d(a, z) <= 2 r^k}`.
    #[default]
    Witness,
    /// Center distances: meet iff `d <= 4 r^k`, contain iff
    /// `d + 2 r^(k+1) <= 2 r^k`.
    Metric,
}

#[derive(Debug, Clone)]
pub struct LeveledGraph {
    graph: Graph,
    flavor: Flavor,
    r: f64,
    window: LevelWindow,
    ball_mode: BallMode,
    /// Point of `Z` behind each vertex (the center, for H).
    anchor: Vec<usize>,
    /// First vertex of each level, plus a final sentinel.
    level_start: Vec<usize>,
    /// Ball members per vertex (H only).
    balls: Option<Vec<FixedBitSet>>,
}

impl LeveledGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn window(&self) -> LevelWindow {
        self.window
    }

    pub fn ball_mode(&self) -> BallMode {
        self.ball_mode
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn level(&self, v: usize) -> i32 {
        self.graph.levels().expect("leveled")[v]
    }

    pub fn anchor(&self, v: usize) -> usize {
        self.anchor[v]
    }

    /// Vertex range of level `k`.
    pub fn level_vertices(&self, k: i32) -> std::ops::Range<usize> {
        let i = (k - self.window.k_min) as usize;
        self.level_start[i]..self.level_start[i + 1]
    }

    /// Ball members of an H vertex.
    pub fn ball(&self, v: usize) -> Option<&FixedBitSet> {
        self.balls.as_ref().map(|b| &b[v])
    }

    pub fn ball_members(&self, v: usize) -> Option<Vec<usize>> {
        self.ball(v).map(|b| b.ones().collect())
    }

    /// RH vertex carrying point `p` at level `k` (the projection `p_k`).
    pub fn rh_vertex(&self, p: usize, k: i32) -> Option<usize> {
        if self.flavor != Flavor::Rh || !self.window.contains(k) {
            return None;
        }
        let range = self.level_vertices(k);
        (p < range.len()).then_some(range.start + p)
    }

    pub fn horizontal_edge_count(&self) -> usize {
        self.graph
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Horizontal)
            .count()
    }

    /// Components of the horizontal subgraph at level `k`.
    pub fn level_components(&self, k: i32) -> Vec<Vec<usize>> {
        let range = self.level_vertices(k);
        self.graph.induced_components(|v| range.contains(&v))
    }
}

/// Points of `z` joined when `d <= t`.
pub fn rips_graph(z: &FiniteMetricSpace, t: f64) -> Graph {
    let n = z.len();
    let mut g = Graph::new(z.ids().to_vec());
    for i in 0..n {
        for j in i + 1..n {
            if within(z.d(i, j), t) {
                g.add_edge(i, j, 1.0, EdgeKind::Plain).expect("simple");
            }
        }
    }
    g
}

fn check_size(vertices: usize, window: LevelWindow) -> Result<()> {
    if window.len() > MAX_LEVELS {
        return Err(Error::BudgetExceeded(format!(
            "{} levels requested, at most {MAX_LEVELS}",
            window.len()
        )));
    }
    if vertices > MAX_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "{vertices} vertices, at most {MAX_VERTICES}"
        )));
    }
    Ok(())
}

pub fn build_rh(z: &FiniteMetricSpace, r: f64, window: LevelWindow) -> Result<LeveledGraph> {
    check_parameter(r, false)?;
    let n = z.len();
    check_size(n * window.len(), window)?;
    let ids = window
        .levels()
        .flat_map(|k| z.ids().iter().map(move |id| format!("{id}@{k}")))
        .collect();
    let mut graph = Graph::new(ids);
    let mut levels = Vec::with_capacity(n * window.len());
    let mut anchor = Vec::with_capacity(n * window.len());
    let mut level_start = Vec::with_capacity(window.len() + 1);
    for (li, k) in window.levels().enumerate() {
        level_start.push(li * n);
        levels.extend(std::iter::repeat_n(k, n));
        anchor.extend(0..n);
    }
    level_start.push(n * window.len());
    graph.set_levels(levels)?;

    for (li, k) in window.levels().enumerate() {
        let t = level_scale(r, k);
        let base = li * n;
        for i in 0..n {
            for j in i + 1..n {
                if within(z.d(i, j), t) {
                    graph.add_edge(base + i, base + j, 1.0, EdgeKind::Horizontal)?;
                }
            }
        }
        if k < window.k_max {
            let up = base + n;
            for i in 0..n {
                for j in 0..n {
                    if within(z.d(i, j), t) {
                        graph.add_edge(base + i, up + j, 1.0, EdgeKind::Radial)?;
                    }
                }
            }
        }
    }
    Ok(LeveledGraph {
        graph,
        flavor: Flavor::Rh,
        r,
        window,
        ball_mode: BallMode::Witness,
        anchor,
        level_start,
        balls: None,
    })
}

pub fn build_h(
    z: &FiniteMetricSpace,
    r: f64,
    window: LevelWindow,
    mode: BallMode,
) -> Result<LeveledGraph> {
    check_parameter(r, false)?;
    let n = z.len();
    check_size(n * window.len(), window)?;

    // (center, ball) per vertex, level by level
    let mut centers: Vec<usize> = Vec::new();
    let mut balls: Vec<FixedBitSet> = Vec::new();
    let mut levels: Vec<i32> = Vec::new();
    let mut level_start = Vec::with_capacity(window.len() + 1);
    for k in window.levels() {
        level_start.push(centers.len());
        let radius = 2.0 * level_scale(r, k);
        let first = centers.len();
        for a in greedy_maximal_separated(z, level_scale(r, k)) {
            let mut ball = FixedBitSet::with_capacity(n);
            for p in 0..n {
                if within(z.d(a, p), radius) {
                    ball.insert(p);
                }
            }
            // equal balls at one level are one vertex, named by the lower id
            if balls[first..].iter().all(|b| *b != ball) {
                centers.push(a);
                balls.push(ball);
                levels.push(k);
            }
        }
    }
    level_start.push(centers.len());

    let ids = centers
        .iter()
        .zip(&levels)
        .map(|(&a, k)| format!("B({})@{k}", z.ids()[a]))
        .collect();
    let mut graph = Graph::new(ids);
    graph.set_levels(levels)?;

    let meets = |u: usize, v: usize, k: i32| match mode {
        BallMode::Witness => !balls[u].is_disjoint(&balls[v]),
        BallMode::Metric => within(z.d(centers[u], centers[v]), 4.0 * level_scale(r, k)),
    };
    let contains = |lower: usize, upper: usize, k: i32| match mode {
        BallMode::Witness => balls[upper].is_subset(&balls[lower]),
        BallMode::Metric => within(
            z.d(centers[lower], centers[upper]) + 2.0 * level_scale(r, k + 1),
            2.0 * level_scale(r, k),
        ),
    };
    for (li, k) in window.levels().enumerate() {
        let here = level_start[li]..level_start[li + 1];
        for u in here.clone() {
            for v in u + 1..here.end {
                if meets(u, v, k) {
                    graph.add_edge(u, v, 1.0, EdgeKind::Horizontal)?;
                }
            }
        }
        if k < window.k_max {
            for u in here.clone() {
                for v in level_start[li + 1]..level_start[li + 2] {
                    if contains(u, v, k) {
                        graph.add_edge(u, v, 1.0, EdgeKind::Radial)?;
                    }
                }
            }
        }
    }
    Ok(LeveledGraph {
        graph,
        flavor: Flavor::H,
        r,
        window,
        ball_mode: mode,
        anchor: centers,
        level_start,
        balls: Some(balls),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(a: i32, b: i32) -> LevelWindow {
        LevelWindow::new(a, b).unwrap()
    }

    #[test]
    fn rips_on_line3() {
        let z = fixtures::line3();
        assert_eq!(rips_graph(&z, 1.0).edge_count(), 1);
        assert!(rips_graph(&z, 2.0).has_edge(1, 2));
        assert_eq!(rips_graph(&z, 2.0).edge_count(), 2);
        assert_eq!(rips_graph(&z, 3.0).edge_count(), 3);
    }

    #[test]
    fn rh_vertex_count() {
        let x = build_rh(&fixtures::cantor5(), 1.0 / 6.0, w(-1, 2)).unwrap();
        assert_eq!(x.len(), 64 * 4);
    }

    #[test]
    fn rh_ult4_level_two_pairs() {
        let x = build_rh(&fixtures::ult4(), 1.0 / 6.0, w(0, 2)).unwrap();
        let lvl = x.level_vertices(2);
        let horizontal: Vec<(usize, usize)> = x
            .graph()
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Horizontal && lvl.contains(&e.u))
            .map(|e| (e.u - lvl.start, e.v - lvl.start))
            .collect();
        assert_eq!(horizontal, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn rh_two_points() {
        let z = FiniteMetricSpace::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let x = build_rh(&z, 1.0 / 6.0, w(0, 1)).unwrap();
        let g = x.graph();
        assert!(g.has_edge(0, 1)); // level 0
        assert!(!g.has_edge(2, 3)); // level 1: 1 > 1/6
        assert!(g.has_edge(0, 3)); // a0 - b1 since d = 1 <= r^0
        assert!(g.has_edge(1, 2));
        assert_eq!(x.horizontal_edge_count(), 1);
    }

    #[test]
    fn h_ult4_is_a_tree_without_horizontal_edges() {
        let x = build_h(&fixtures::ult4(), 1.0 / 6.0, w(0, 2), BallMode::Witness).unwrap();
        assert_eq!(x.horizontal_edge_count(), 0);
        assert!(x.graph().is_tree());
        assert_eq!(x.level_vertices(0).len(), 1);
        assert_eq!(x.level_vertices(1).len(), 1);
        assert_eq!(x.level_vertices(2).len(), 2);
        assert_eq!(x.ball_members(3), Some(vec![2, 3]));
    }

    #[test]
    fn h_line3_level_zero() {
        let x = build_h(&fixtures::line3(), 1.0 / 6.0, w(0, 0), BallMode::Witness).unwrap();
        assert_eq!(x.len(), 3);
        // balls of radius 2 around 0, 1, 3 all pairwise share a point
        assert_eq!(x.horizontal_edge_count(), 3);
    }

    #[test]
    fn rejects_large_parameter() {
        assert!(build_rh(&fixtures::line3(), 0.5, w(0, 1)).is_err());
    }
}
