//! Cone points and branch points.
//!
//! A cone point of `{x, x'}` is a vertex `y` no higher than either of them
//! that both reach by radial geodesics. Any path that steps down exactly
//! one level per edge is such a geodesic, since a single edge changes the
//! level by at most one. The branch point is a cone point of highest level;
//! ties go to the lowest vertex index.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::LeveledGraph;
use crate::error::{Error, Result};
use crate::graph::EdgeKind;

/// For every vertex, the vertices reachable by descending radial paths,
/// level by level (as local indices within each level).
#[derive(Debug, Clone)]
pub struct DescentTable {
    k_min: i32,
    /// `reach[v][k - k_min]` for `k <= level(v)`.
    reach: Vec<Vec<FixedBitSet>>,
}

fn descend_from(x: &LeveledGraph, down: &[Vec<usize>], v: usize) -> Vec<FixedBitSet> {
    let k_min = x.window().k_min;
    let kv = x.level(v);
    let mut out: Vec<FixedBitSet> = Vec::with_capacity((kv - k_min + 1) as usize);
    let mut current = FixedBitSet::with_capacity(x.level_vertices(kv).len());
    current.insert(v - x.level_vertices(kv).start);
    let mut level = kv;
    let mut stack = vec![current];
    while level > k_min {
        let here = x.level_vertices(level).start;
        let mut next = FixedBitSet::with_capacity(x.level_vertices(level - 1).len());
        for u in stack.last().expect("nonempty").ones() {
            for &w in &down[here + u] {
                next.insert(w);
            }
        }
        stack.push(next);
        level -= 1;
    }
    stack.reverse();
    out.extend(stack);
    out
}

/// Radial neighbors one level down, as local indices.
fn down_lists(x: &LeveledGraph) -> Vec<Vec<usize>> {
    let g = x.graph();
    (0..g.len())
        .map(|v| {
            let k = x.level(v);
            if k == x.window().k_min {
                return Vec::new();
            }
            let start = x.level_vertices(k - 1).start;
            let mut d: Vec<usize> = g
                .incident(v)
                .iter()
                .filter(|&&(w, e)| g.edges()[e].kind == EdgeKind::Radial && x.level(w) == k - 1)
                .map(|&(w, _)| w - start)
                .collect();
            d.sort_unstable();
            d
        })
        .collect()
}

impl DescentTable {
    pub fn new(x: &LeveledGraph) -> Self {
        let down = down_lists(x);
        let reach = (0..x.len()).map(|v| descend_from(x, &down, v)).collect();
        Self {
            k_min: x.window().k_min,
            reach,
        }
    }

    /// Level of the branch point of `{a, b}` and its local index, if a cone
    /// point exists within the built levels.
    pub fn branch(&self, x: &LeveledGraph, a: usize, b: usize) -> Option<(i32, usize)> {
        let top = x.level(a).min(x.level(b));
        (self.k_min..=top).rev().find_map(|m| {
            let i = (m - self.k_min) as usize;
            let mut both = self.reach[a][i].clone();
            both.intersect_with(&self.reach[b][i]);
            both.minimum().map(|y| (m, y))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchPointResult {
    pub pair: (usize, usize),
    pub branch: usize,
    pub branch_level: i32,
    /// `(|xy| + |yx'| - |xx'|) / 2` in the graph metric.
    pub gromov_product: f64,
    pub geodesic_from_first: Vec<usize>,
    pub geodesic_from_second: Vec<usize>,
    /// `(|xy|, |yx'|, |xx'|)`.
    pub distances: (usize, usize, usize),
}

/// Walks back up from `y` to `v` through the descent sets of `v`.
fn radial_path(x: &LeveledGraph, reach: &[FixedBitSet], v: usize, y: usize) -> Vec<usize> {
    let g = x.graph();
    let k_min = x.window().k_min;
    let mut path = vec![y];
    let mut cur = y;
    for level in x.level(y) + 1..=x.level(v) {
        let start = x.level_vertices(level).start;
        let set = &reach[(level - k_min) as usize];
        cur = set
            .ones()
            .map(|i| start + i)
            .find(|&w| g.has_edge(cur, w))
            .expect("descent sets are connected by radial edges");
        path.push(cur);
    }
    path.reverse();
    path
}

pub fn branch_point(x: &LeveledGraph, a: usize, b: usize) -> Result<BranchPointResult> {
    let down = down_lists(x);
    let ra = descend_from(x, &down, a);
    let rb = descend_from(x, &down, b);
    let k_min = x.window().k_min;
    let top = x.level(a).min(x.level(b));
    let (level, local) = (k_min..=top)
        .rev()
        .find_map(|m| {
            let i = (m - k_min) as usize;
            let mut both = ra[i].clone();
            both.intersect_with(&rb[i]);
            both.minimum().map(|y| (m, y))
        })
        .ok_or(Error::RangeExhausted {
            k_min,
            k_max: x.window().k_max,
        })?;
    let y = x.level_vertices(level).start + local;
    let from_a = x.graph().bfs_hops(a);
    let from_y = x.graph().bfs_hops(y);
    let xy = from_y[a].expect("radially connected");
    let yx2 = from_y[b].expect("radially connected");
    let xx2 = from_a[b].expect("connected through y");
    Ok(BranchPointResult {
        pair: (a, b),
        branch: y,
        branch_level: level,
        gromov_product: (xy + yx2 - xx2) as f64 / 2.0,
        geodesic_from_first: radial_path(x, &ra, a, y),
        geodesic_from_second: radial_path(x, &rb, b, y),
        distances: (xy, yx2, xx2),
    })
}
