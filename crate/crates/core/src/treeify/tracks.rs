use std::ops::Range;

use petgraph::unionfind::UnionFind;

use super::cone::ConedComplex;
use super::perturb::PerturbedFunction;
use crate::graph::Graph;

/// A point where an edge crosses an integer level. `t` is measured from
/// the edge's `u` endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub edge: usize,
    pub level: i64,
    pub t: f64,
}

#[derive(Debug, Clone)]
pub struct TrackSystem {
    /// Grouped by edge, ordered from `u` to `v` within each edge.
    pub crossings: Vec<Crossing>,
    pub by_edge: Vec<Range<usize>>,
    /// Track component of each crossing, numbered by first crossing.
    pub component: Vec<usize>,
    pub component_count: usize,
    /// Filled in by the quotient: the two regions beside each component.
    pub incident_regions: Vec<(usize, usize)>,
}

impl TrackSystem {
    /// Index of the crossing at `level` on `edge`, if any.
    pub fn crossing_at(&self, edge: usize, level: i64) -> Option<usize> {
        let range = self.by_edge[edge].clone();
        if range.is_empty() {
            return None;
        }
        let first = self.crossings[range.start].level;
        let last = self.crossings[range.end - 1].level;
        let offset = if first <= last {
            level.checked_sub(first)?
        } else {
            first.checked_sub(level)?
        };
        let idx = range.start + usize::try_from(offset).ok()?;
        (idx < range.end).then_some(idx)
    }
}

fn edge_crossings(edge: usize, fu: f64, fv: f64, out: &mut Vec<Crossing>) {
    let lo = fu.min(fv).floor() as i64 + 1;
    let hi = fu.max(fv).floor() as i64;
    let at = |n: i64| Crossing {
        edge,
        level: n,
        t: (n as f64 - fu) / (fv - fu),
    };
    if fu < fv {
        out.extend((lo..=hi).map(at));
    } else {
        out.extend((lo..=hi).rev().map(at));
    }
}

fn triangle_edges(y: &Graph, tri: &[usize; 3]) -> [usize; 3] {
    let e = |a, b| y.edge_between(a, b).expect("triangle edges exist");
    [e(tri[0], tri[1]), e(tri[0], tri[2]), e(tri[1], tri[2])]
}

/// Enumerates `f̃⁻¹(ℤ)` on the edges of `Y` and joins crossings of the same
/// level across each triangle.
pub fn extract_tracks(y: &ConedComplex, f: &PerturbedFunction) -> TrackSystem {
    let edges = y.y.edges();
    let mut crossings = Vec::new();
    let mut by_edge = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let start = crossings.len();
        edge_crossings(i, f.values[e.u], f.values[e.v], &mut crossings);
        by_edge.push(start..crossings.len());
    }
    let mut system = TrackSystem {
        crossings,
        by_edge,
        component: Vec::new(),
        component_count: 0,
        incident_regions: Vec::new(),
    };

    let mut uf = UnionFind::<usize>::new(system.crossings.len());
    for tri in &y.triangles {
        let tri_edges = triangle_edges(&y.y, tri);
        for &e in &tri_edges {
            for c in system.by_edge[e].clone() {
                let level = system.crossings[c].level;
                for &other in &tri_edges {
                    if other != e {
                        if let Some(d) = system.crossing_at(other, level) {
                            uf.union(c, d);
                        }
                    }
                }
            }
        }
    }
    let mut label = vec![usize::MAX; system.crossings.len()];
    let mut component = Vec::with_capacity(system.crossings.len());
    for c in 0..system.crossings.len() {
        let root = uf.find(c);
        if label[root] == usize::MAX {
            label[root] = system.component_count;
            system.component_count += 1;
        }
        component.push(label[root]);
    }
    system.component = component;
    system
}
