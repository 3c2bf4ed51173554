//! Undirected weighted graphs with shortest-path machinery and the
//! diagnostics that run on them.

mod bottleneck;
mod delta;
mod profile;
mod qi;

pub use bottleneck::{bottleneck_delta, BottleneckReport};
pub use delta::{four_point_delta, DeltaReport};
pub use profile::{
    expansion_profile, properness_profile, BandRow, ExpansionProfile, PropernessProfile,
};
pub(crate) use qi::codensity;
pub use qi::{fit_qi, qi_estimate, QiReport, QiSample, LAMBDA_GRID};

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    #[default]
    Plain,
    Horizontal,
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub len: f64,
    pub kind: EdgeKind,
}

/// Simple undirected graph: no loops, no parallel edges, positive lengths.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    ids: Vec<String>,
    levels: Option<Vec<i32>>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
    pairs: HashSet<(usize, usize)>,
}

impl Graph {
    pub fn new(ids: Vec<String>) -> Self {
        let n = ids.len();
        Self {
            ids,
            levels: None,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            pairs: HashSet::new(),
        }
    }

    /// `n` vertices labelled `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect())
    }

    /// Unit-length plain edges on `n` vertices.
    pub fn unit(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for (u, v) in edges {
            g.add_edge(u, v, 1.0, EdgeKind::Plain)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, id: String) -> usize {
        self.ids.push(id);
        self.adj.push(Vec::new());
        if let Some(levels) = &mut self.levels {
            levels.push(0);
        }
        self.ids.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, len: f64, kind: EdgeKind) -> Result<usize> {
        let n = self.len();
        if u >= n || v >= n {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) out of range"
            )));
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at {u}")));
        }
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) has length {len}"
            )));
        }
        if !self.pairs.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidParameter(format!(
                "duplicate edge ({u}, {v})"
            )));
        }
        let e = self.edges.len();
        self.edges.push(Edge { u, v, len, kind });
        self.adj[u].push((v, e));
        self.adj[v].push((u, e));
        Ok(e)
    }

    pub fn set_levels(&mut self, levels: Vec<i32>) -> Result<()> {
        if levels.len() != self.len() {
            return Err(Error::InvalidParameter(
                "level count differs from vertex count".into(),
            ));
        }
        self.levels = Some(levels);
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn levels(&self) -> Option<&[i32]> {
        self.levels.as_deref()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&(u.min(v), u.max(v)))
    }

    /// `(neighbor, edge index)` pairs.
    pub fn incident(&self, u: usize) -> &[(usize, usize)] {
        &self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().map(|&(v, _)| v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn is_unit(&self) -> bool {
        self.edges.iter().all(|e| e.len == 1.0)
    }

    /// Hop counts from `source`; `None` when unreachable.
    pub fn bfs_hops(&self, source: usize) -> Vec<Option<usize>> {
        self.bfs_hops_masked(source, |_| true)
    }

    /// Hop counts from `source` through vertices accepted by `keep`.
    pub fn bfs_hops_masked(
        &self,
        source: usize,
        keep: impl Fn(usize) -> bool,
    ) -> Vec<Option<usize>> {
        let mut hops = vec![None; self.len()];
        if !keep(source) {
            return hops;
        }
        hops[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let h = hops[u].unwrap_or(0) + 1;
            for &(v, _) in &self.adj[u] {
                if hops[v].is_none() && keep(v) {
                    hops[v] = Some(h);
                    queue.push_back(v);
                }
            }
        }
        hops
    }

    /// Shortest-path distances from `source`: breadth-first search on
    /// unit graphs, Dijkstra otherwise. Unreachable vertices get infinity.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        if self.is_unit() {
            return self
                .bfs_hops(source)
                .into_iter()
                .map(|h| h.map_or(f64::INFINITY, |h| h as f64))
                .collect();
        }
        let mut dist = vec![f64::INFINITY; self.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(Reverse((Key(0.0), source)));
        while let Some(Reverse((Key(d), u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, e) in &self.adj[u] {
                let nd = d + self.edges[e].len;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((Key(nd), v)));
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|s| self.distances_from(s))
            .collect();
        DistanceMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = self
                .bfs_hops(s)
                .iter()
                .enumerate()
                .filter_map(|(v, h)| h.map(|_| v))
                .collect();
            for &v in &members {
                comp[v] = out.len();
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.bfs_hops(0).iter().all(Option::is_some)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Connected and `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.edge_count() + 1 == self.len()
    }

    /// Largest hop distance between two vertices of `members`, measured
    /// inside the subgraph they induce. `members` must be connected there.
    pub fn induced_hop_diameter(&self, members: &[usize]) -> usize {
        let mut inside = vec![false; self.len()];
        for &v in members {
            inside[v] = true;
        }
        members
            .par_iter()
            .map(|&s| {
                self.bfs_hops_masked(s, |v| inside[v])
                    .into_iter()
                    .flatten()
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Components of the subgraph induced by vertices with `keep(v)`.
    pub fn induced_components(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] || !keep(s) {
                continue;
            }
            let mut members: Vec<usize> = self
                .bfs_hops_masked(s, &keep)
                .iter()
                .enumerate()
                .filter_map(|(v, h)| h.map(|_| v))
                .collect();
            for &v in &members {
                seen[v] = true;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Shortest-path metric of a connected graph as a validated space.
    pub fn path_metric(&self) -> Result<FiniteMetricSpace> {
        self.require_connected()?;
        let d = self.all_pairs_distances();
        FiniteMetricSpace::with_ids(self.ids.clone(), d.rows())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Dense row-major distance matrix; infinity between components.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|d| d.is_finite())
    }

    pub fn max_finite(&self) -> f64 {
        self.data
            .iter()
            .copied()
            .filter(|d| d.is_finite())
            .fold(0.0, f64::max)
    }
}
