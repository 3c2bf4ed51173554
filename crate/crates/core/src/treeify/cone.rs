use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph};

/// A graph with closed balls around a separated set coned off.
///
/// Vertices `0..base_len` are the base graph; cone vertex `base_len + i`
/// sits over the ball around `centers[i]`. Cone edges have length `R`.
#[derive(Debug, Clone)]
pub struct ConedComplex {
    pub y: Graph,
    pub base_len: usize,
    pub centers: Vec<usize>,
    /// `(cone vertex, u, w)` for each base edge `(u, w)` inside a ball.
    pub triangles: Vec<[usize; 3]>,
    pub loop_bound: usize,
    pub radius: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConeCounts {
    pub base_vertices: usize,
    pub cone_vertices: usize,
    pub cone_edges: usize,
    pub triangles: usize,
}

impl ConedComplex {
    pub fn counts(&self) -> ConeCounts {
        ConeCounts {
            base_vertices: self.base_len,
            cone_vertices: self.centers.len(),
            cone_edges: self.y.edge_count() - self.base_edge_count(),
            triangles: self.triangles.len(),
        }
    }

    fn base_edge_count(&self) -> usize {
        self.y
            .edges()
            .iter()
            .filter(|e| e.u < self.base_len && e.v < self.base_len)
            .count()
    }

    pub fn is_cone_vertex(&self, v: usize) -> bool {
        v >= self.base_len
    }

    /// Center under cone vertex `v`, or `v` itself for base vertices.
    pub fn base_of(&self, v: usize) -> usize {
        if self.is_cone_vertex(v) {
            self.centers[v - self.base_len]
        } else {
            v
        }
    }
}

/// Cones every closed `3L`-ball around a maximal `L`-separated set.
pub fn cone_complex(x: &Graph, loop_len: usize) -> Result<ConedComplex> {
    if loop_len == 0 {
        return Err(Error::InvalidParameter(
            "loop bound must be at least 1".into(),
        ));
    }
    if !x.is_unit() {
        return Err(Error::NonUnitEdges);
    }
    x.require_connected()?;
    let n = x.len();
    let radius = 3 * loop_len;
    let hops: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            x.bfs_hops(s)
                .into_iter()
                .map(|h| h.expect("connected"))
                .collect()
        })
        .collect();
    let mut centers: Vec<usize> = Vec::new();
    for p in 0..n {
        if centers.iter().all(|&a| hops[p][a] >= loop_len) {
            centers.push(p);
        }
    }

    let mut y = x.clone();
    let mut triangles = Vec::new();
    for &a in &centers {
        let cone = y.add_vertex(format!("cone({})", x.ids()[a]));
        let inside: Vec<bool> = (0..n).map(|u| hops[a][u] <= radius).collect();
        for u in (0..n).filter(|&u| inside[u]) {
            y.add_edge(cone, u, radius as f64, EdgeKind::Plain)?;
        }
        for e in x.edges() {
            if inside[e.u] && inside[e.v] {
                triangles.push([cone, e.u.min(e.v), e.u.max(e.v)]);
            }
        }
    }
    Ok(ConedComplex {
        y,
        base_len: n,
        centers,
        triangles,
        loop_bound: loop_len,
        radius,
    })
}
