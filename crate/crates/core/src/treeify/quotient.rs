use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::cone::ConedComplex;
use super::perturb::PerturbedFunction;
use super::tracks::TrackSystem;
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph};

/// Representative of a region: a `Y` vertex when one lies in it, otherwise
/// a piece of an edge between two crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Representative {
    Vertex { vertex: usize },
    Segment { edge: usize, index: usize },
}

#[derive(Debug, Clone)]
pub struct QuotientTree {
    pub t: Graph,
    /// `π`: `Y` vertex -> `T` vertex.
    pub pi: Vec<usize>,
    /// Track component -> `T` edge.
    pub edge_of_track: Vec<usize>,
    /// `i` on vertices.
    pub vertex_rep: Vec<Representative>,
    /// `i` on edges: a crossing of the track.
    pub edge_rep: Vec<usize>,
}

struct Segments {
    start: Vec<usize>,
    total: usize,
}

impl Segments {
    fn new(tracks: &TrackSystem) -> Self {
        let mut start = Vec::with_capacity(tracks.by_edge.len());
        let mut total = 0;
        for range in &tracks.by_edge {
            start.push(total);
            total += range.len() + 1;
        }
        Segments { start, total }
    }

    fn count(&self, tracks: &TrackSystem, edge: usize) -> usize {
        tracks.by_edge[edge].len() + 1
    }
}

fn band(f: &PerturbedFunction, y: &Graph, tracks: &TrackSystem, edge: usize, index: usize) -> i64 {
    let e = &y.edges()[edge];
    let range = tracks.by_edge[edge].clone();
    let from = if index == 0 {
        f.values[e.u]
    } else {
        tracks.crossings[range.start + index - 1].level as f64
    };
    let to = if index == range.len() {
        f.values[e.v]
    } else {
        tracks.crossings[range.start + index].level as f64
    };
    ((from + to) / 2.0).floor() as i64
}

/// Collapses each complementary region of the tracks to a vertex and each
/// track to an edge. Records the two regions beside each track in
/// `tracks.incident_regions`.
pub fn quotient(
    y: &ConedComplex,
    f: &PerturbedFunction,
    tracks: &mut TrackSystem,
) -> Result<QuotientTree> {
    let g = &y.y;
    let n = g.len();
    let segs = Segments::new(tracks);
    let seg_node = |edge: usize, index: usize| n + segs.start[edge] + index;
    let mut uf = UnionFind::<usize>::new(n + segs.total);

    for (i, e) in g.edges().iter().enumerate() {
        uf.union(e.u, seg_node(i, 0));
        uf.union(e.v, seg_node(i, segs.count(tracks, i) - 1));
    }
    for tri in &y.triangles {
        let pieces: Vec<(i64, usize)> = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
            .into_iter()
            .flat_map(|(a, b)| {
                let e = g.edge_between(a, b).expect("triangle edges exist");
                (0..segs.count(tracks, e)).map(move |s| (e, s))
            })
            .map(|(e, s)| (band(f, g, tracks, e, s), seg_node(e, s)))
            .collect();
        for (i, &(bi, si)) in pieces.iter().enumerate() {
            if let Some(&(_, sj)) = pieces[..i].iter().find(|(bj, _)| *bj == bi) {
                uf.union(si, sj);
            }
        }
    }

    let mut label = vec![usize::MAX; n + segs.total];
    let mut vertex_rep = Vec::new();
    let mut region = |node: usize, uf: &mut UnionFind<usize>, rep: Representative| {
        let root = uf.find(node);
        if label[root] == usize::MAX {
            label[root] = vertex_rep.len();
            vertex_rep.push(rep);
        }
        label[root]
    };
    let pi: Vec<usize> = (0..n)
        .map(|v| region(v, &mut uf, Representative::Vertex { vertex: v }))
        .collect();
    let mut seg_region = vec![0; segs.total];
    for edge in 0..g.edge_count() {
        for index in 0..segs.count(tracks, edge) {
            seg_region[segs.start[edge] + index] = region(
                seg_node(edge, index),
                &mut uf,
                Representative::Segment { edge, index },
            );
        }
    }

    let mut t = Graph::new(
        vertex_rep
            .iter()
            .map(|r| match *r {
                Representative::Vertex { vertex } => format!("[{}]", g.ids()[vertex]),
                Representative::Segment { edge, index } => format!("[e{edge}.{index}]"),
            })
            .collect(),
    );
    let mut sides = vec![None; tracks.component_count];
    let mut edge_rep = vec![0; tracks.component_count];
    for (c, crossing) in tracks.crossings.iter().enumerate() {
        let pos = c - tracks.by_edge[crossing.edge].start;
        let a = seg_region[segs.start[crossing.edge] + pos];
        let b = seg_region[segs.start[crossing.edge] + pos + 1];
        let pair = (a.min(b), a.max(b));
        let comp = tracks.component[c];
        match sides[comp] {
            None => {
                sides[comp] = Some(pair);
                edge_rep[comp] = c;
            }
            Some(p) if p == pair => {}
            Some(p) => {
                return Err(Error::NotATree(format!(
                    "track {comp} touches regions {p:?} and {pair:?}"
                )))
            }
        }
    }
    let mut edge_of_track = Vec::with_capacity(sides.len());
    for (comp, side) in sides.iter().enumerate() {
        let (a, b) = side.expect("every component has a crossing");
        if a == b {
            return Err(Error::NotATree(format!(
                "track {comp} does not separate region {a}"
            )));
        }
        let e = t
            .add_edge(a, b, 1.0, EdgeKind::Plain)
            .map_err(|_| Error::NotATree(format!("regions {a} and {b} joined by two tracks")))?;
        edge_of_track.push(e);
    }
    if !t.is_tree() {
        return Err(Error::NotATree(format!(
            "{} regions, {} tracks, connected: {}",
            t.len(),
            t.edge_count(),
            t.is_connected()
        )));
    }
    tracks.incident_regions = sides.into_iter().map(|s| s.expect("filled")).collect();
    Ok(QuotientTree {
        t,
        pi,
        edge_of_track,
        vertex_rep,
        edge_rep,
    })
}
