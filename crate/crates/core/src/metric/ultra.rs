use serde::Serialize;

use super::FiniteMetricSpace;
use crate::scale::within;

/// A metric space known to satisfy the strong triangle inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct UltrametricSpace {
    base: FiniteMetricSpace,
}

impl UltrametricSpace {
    /// Wraps `base` if it is an ultrametric, handing it back otherwise.
    pub fn new(base: FiniteMetricSpace) -> Result<Self, FiniteMetricSpace> {
        if is_ultrametric(&base).holds {
            Ok(Self { base })
        } else {
            Err(base)
        }
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.base
    }

    pub fn into_space(self) -> FiniteMetricSpace {
        self.base
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UltrametricCheck {
    pub holds: bool,
    /// `(x, y, z)` with `d(x, y) > max(d(x, z), d(z, y))`.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn is_ultrametric(z: &FiniteMetricSpace) -> UltrametricCheck {
    let n = z.len();
    for x in 0..n {
        for y in x + 1..n {
            for w in 0..n {
                if w == x || w == y {
                    continue;
                }
                if !within(z.d(x, y), z.d(x, w).max(z.d(w, y))) {
                    return UltrametricCheck {
                        holds: false,
                        witness: Some((x, y, w)),
                    };
                }
            }
        }
    }
    UltrametricCheck {
        holds: true,
        witness: None,
    }
}

/// Largest ultrametric below `z`: the minimax chain cost between every
/// pair, read off a minimum spanning tree.
pub fn subdominant_ultrametric(z: &FiniteMetricSpace) -> UltrametricSpace {
    let n = z.len();
    let tree = minimum_spanning_tree(z);
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in &tree {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    let mut dist = vec![0.0; n * n];
    let mut stack = Vec::new();
    let mut seen = vec![false; n];
    for root in 0..n {
        seen.fill(false);
        seen[root] = true;
        stack.push((root, 0.0f64));
        while let Some((u, bottleneck)) = stack.pop() {
            dist[root * n + u] = bottleneck;
            for &(v, w) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, bottleneck.max(w)));
                }
            }
        }
    }
    UltrametricSpace {
        base: FiniteMetricSpace::from_trusted(z.ids().to_vec(), dist),
    }
}

/// Dense Prim, O(n^2). Ties resolve to the lowest index.
fn minimum_spanning_tree(z: &FiniteMetricSpace) -> Vec<(usize, usize, f64)> {
    let n = z.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return edges;
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![0usize; n];
    best[0] = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            .expect("a vertex remains");
        in_tree[u] = true;
        if u != 0 {
            edges.push((parent[u], u, best[u]));
        }
        for v in 0..n {
            if !in_tree[v] && z.d(u, v) < best[v] {
                best[v] = z.d(u, v);
                parent[v] = u;
            }
        }
    }
    edges
}
