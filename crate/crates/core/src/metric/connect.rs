use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use super::FiniteMetricSpace;
use crate::scale::{at_least, within};

/// An ε-chain between two points, as point indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainCertificate {
    pub scale: f64,
    pub endpoints: (usize, usize),
    pub chain: Vec<usize>,
    pub hop_count: usize,
}

impl ChainCertificate {
    /// Re-checks the certificate against `z`.
    pub fn is_valid(&self, z: &FiniteMetricSpace) -> bool {
        self.chain.first() == Some(&self.endpoints.0)
            && self.chain.last() == Some(&self.endpoints.1)
            && self.hop_count + 1 == self.chain.len()
            && self
                .chain
                .windows(2)
                .all(|w| within(z.d(w[0], w[1]), self.scale))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentHops {
    pub members: Vec<usize>,
    /// Largest over member pairs of the shortest ε-chain hop count.
    pub max_hops: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FiniteConnectivity {
    pub scale: f64,
    pub bound: usize,
    pub holds: bool,
    pub components: Vec<ComponentHops>,
    pub worst: Option<ChainCertificate>,
}

impl FiniteConnectivity {
    pub fn max_hops(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.max_hops)
            .max()
            .unwrap_or(0)
    }
}

/// Adjacency lists of the graph joining points at distance at most `eps`.
pub(crate) fn step_graph(z: &FiniteMetricSpace, eps: f64) -> Vec<Vec<usize>> {
    let n = z.len();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && within(z.d(i, j), eps))
                .collect()
        })
        .collect()
}

/// Partition into ε-connected components. A step of length exactly `eps`
/// is allowed. Blocks are sorted, and ordered by their smallest member.
pub fn epsilon_components(z: &FiniteMetricSpace, eps: f64) -> Vec<Vec<usize>> {
    let n = z.len();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if within(z.d(i, j), eps) {
                uf.union(i, j);
            }
        }
    }
    group_by_root(n, |i| uf.find(i))
}

pub(crate) fn group_by_root(n: usize, mut root: impl FnMut(usize) -> usize) -> Vec<Vec<usize>> {
    let mut slot = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = root(i);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(i);
    }
    blocks
}

/// Hop eccentricities of every ε-component, and whether all of them stay
/// within `bound` hops.
pub fn d_finitely_connected(z: &FiniteMetricSpace, eps: f64, bound: usize) -> FiniteConnectivity {
    let adj = step_graph(z, eps);
    let n = z.len();
    // (eccentricity, source, far end, parents) per source; max reduction
    // with a fixed tie-break keeps the result independent of scheduling.
    let per_source: Vec<(usize, usize, Vec<usize>)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let (hops, parent) = bfs_tree(&adj, s);
            let (ecc, far) = hops
                .iter()
                .enumerate()
                .filter_map(|(v, h)| h.map(|h| (h, v)))
                .fold(
                    (0, s),
                    |best, (h, v)| if h > best.0 { (h, v) } else { best },
                );
            (ecc, far, parent)
        })
        .collect();

    let mut components = Vec::new();
    let mut worst: Option<ChainCertificate> = None;
    for members in epsilon_components(z, eps) {
        let (source, &(ecc, far, ref parent)) = members
            .iter()
            .map(|&s| (s, &per_source[s]))
            .fold(
                None::<(usize, &(usize, usize, Vec<usize>))>,
                |best, cand| match best {
                    Some(b) if b.1 .0 >= cand.1 .0 => Some(b),
                    _ => Some(cand),
                },
            )
            .expect("components are nonempty");
        if worst.as_ref().is_none_or(|w| ecc > w.hop_count) {
            let mut chain = vec![far];
            let mut v = far;
            while v != source {
                v = parent[v];
                chain.push(v);
            }
            chain.reverse();
            worst = Some(ChainCertificate {
                scale: eps,
                endpoints: (source, far),
                chain,
                hop_count: ecc,
            });
        }
        components.push(ComponentHops {
            members,
            max_hops: ecc,
        });
    }
    let holds = components.iter().all(|c| c.max_hops <= bound);
    FiniteConnectivity {
        scale: eps,
        bound,
        holds,
        components,
        worst,
    }
}

fn bfs_tree(adj: &[Vec<usize>], source: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut hops = vec![None; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    hops[source] = Some(0);
    parent[source] = source;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let h = hops[u].unwrap_or(0);
        for &v in &adj[u] {
            if hops[v].is_none() {
                hops[v] = Some(h + 1);
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (hops, parent)
}

/// Greedy maximal `sep`-separated subset, scanning points in index order.
pub fn greedy_maximal_separated(z: &FiniteMetricSpace, sep: f64) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for p in 0..z.len() {
        if chosen.iter().all(|&a| at_least(z.d(p, a), sep)) {
            chosen.push(p);
        }
    }
    chosen
}
