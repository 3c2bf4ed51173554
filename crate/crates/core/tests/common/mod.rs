//! Brute-force oracles and input generators shared by the integration
//! tests. Nothing here calls the algorithms it checks.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use coarse_forest::{FiniteMetricSpace, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * (1.0 + a.abs().max(b.abs()))
}

/// Hop distances by plain breadth-first search over `adj`.
pub fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.len()];
    for e in g.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    adj
}

pub fn hop_matrix(g: &Graph) -> Vec<Vec<usize>> {
    let adj = adjacency(g);
    (0..g.len())
        .map(|s| {
            bfs(&adj, s)
                .into_iter()
                .map(|d| d.expect("connected"))
                .collect()
        })
        .collect()
}

/// Minimax chain cost over every simple chain, by exhaustive search.
pub fn minimax_all_chains(z: &FiniteMetricSpace) -> Vec<Vec<f64>> {
    let n = z.len();
    let mut best = vec![vec![f64::INFINITY; n]; n];
    for s in 0..n {
        let mut used = vec![false; n];
        used[s] = true;
        extend_chain(z, s, 0.0, &mut used, &mut best[s]);
        best[s][s] = 0.0;
    }
    best
}

fn extend_chain(z: &FiniteMetricSpace, at: usize, cost: f64, used: &mut [bool], best: &mut [f64]) {
    for next in 0..z.len() {
        if used[next] {
            continue;
        }
        let c = cost.max(z.d(at, next));
        if c < best[next] {
            best[next] = c;
        }
        used[next] = true;
        extend_chain(z, next, c, used, best);
        used[next] = false;
    }
}

/// Graph with an edge wherever `d <= eps` (relative tolerance).
pub fn step_adjacency(z: &FiniteMetricSpace, eps: f64) -> Vec<Vec<usize>> {
    let n = z.len();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && z.d(i, j) <= eps + TOL * eps.abs())
                .collect()
        })
        .collect()
}

pub fn partition_by_bfs(adj: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut blocks = BTreeSet::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        let block: BTreeSet<usize> = bfs(adj, s)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect();
        for &v in &block {
            seen[v] = true;
        }
        blocks.insert(block);
    }
    blocks
}

/// All-pairs hop counts by Floyd-Warshall; `usize::MAX` when unreachable.
pub fn floyd_hops(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut d = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for &j in &adj[i] {
            d[i][j] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == usize::MAX {
                continue;
            }
            for j in 0..n {
                if d[k][j] != usize::MAX && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Largest hop count inside any ε-component.
pub fn max_chain_hops(z: &FiniteMetricSpace, eps: f64) -> usize {
    floyd_hops(&step_adjacency(z, eps))
        .into_iter()
        .flatten()
        .filter(|&h| h != usize::MAX)
        .max()
        .unwrap_or(0)
}

/// Bottleneck constant by enumerating every simple path on the
/// barycentric subdivision. Exponential; small graphs only.
pub fn bottleneck_by_paths(g: &Graph) -> f64 {
    let n = g.len();
    let mut adj = vec![Vec::new(); n + g.edge_count()];
    for (i, e) in g.edges().iter().enumerate() {
        for end in [e.u, e.v] {
            adj[end].push(n + i);
            adj[n + i].push(end);
        }
    }
    let dist: Vec<Vec<usize>> = (0..adj.len())
        .map(|s| bfs(&adj, s).into_iter().map(|d| d.unwrap()).collect())
        .collect();
    let mut worst = 0;
    for x in 0..n {
        for y in x + 1..n {
            let half = dist[x][y] / 2;
            let mut need = half;
            for m in 0..adj.len() {
                if dist[x][m] != half || dist[y][m] != half {
                    continue;
                }
                // The farthest any x-y path can stay from m.
                let mut escape = 0;
                let mut on_path = vec![false; adj.len()];
                on_path[x] = true;
                walk(&adj, &dist[m], x, y, dist[m][x], &mut on_path, &mut escape);
                need = need.min(escape + 1);
            }
            worst = worst.max(need);
        }
    }
    worst as f64 / 2.0
}

fn walk(
    adj: &[Vec<usize>],
    from_m: &[usize],
    at: usize,
    target: usize,
    closest: usize,
    on_path: &mut [bool],
    escape: &mut usize,
) {
    if at == target {
        *escape = (*escape).max(closest);
        return;
    }
    if closest <= *escape {
        return;
    }
    for &next in &adj[at] {
        if !on_path[next] {
            on_path[next] = true;
            walk(
                adj,
                from_m,
                next,
                target,
                closest.min(from_m[next]),
                on_path,
                escape,
            );
            on_path[next] = false;
        }
    }
}

/// Longest fundamental cycle of the breadth-first tree from vertex 0,
/// measured as the symmetric difference of the two root paths plus the
/// closing edge.
pub fn fundamental_cycle_lengths(g: &Graph) -> Vec<usize> {
    let n = g.len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, g.edge_between(u, v).unwrap()));
                queue.push_back(v);
            }
        }
    }
    let root_path = |mut v: usize| {
        let mut edges = BTreeSet::new();
        while let Some((p, e)) = parent[v] {
            edges.insert(e);
            v = p;
        }
        edges
    };
    let tree_edges: BTreeSet<usize> = (0..n).filter_map(|v| parent[v].map(|p| p.1)).collect();
    (0..g.edge_count())
        .filter(|e| !tree_edges.contains(e))
        .map(|e| {
            let edge = &g.edges()[e];
            root_path(edge.u)
                .symmetric_difference(&root_path(edge.v))
                .count()
                + 1
        })
        .collect()
}

/// Largest hop diameter of a component of `{v : |f(v) - x| <= N}` over
/// band centers `min f, min f + step, ...`, enumerated directly.
pub fn properness_by_bands(g: &Graph, f: &[f64], half_width: f64, step: f64) -> usize {
    let lo = f.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut worst = 0;
    let mut center = lo;
    loop {
        let inside: Vec<bool> = f
            .iter()
            .map(|v| (v - center).abs() <= half_width + TOL)
            .collect();
        let mut adj = vec![Vec::new(); g.len()];
        for e in g.edges() {
            if inside[e.u] && inside[e.v] {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        for row in floyd_hops(&adj)
            .iter()
            .enumerate()
            .filter(|(i, _)| inside[*i])
        {
            for (j, &h) in row.1.iter().enumerate() {
                if inside[j] && h != usize::MAX {
                    worst = worst.max(h);
                }
            }
        }
        if center >= hi - TOL {
            break;
        }
        center += step;
    }
    worst
}

/// Max over ordered quadruples of the four-point gap, halved.
pub fn four_point_by_quadruples(g: &Graph) -> f64 {
    let d = hop_matrix(g);
    let n = g.len();
    let mut worst = 0usize;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
                    s.sort_unstable();
                    worst = worst.max(s[2] - s[1]);
                }
            }
        }
    }
    worst as f64 / 2.0
}

/// Distinct integer points in the plane, Chebyshev distances.
pub fn random_plane_metric(seed: u64, n: usize, span: i64) -> FiniteMetricSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = BTreeSet::new();
    while pts.len() < n {
        pts.insert((rng.gen_range(0..span), rng.gen_range(0..span)));
    }
    let pts: Vec<Vec<f64>> = pts
        .into_iter()
        .map(|(a, b)| vec![a as f64, b as f64])
        .collect();
    FiniteMetricSpace::from_points(&pts, coarse_forest::metric::PointMetric::Chebyshev).unwrap()
}

/// Random connected graph: a random tree plus `extra` chords.
pub fn random_connected_graph(seed: u64, n: usize, extra: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_vertices(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v, 1.0, Default::default()).unwrap();
    }
    let mut tries = 0;
    let mut added = 0;
    while added < extra && tries < 50 * (extra + 1) && n > 2 {
        tries += 1;
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v, 1.0, Default::default()).unwrap();
            added += 1;
        }
    }
    g
}
