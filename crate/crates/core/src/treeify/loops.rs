use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{expansion_profile, Graph};

/// Longest fundamental cycle of the breadth-first spanning tree rooted at
/// vertex 0 (neighbors visited in insertion order). Zero for forests.
///
/// The fundamental cycles generate the cycle space, so this bounds the
/// length of a generating set of loops from above.
pub fn loop_bound(x: &Graph) -> Result<usize> {
    x.require_connected()?;
    if x.is_empty() {
        return Ok(0);
    }
    let n = x.len();
    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::from([0]);
    parent[0] = 0;
    while let Some(u) = queue.pop_front() {
        for &(v, e) in x.incident(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                parent_edge[v] = e;
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut longest = 0;
    for (e, edge) in x.edges().iter().enumerate() {
        if parent_edge[edge.u] == e || parent_edge[edge.v] == e {
            continue;
        }
        let (mut a, mut b) = (edge.u, edge.v);
        let mut len = 1;
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
            } else {
                b = parent[b];
            }
            len += 1;
        }
        longest = longest.max(len);
    }
    Ok(longest)
}

/// Scales `f` by `c = 1 / (5 max(ρ_f(L), 1))`, so that the scaled
/// expansion at `L` is at most `1/5`.
pub fn rescale(f: &[f64], x: &Graph, loop_len: usize) -> (Vec<f64>, f64) {
    let l = loop_len.max(1) as f64;
    let rho = expansion_profile(x, f, &[l]).samples[0].1;
    let c = 1.0 / (5.0 * rho.max(1.0));
    (f.iter().map(|v| v * c).collect(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trees_have_no_loops() {
        assert_eq!(loop_bound(&fixtures::path(9)).unwrap(), 0);
        assert_eq!(loop_bound(&fixtures::star(4)).unwrap(), 0);
        assert_eq!(loop_bound(&fixtures::path(1)).unwrap(), 0);
    }

    #[test]
    fn cycle_is_one_loop() {
        assert_eq!(loop_bound(&fixtures::cycle(8)).unwrap(), 8);
    }

    #[test]
    fn ladder_loops_are_squares() {
        assert_eq!(loop_bound(&fixtures::ladder(16)).unwrap(), 4);
    }

    #[test]
    fn rescale_examples() {
        let (g, c) = rescale(&[2.0; 8], &fixtures::cycle(8), 8);
        assert_eq!(c, 0.2);
        assert!(g.iter().all(|&v| v == 0.4));

        let f: Vec<f64> = (0..9).map(f64::from).collect();
        let (scaled, c) = rescale(&f, &fixtures::path(9), 1);
        assert_eq!(c, 0.2);
        let rho = expansion_profile(&fixtures::path(9), &scaled, &[1.0]).samples[0].1;
        assert!(rho < 0.25);

        let (_, c) = rescale(&fixtures::ladder_rungs(16), &fixtures::ladder(16), 4);
        assert_eq!(c, 1.0 / 20.0);
    }
}
