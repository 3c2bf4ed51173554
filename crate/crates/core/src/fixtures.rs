//! Small named spaces and graphs used throughout the tests, the CLI
//! `fixture` command and the documentation.

use crate::graph::Graph;
use crate::metric::FiniteMetricSpace;

fn integer_line(ids: Vec<String>, coords: &[i64], unit: f64) -> FiniteMetricSpace {
    let rows = coords
        .iter()
        .map(|a| coords.iter().map(|b| (a - b).abs() as f64 / unit).collect())
        .collect();
    FiniteMetricSpace::with_ids(ids, rows).expect("points on a line form a metric")
}

/// The points 0, 1, 3 of the real line.
pub fn line3() -> FiniteMetricSpace {
    integer_line(vec!["0".into(), "1".into(), "3".into()], &[0, 1, 3], 1.0)
}

/// Two tight pairs: `d(a,b) = d(c,d) = 1/36`, every cross pair at `1/6`.
pub fn ult4() -> FiniteMetricSpace {
    let (near, far) = (1.0 / 36.0, 1.0 / 6.0);
    let rows = vec![
        vec![0.0, near, far, far],
        vec![near, 0.0, far, far],
        vec![far, far, 0.0, near],
        vec![far, far, near, 0.0],
    ];
    FiniteMetricSpace::with_ids(["a", "b", "c", "d"].map(String::from).to_vec(), rows)
        .expect("ultrametric")
}

/// Integer numerators (over `3^depth`) of the endpoints of the level-`depth`
/// middle-thirds intervals, ascending.
pub fn cantor_numerators(depth: u32) -> Vec<i64> {
    let mut intervals = vec![(0i64, 3i64.pow(depth))];
    for _ in 0..depth {
        intervals = intervals
            .into_iter()
            .flat_map(|(a, b)| {
                let third = (b - a) / 3;
                [(a, a + third), (b - third, b)]
            })
            .collect();
    }
    intervals.into_iter().flat_map(|(a, b)| [a, b]).collect()
}

/// The 64 endpoints of the level-5 middle-thirds construction on `[0, 1]`.
pub fn cantor5() -> FiniteMetricSpace {
    let coords = cantor_numerators(5);
    let ids = coords.iter().map(|c| format!("{c}/243")).collect();
    integer_line(ids, &coords, 243.0)
}

/// `n` evenly spaced points on `[0, 1]`.
pub fn uniform(n: usize) -> FiniteMetricSpace {
    let coords: Vec<i64> = (0..n as i64).collect();
    let ids = coords.iter().map(|c| c.to_string()).collect();
    integer_line(ids, &coords, (n.max(2) - 1) as f64)
}

pub fn unif64() -> FiniteMetricSpace {
    uniform(64)
}

/// `{0, 1, ..., n-1}` with unit spacing.
pub fn path_metric(n: usize) -> FiniteMetricSpace {
    let coords: Vec<i64> = (0..n as i64).collect();
    let ids = coords.iter().map(|c| c.to_string()).collect();
    integer_line(ids, &coords, 1.0)
}

pub fn path(n: usize) -> Graph {
    Graph::unit(n, (1..n).map(|i| (i - 1, i))).expect("path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::unit(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::unit(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("complete graph")
}

/// Star with `legs` unit legs around vertex 0.
pub fn star(legs: usize) -> Graph {
    Graph::unit(legs + 1, (1..=legs).map(|i| (0, i))).expect("star")
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::unit(rows * cols, edges).expect("grid")
}

/// Column index of every grid vertex.
pub fn grid_columns(rows: usize, cols: usize) -> Vec<f64> {
    (0..rows * cols).map(|v| (v % cols) as f64).collect()
}

/// Ladder with `k` rungs, vertex `rail * k + i` for rail 0 or 1.
pub fn ladder(k: usize) -> Graph {
    let mut edges = Vec::new();
    // Rails before rungs, so breadth-first search from 0 climbs the rungs.
    for i in 0..k {
        if i + 1 < k {
            edges.push((i, i + 1));
            edges.push((k + i, k + i + 1));
        }
        edges.push((i, k + i));
    }
    Graph::unit(2 * k, edges).expect("ladder")
}

/// Rung index of every ladder vertex.
pub fn ladder_rungs(k: usize) -> Vec<f64> {
    (0..2 * k).map(|v| (v % k) as f64).collect()
}

/// Every named fixture, for the CLI.
pub fn metric_by_name(name: &str) -> Option<FiniteMetricSpace> {
    Some(match name {
        "line3" => line3(),
        "ult4" => ult4(),
        "cantor5" => cantor5(),
        "unif64" => unif64(),
        _ => return None,
    })
}

/// Graph fixtures by name: `path9`, `c8`, `grid5`, `ladder16`, `star3`, ...
pub fn graph_by_name(name: &str) -> Option<Graph> {
    let num = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
    };
    if let Some(n) = num("path") {
        return (n >= 1).then(|| path(n));
    }
    if let Some(n) = num("c") {
        return (n >= 3).then(|| cycle(n));
    }
    if let Some(n) = num("grid") {
        return (n >= 1).then(|| grid(n, n));
    }
    if let Some(n) = num("ladder") {
        return (n >= 1).then(|| ladder(n));
    }
    if let Some(n) = num("star") {
        return Some(star(n));
    }
    if let Some(n) = num("k") {
        return (n >= 1).then(|| complete(n));
    }
    None
}
