//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coarse_forest::error::Error;
use coarse_forest::fixtures;
use coarse_forest::gamma::{build_gamma, verify_gamma_qi};
use coarse_forest::graph::{
    bottleneck_delta, four_point_delta, properness_profile, EdgeKind, QiReport,
};
use coarse_forest::metric::{d_finitely_connected, epsilon_components, subdominant_ultrametric};
use coarse_forest::rips::{
    branch_point, build_h, build_rh, pq_detector, rh_to_h_distortion, BallMode, Verdict,
};
use coarse_forest::scale::{analyzable_window, LevelWindow, REL_TOL};
use coarse_forest::treeify::{treeify_pipeline, TreeifyOptions};
use coarse_forest::{FiniteMetricSpace, Graph};
use common::*;

const EXHAUSTIVE: usize = usize::MAX;

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, cond: bool, note: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("FAILED {}", note.into()));
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

fn run(id: u32, title: &str, limit: Duration, body: impl FnOnce(&mut Check)) -> bool {
    let mut check = Check::new();
    let start = Instant::now();
    body(&mut check);
    let elapsed = start.elapsed();
    check.expect(
        elapsed < limit,
        format!("runtime {elapsed:?} over {limit:?}"),
    );
    let status = if check.ok { "PASS" } else { "FAIL" };
    println!(
        "criterion {id} [{title}]: {status} ({:.2} s) {}",
        elapsed.as_secs_f64(),
        check.notes.join("; ")
    );
    check.ok
}

fn window_of(z: &FiniteMetricSpace, r: f64, max_levels: usize) -> LevelWindow {
    let w = analyzable_window(z, r);
    let k_max = w.k_max.min(w.k_min + max_levels as i32 - 1);
    LevelWindow::new(w.k_min, k_max).unwrap()
}

fn ultrametric_trees() -> Vec<(&'static str, Graph)> {
    let r = 1.0 / 6.0;
    let cantor = subdominant_ultrametric(&fixtures::cantor5()).into_space();
    [("ULT4", fixtures::ult4()), ("subdominant CANTOR5", cantor)]
        .into_iter()
        .map(|(name, z)| {
            let h = build_h(&z, r, analyzable_window(&z, r), BallMode::Witness).unwrap();
            (name, h.graph().clone())
        })
        .collect()
}

fn criterion_1(c: &mut Check) {
    let r = 1.0 / 6.0;
    let cantor = subdominant_ultrametric(&fixtures::cantor5()).into_space();
    for (name, z) in [("ULT4", fixtures::ult4()), ("subdominant CANTOR5", cantor)] {
        let window = analyzable_window(&z, r);
        let h = build_h(&z, r, window, BallMode::Witness).unwrap();
        let g = h.graph();
        let horizontal = g
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Horizontal)
            .count();
        c.expect(
            horizontal == 0,
            format!("{name}: {horizontal} horizontal edges"),
        );
        c.expect(g.is_tree(), format!("{name}: H is not a tree"));
        c.expect(
            h.level_vertices(window.k_min).len() == 1,
            format!("{name}: top level has several vertices"),
        );
        c.note(format!(
            "{name}: levels {}..{}, {} vertices",
            window.k_min,
            window.k_max,
            g.len()
        ));
    }
}

fn criterion_2(c: &mut Check) {
    let r = 1.0 / 6.0;
    for (name, z) in [
        ("ULT4", fixtures::ult4()),
        ("LINE3", fixtures::line3()),
        ("CANTOR5", fixtures::cantor5()),
    ] {
        let window = window_of(&z, r, 6);
        let report = rh_to_h_distortion(&z, r, window).unwrap();
        c.expect(
            report.max_additive_distortion <= 5,
            format!("{name}: distortion {}", report.max_additive_distortion),
        );
        c.note(format!(
            "{name}: distortion {} over {} interior pairs",
            report.max_additive_distortion, report.interior_pairs
        ));
    }
}

fn criterion_3(c: &mut Check) {
    for (name, g) in [
        ("PATH9", fixtures::path(9)),
        ("C8", fixtures::cycle(8)),
        ("GRID5", fixtures::grid(5, 5)),
    ] {
        let src = hop_matrix(&g);
        for radius in [1u32, 2, 3] {
            let gamma = build_gamma(&g, radius as f64).unwrap();
            let check = verify_gamma_qi(&gamma);
            // Integer recount, independent of the library's check.
            let gd = hop_matrix(&gamma.graph);
            let r = radius as usize;
            let mut violations = 0;
            for v in 0..gamma.graph.len() {
                for w in 0..gamma.graph.len() {
                    let d = src[gamma.j[v]][gamma.j[w]];
                    violations += usize::from(d > 4 * r * gd[v][w]);
                    violations += usize::from(r * gd[v][w] > d + r);
                }
            }
            let codensity = (0..g.len())
                .map(|x| gamma.j.iter().map(|&a| src[x][a]).min().unwrap())
                .max()
                .unwrap();
            c.expect(
                violations == 0,
                format!("{name} R={radius}: {violations} violations"),
            );
            c.expect(
                check.upper_violations.is_empty() && check.lower_violations.is_empty(),
                format!("{name} R={radius}: library reports violations"),
            );
            c.expect(
                codensity <= 2 * r,
                format!("{name} R={radius}: codensity {codensity}"),
            );
        }
    }
}

fn criterion_4(c: &mut Check) {
    let r = 1.0 / 6.0;
    for (name, z) in [("ULT4", fixtures::ult4()), ("LINE3", fixtures::line3())] {
        let x = build_rh(&z, r, analyzable_window(&z, r)).unwrap();
        let hops = hop_matrix(x.graph());
        let (mut in_range, mut out_of_range) = (0, 0);
        let mut values = BTreeSet::new();
        for a in 0..x.len() {
            for b in a..x.len() {
                match branch_point(&x, a, b) {
                    Ok(res) => {
                        in_range += 1;
                        let y = res.branch;
                        let twice = hops[y][a] + hops[y][b] - hops[a][b];
                        let product = twice as f64 / 2.0;
                        c.expect(
                            product == res.gromov_product,
                            format!("{name} ({a},{b}): product mismatch"),
                        );
                        c.expect(
                            twice <= 1,
                            format!("{name} ({a},{b}): Gromov product {product}"),
                        );
                        values.insert(twice);
                    }
                    Err(Error::RangeExhausted { .. }) => out_of_range += 1,
                    Err(e) => c.expect(false, format!("{name} ({a},{b}): {e}")),
                }
            }
        }
        c.note(format!(
            "{name}: {in_range} pairs in range, {out_of_range} out, products x2 in {values:?}"
        ));
    }
}

fn ratio(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else if max == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

fn treeify_runs(c: &mut Check) -> Vec<(String, Graph, QiReport)> {
    let mut inputs: Vec<(String, Graph, Vec<f64>)> = vec![
        (
            "PATH9".into(),
            fixtures::path(9),
            (0..9).map(f64::from).collect(),
        ),
        ("C8".into(), fixtures::cycle(8), vec![1.0; 8]),
    ];
    for k in [8, 16, 32] {
        inputs.push((
            format!("LADDER{k}"),
            fixtures::ladder(k),
            fixtures::ladder_rungs(k),
        ));
    }
    let mut out = Vec::new();
    for (name, g, f) in inputs {
        let start = Instant::now();
        match treeify_pipeline(&g, &f, TreeifyOptions::default()) {
            Ok(run) => {
                let elapsed = start.elapsed();
                c.expect(
                    elapsed < Duration::from_secs(60),
                    format!("{name}: {elapsed:?}"),
                );
                out.push((name, run.tree.t, run.qi));
            }
            Err(e) => c.expect(false, format!("{name}: {e}")),
        }
    }
    out
}

fn criterion_5(c: &mut Check) {
    let runs = treeify_runs(c);
    for (name, t, qi) in &runs {
        c.expect(
            t.is_connected() && t.edge_count() + 1 == t.len(),
            format!("{name}: T is not a tree"),
        );
        let delta = four_point_delta(t, EXHAUSTIVE).unwrap().four_point_delta;
        c.expect(delta == 0.0, format!("{name}: four-point delta {delta}"));
        c.note(format!(
            "{name}: |T|={} lambda={:.3} C={:.3}",
            t.len(),
            qi.lambda,
            qi.c
        ));
    }
    let ladders: Vec<&QiReport> = runs
        .iter()
        .filter(|r| r.0.starts_with("LADDER"))
        .map(|r| &r.2)
        .collect();
    let lambdas: Vec<f64> = ladders.iter().map(|q| q.lambda).collect();
    let cs: Vec<f64> = ladders.iter().map(|q| q.c).collect();
    let (rl, rc) = (ratio(&lambdas), ratio(&cs));
    c.expect(
        rl <= 2.0 * (1.0 + REL_TOL),
        format!("lambda spread {rl:.4}"),
    );
    c.expect(rc <= 2.0 * (1.0 + REL_TOL), format!("C spread {rc:.4}"));
    c.note(format!("ladder spread: lambda x{rl:.4}, C x{rc:.4}"));
}

fn criterion_6(c: &mut Check) {
    let mut trees: Vec<(String, Graph)> = ultrametric_trees()
        .into_iter()
        .map(|(n, g)| (format!("H({n})"), g))
        .collect();
    let mut scratch = Check::new();
    trees.extend(
        treeify_runs(&mut scratch)
            .into_iter()
            .map(|(n, t, _)| (format!("T({n})"), t)),
    );
    for (name, t) in &trees {
        let d = bottleneck_delta(t, EXHAUSTIVE).unwrap().delta;
        c.expect(d <= 1.0, format!("{name}: bottleneck {d}"));
    }
    c.note(format!("{} trees checked", trees.len()));
    for n in [16usize, 32] {
        let d = bottleneck_delta(&fixtures::cycle(n), EXHAUSTIVE)
            .unwrap()
            .delta;
        c.expect(d >= n as f64 / 8.0, format!("C{n}: bottleneck {d}"));
        c.note(format!("C{n}: {d}"));
    }
}

fn criterion_7(c: &mut Check) {
    let r = 1.0 / 7.0;
    for (name, z, bound) in [
        ("ULT4", fixtures::ult4(), 4),
        ("CANTOR5", fixtures::cantor5(), 4),
    ] {
        let report = pq_detector(&z, r, bound).unwrap();
        c.expect(
            report.verdict == Verdict::Bounded,
            format!("{name}: verdict {:?}", report.verdict),
        );
        c.note(format!("{name}: bounded with D={}", report.d));
    }
    let report = pq_detector(&fixtures::unif64(), r, 4).unwrap();
    let diams: Vec<usize> = report.levels.iter().map(|l| l.max_hop_diameter).collect();
    let rising = diams.windows(3).any(|w| w[0] < w[1] && w[1] < w[2]);
    c.expect(
        report.verdict == Verdict::Growing,
        format!("UNIF64: verdict {:?}", report.verdict),
    );
    c.expect(rising, format!("UNIF64: D_k = {diams:?}"));
    c.note(format!("UNIF64: D_k = {diams:?}"));
}

fn criterion_8(c: &mut Check) {
    let mut small = vec![
        fixtures::line3(),
        fixtures::ult4(),
        fixtures::path_metric(8),
        fixtures::uniform(8),
    ];
    small.extend((0..40).map(|s| random_plane_metric(s, 2 + (s as usize % 7), 8)));
    let mut mismatches = 0;
    for z in &small {
        let u = subdominant_ultrametric(z);
        let oracle = minimax_all_chains(z);
        for i in 0..z.len() {
            for j in 0..z.len() {
                mismatches += usize::from(u.space().d(i, j) != oracle[i][j]);
            }
        }
    }
    c.expect(
        mismatches == 0,
        format!("subdominant: {mismatches} mismatches"),
    );

    let mut medium = vec![fixtures::cantor5(), fixtures::unif64()];
    medium.extend((0..10).map(|s| random_plane_metric(1000 + s, 64, 24)));
    let (mut partitions, mut hop_checks) = (0, 0);
    for z in &medium {
        let mut distances: Vec<f64> = (0..z.len())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| z.d(i, j))
            .collect();
        distances.sort_by(f64::total_cmp);
        distances.dedup();
        for eps in distances.iter().step_by((distances.len() / 8).max(1)) {
            let ours: BTreeSet<BTreeSet<usize>> = epsilon_components(z, *eps)
                .into_iter()
                .map(|b| b.into_iter().collect())
                .collect();
            c.expect(
                ours == partition_by_bfs(&step_adjacency(z, *eps)),
                format!("components differ at {eps}"),
            );
            partitions += 1;
            let hops = max_chain_hops(z, *eps);
            for bound in [hops.saturating_sub(1), hops] {
                let report = d_finitely_connected(z, *eps, bound);
                c.expect(report.max_hops() == hops, format!("hops differ at {eps}"));
                c.expect(
                    report.holds == (hops <= bound),
                    format!("verdict differs at {eps}"),
                );
                hop_checks += 1;
            }
        }
    }
    c.note(format!(
        "{} small spaces, {partitions} partitions, {hop_checks} hop checks",
        small.len()
    ));
}

fn criterion_9(c: &mut Check) {
    for k in [5usize, 9] {
        let m = properness_profile(
            &fixtures::grid(k, k),
            &fixtures::grid_columns(k, k),
            1.0,
            1.0,
        )
        .max_diameter;
        c.expect(m == k - 1, format!("GRID{k}: M = {m}, expected {}", k - 1));
        c.note(format!("GRID{k}: M={m}"));
    }
    let ladder: Vec<usize> = [8usize, 16, 32]
        .iter()
        .map(|&k| {
            properness_profile(&fixtures::ladder(k), &fixtures::ladder_rungs(k), 1.0, 1.0)
                .max_diameter
        })
        .collect();
    c.expect(
        ladder.iter().all(|&m| m <= 3),
        format!("ladder M = {ladder:?}"),
    );
    c.expect(
        ladder.windows(2).all(|w| w[0] == w[1]),
        format!("ladder M depends on k: {ladder:?}"),
    );
    c.note(format!("ladder M={ladder:?}"));
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "ultrametric H is a tree", s(10), criterion_1),
        run(2, "RH to H rough isometry", s(60), criterion_2),
        run(3, "ball graph bounds", s(5), criterion_3),
        run(4, "branch point Gromov product", s(10), criterion_4),
        run(5, "quotient tree pipeline", s(60 * 5), criterion_5),
        run(6, "bottleneck contrast", s(60), criterion_6),
        run(7, "PQ detector verdicts", s(30), criterion_7),
        run(8, "oracle equivalence", s(30), criterion_8),
        run(9, "properness diagnostics", s(60), criterion_9),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
