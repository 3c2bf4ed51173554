mod common;

use coarse_forest::gamma::{build_gamma, verify_gamma_qi};
use coarse_forest::graph::{bottleneck_delta, expansion_profile, four_point_delta};
use coarse_forest::io::{read_graph_json, GraphJson};
use coarse_forest::metric::{
    d_finitely_connected, epsilon_components, greedy_maximal_separated, is_ultrametric,
    subdominant_ultrametric,
};
use coarse_forest::rips::pq_detector;
use coarse_forest::scale::parse_ratio;
use coarse_forest::treeify::{perturb_value, treeify_pipeline, TreeifyOptions, PERTURBATION};
use coarse_forest::FiniteMetricSpace;
use common::*;
use proptest::prelude::*;

fn plane_metric() -> impl Strategy<Value = FiniteMetricSpace> {
    (any::<u64>(), 2usize..24, 4i64..40)
        .prop_map(|(seed, n, span)| random_plane_metric(seed, n.min((span * span) as usize), span))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn components_refine_as_scale_shrinks(z in plane_metric(), a in 0.5f64..20.0, b in 0.5f64..20.0) {
        let (small, large) = (a.min(b), a.max(b));
        let coarse = epsilon_components(&z, large);
        for block in epsilon_components(&z, small) {
            prop_assert!(coarse.iter().any(|c| block.iter().all(|p| c.contains(p))));
        }
    }

    #[test]
    fn separated_sets_are_separated_and_maximal(z in plane_metric(), sep in 0.5f64..20.0) {
        let a = greedy_maximal_separated(&z, sep);
        for (i, &p) in a.iter().enumerate() {
            for &q in &a[..i] {
                prop_assert!(z.d(p, q) >= sep);
            }
        }
        for p in 0..z.len() {
            prop_assert!(a.iter().any(|&c| z.d(p, c) < sep) || a.contains(&p));
        }
    }

    #[test]
    fn subdominant_is_below_and_ultrametric(z in plane_metric()) {
        let u = subdominant_ultrametric(&z);
        prop_assert!(is_ultrametric(u.space()).holds);
        for i in 0..z.len() {
            for j in 0..z.len() {
                prop_assert!(u.space().d(i, j) <= z.d(i, j));
            }
        }
        let again = subdominant_ultrametric(u.space());
        prop_assert_eq!(again.space(), u.space());
    }

    #[test]
    fn finite_connectivity_is_monotone_in_bound(z in plane_metric(), eps in 0.5f64..20.0, bound in 0usize..30) {
        let here = d_finitely_connected(&z, eps, bound);
        let next = d_finitely_connected(&z, eps, bound + 1);
        prop_assert!(!here.holds || next.holds);
        prop_assert_eq!(here.holds, here.max_hops() <= bound);
    }

    #[test]
    fn expansion_is_monotone(seed in any::<u64>(), n in 2usize..30, extra in 0usize..10) {
        let g = random_connected_graph(seed, n, extra);
        let f: Vec<f64> = (0..n).map(|v| ((v * 7 + seed as usize) % 11) as f64).collect();
        let p = expansion_profile(&g, &f, &[0.0, 1.0, 2.0, 3.0, 5.0, 8.0]);
        for w in p.samples.windows(2) {
            prop_assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn pq_verdict_ignores_point_order(z in plane_metric(), shift in any::<usize>()) {
        let n = z.len();
        let order: Vec<usize> = (0..n).map(|i| (i * 5 + shift) % n).collect();
        let mut distinct = order.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assume!(distinct.len() == n);
        let a = pq_detector(&z, 1.0 / 7.0, 4).unwrap();
        let b = pq_detector(&z.permuted(&order), 1.0 / 7.0, 4).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.d, b.d);
    }

    #[test]
    fn perturbation_avoids_integers(x in -50.0f64..50.0) {
        let y = perturb_value(x);
        prop_assert!(y.fract() != 0.0);
        prop_assert!((y - x).abs() <= PERTURBATION);
        prop_assert!((y - y.round()).abs() >= PERTURBATION - 1e-12);
        prop_assert_eq!(x.floor() == x || x.floor() == y.floor(), true);
    }

    #[test]
    fn treeify_always_yields_a_tree(seed in any::<u64>(), n in 1usize..18, extra in 0usize..6, slope in 0u32..6) {
        let g = random_connected_graph(seed, n, extra);
        let f: Vec<f64> = (0..n).map(|v| (v as u32 * slope) as f64 / 2.0).collect();
        let run = treeify_pipeline(&g, &f, TreeifyOptions::default()).unwrap();
        prop_assert!(run.tree.t.is_tree());
        prop_assert_eq!(four_point_delta(&run.tree.t, usize::MAX).unwrap().four_point_delta, 0.0);
        prop_assert!(run.summary.scaled_expansion < 0.25);
        prop_assert!(run.summary.max_perturbation <= PERTURBATION);
        prop_assert_eq!(run.tracks.incident_regions.len(), run.tree.t.edge_count());
        for &(a, b) in &run.tracks.incident_regions {
            prop_assert!(a != b);
        }
    }

    #[test]
    fn gamma_bounds_hold_on_graphs(seed in any::<u64>(), n in 1usize..30, extra in 0usize..12, radius in 1u32..4) {
        let g = random_connected_graph(seed, n, extra);
        let check = verify_gamma_qi(&build_gamma(&g, radius as f64).unwrap());
        prop_assert!(check.passed());
    }

    #[test]
    fn trees_have_small_bottleneck(seed in any::<u64>(), n in 1usize..24) {
        let g = random_connected_graph(seed, n, 0);
        prop_assert!(bottleneck_delta(&g, usize::MAX).unwrap().delta <= 0.5);
    }

    #[test]
    fn graph_json_round_trips(seed in any::<u64>(), n in 1usize..20, extra in 0usize..8) {
        let g = random_connected_graph(seed, n, extra);
        let text = serde_json::to_string(&GraphJson::from_graph(&g, None)).unwrap();
        let back = read_graph_json(&text).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.ids(), g.ids());
    }

    #[test]
    fn ratios_parse_like_division(p in 1u32..50, q in 1u32..50) {
        let r = parse_ratio(&format!("{p}/{q}")).unwrap();
        prop_assert_eq!(r, p as f64 / q as f64);
    }
}
