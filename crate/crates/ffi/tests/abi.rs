use std::ffi::{CStr, CString};
use std::ptr;

use coarse_forest_ffi::*;

fn last_error() -> String {
    let p = cf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn metric(rows: &[f64], n: usize) -> *mut CfMetric {
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { cf_metric_from_matrix(rows.as_ptr(), n, &mut m) },
        CfStatus::Ok
    );
    m
}

#[test]
fn metric_round_trip() {
    let m = metric(&[0.0, 1.0, 3.0, 1.0, 0.0, 2.0, 3.0, 2.0, 0.0], 3);
    unsafe {
        assert_eq!(cf_metric_len(m), 3);
        assert_eq!(cf_metric_distance(m, 0, 2), 3.0);
        assert!(cf_metric_distance(m, 0, 9).is_nan());
        let mut ultra = true;
        assert_eq!(cf_metric_is_ultrametric(m, &mut ultra), CfStatus::Ok);
        assert!(!ultra);
        let mut sub = ptr::null_mut();
        assert_eq!(cf_metric_subdominant(m, &mut sub), CfStatus::Ok);
        assert_eq!(cf_metric_distance(sub, 0, 2), 2.0);
        cf_metric_free(sub);
        cf_metric_free(m);
    }
}

#[test]
fn invalid_metric_reports() {
    let mut m = ptr::null_mut();
    let rows = [0.0, 1.0, 5.0, 1.0, 0.0, 1.0, 5.0, 1.0, 0.0];
    let status = unsafe { cf_metric_from_matrix(rows.as_ptr(), 3, &mut m) };
    assert_eq!(status, CfStatus::InvalidMetric);
    assert!(m.is_null());
    assert!(last_error().contains("triangle"));
    assert_eq!(
        unsafe { cf_metric_from_matrix(ptr::null(), 3, &mut m) },
        CfStatus::NullPointer
    );
}

#[test]
fn ultrametric_h_is_tree() {
    let rows = [
        0.0, 0.1, 1.0, 1.0, //
        0.1, 0.0, 1.0, 1.0, //
        1.0, 1.0, 0.0, 0.1, //
        1.0, 1.0, 0.1, 0.0,
    ];
    let m = metric(&rows, 4);
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(cf_build_h(m, 1.0 / 6.0, 0, 2, &mut h), CfStatus::Ok);
        assert!(cf_graph_is_tree(h));
        let mut rh = ptr::null_mut();
        assert_eq!(cf_build_rh(m, 1.0 / 6.0, 0, 2, &mut rh), CfStatus::Ok);
        assert_eq!(cf_graph_vertex_count(rh), 12);
        let mut bad = ptr::null_mut();
        assert_eq!(
            cf_build_h(m, 0.5, 0, 2, &mut bad),
            CfStatus::InvalidParameter
        );
        cf_graph_free(h);
        cf_graph_free(rh);
        cf_metric_free(m);
    }
}

#[test]
fn graph_analyses() {
    let json = CString::new(
        r#"{"vertices":[{"id":"0"},{"id":"1"},{"id":"2"},{"id":"3"}],
            "edges":[{"u":0,"v":1},{"u":1,"v":2},{"u":2,"v":3},{"u":3,"v":0}]}"#,
    )
    .unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cf_graph_from_json(json.as_ptr(), &mut g), CfStatus::Ok);
        assert_eq!(cf_graph_edge_count(g), 4);
        let mut delta = -1.0;
        assert_eq!(cf_four_point_delta(g, 1 << 20, &mut delta), CfStatus::Ok);
        assert_eq!(delta, 1.0);
        let mut b = -1.0;
        assert_eq!(cf_bottleneck_delta(g, 1 << 20, &mut b), CfStatus::Ok);
        assert!(b >= 0.5);

        let mut text = ptr::null_mut();
        assert_eq!(cf_graph_to_json(g, &mut text), CfStatus::Ok);
        let back = CStr::from_ptr(text).to_str().unwrap().to_owned();
        cf_string_free(text);
        assert!(back.contains("\"edges\""));

        let f = [0.0, 1.0, 2.0, 1.0];
        let mut tree = ptr::null_mut();
        let mut report = ptr::null_mut();
        assert_eq!(
            cf_treeify(g, f.as_ptr(), 4, &mut tree, &mut report),
            CfStatus::Ok
        );
        assert!(cf_graph_is_tree(tree));
        assert!(CStr::from_ptr(report).to_str().unwrap().contains("lambda"));
        cf_string_free(report);
        cf_graph_free(tree);

        let mut tree = ptr::null_mut();
        assert_eq!(
            cf_treeify(g, f.as_ptr(), 3, &mut tree, ptr::null_mut()),
            CfStatus::InvalidParameter
        );
        cf_graph_free(g);
    }
}

#[test]
fn disconnected_graph() {
    let json = CString::new(r#"{"vertices":[{"id":"a"},{"id":"b"}],"edges":[]}"#).unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(cf_graph_from_json(json.as_ptr(), &mut g), CfStatus::Ok);
        let mut d = 0.0;
        assert_eq!(cf_four_point_delta(g, 100, &mut d), CfStatus::Disconnected);
        assert_eq!(last_error(), "graph is disconnected");
        cf_graph_free(g);
    }
}

#[test]
fn pq_report_json() {
    let rows = [0.0, 1.0, 1.0, 0.0];
    let m = metric(&rows, 2);
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(cf_pq_detector(m, 1.0 / 7.0, 4, &mut out), CfStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap();
        assert!(text.contains("verdict"));
        cf_string_free(out);
        cf_metric_free(m);
    }
}

#[test]
fn header_is_generated() {
    let header = include_str!("../include/coarse_forest.h");
    for name in [
        "cf_metric_from_matrix",
        "cf_treeify",
        "cf_last_error",
        "CF_STATUS_NOT_A_TREE",
        "typedef struct CfGraph CfGraph",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
