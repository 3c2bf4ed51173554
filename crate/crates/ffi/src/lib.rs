//! C ABI over `coarse_forest`.
//!
//! Objects are opaque handles released with their `*_free` function.
//! Every fallible call returns a [`CfStatus`]; on failure the message is
//! available from [`cf_last_error`] on the same thread until the next
//! call. Strings returned through `char **` outputs are owned by the
//! caller and released with [`cf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coarse_forest::graph::{bottleneck_delta, four_point_delta};
use coarse_forest::io::GraphJson;
use coarse_forest::metric::{is_ultrametric, subdominant_ultrametric};
use coarse_forest::rips::{build_h, build_rh, pq_detector, BallMode};
use coarse_forest::scale::LevelWindow;
use coarse_forest::treeify::{treeify_pipeline, TreeifyOptions};
use coarse_forest::{Error, FiniteMetricSpace, Graph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidMetric = 2,
    InvalidParameter = 3,
    Disconnected = 4,
    NonUnitEdges = 5,
    NotATree = 6,
    BudgetExceeded = 7,
    Parse = 8,
    Failed = 9,
    Panic = 10,
}

impl From<&Error> for CfStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::Metric(_) => CfStatus::InvalidMetric,
            Error::InvalidParameter(_) => CfStatus::InvalidParameter,
            Error::Disconnected => CfStatus::Disconnected,
            Error::NonUnitEdges => CfStatus::NonUnitEdges,
            Error::NotATree(_) => CfStatus::NotATree,
            Error::BudgetExceeded(_) => CfStatus::BudgetExceeded,
            Error::Parse(_) | Error::Json(_) => CfStatus::Parse,
            _ => CfStatus::Failed,
        }
    }
}

/// Finite metric space.
pub struct CfMetric(FiniteMetricSpace);

/// Graph, possibly leveled.
pub struct CfGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), (CfStatus, String)>) -> CfStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CfStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CfStatus::Panic
        }
    }
}

fn fail(err: Error) -> (CfStatus, String) {
    (CfStatus::from(&err), err.to_string())
}

fn null(what: &str) -> (CfStatus, String) {
    (CfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (CfStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn to_c_string(s: String) -> Result<*mut c_char, (CfStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (CfStatus::Failed, "string contains a nul byte".into()))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn cf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn cf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates an `n x n` row-major distance matrix.
///
/// # Safety
/// `data` must point to `n * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_metric_from_matrix(
    data: *const f64,
    n: usize,
    out: *mut *mut CfMetric,
) -> CfStatus {
    guard(|| {
        if out.is_null() || (data.is_null() && n > 0) {
            return Err(null("argument"));
        }
        let flat: &[f64] = if n == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(data, n * n)
        };
        let rows = flat.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
        let z = FiniteMetricSpace::from_rows(rows).map_err(fail)?;
        store(out, CfMetric(z));
        Ok(())
    })
}

/// # Safety
/// `m` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn cf_metric_free(m: *mut CfMetric) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_metric_len(m: *const CfMetric) -> usize {
    m.as_ref().map_or(0, |m| m.0.len())
}

/// Distance between points `i` and `j`, or NaN when out of range.
///
/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_metric_distance(m: *const CfMetric, i: usize, j: usize) -> f64 {
    match m.as_ref() {
        Some(m) if i < m.0.len() && j < m.0.len() => m.0.d(i, j),
        _ => f64::NAN,
    }
}

/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_metric_is_ultrametric(m: *const CfMetric, out: *mut bool) -> CfStatus {
    guard(|| {
        let m = deref(m, "metric")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = is_ultrametric(&m.0).holds;
        Ok(())
    })
}

/// Largest ultrametric below `m`.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_metric_subdominant(
    m: *const CfMetric,
    out: *mut *mut CfMetric,
) -> CfStatus {
    guard(|| {
        let m = deref(m, "metric")?;
        if out.is_null() {
            return Err(null("out"));
        }
        store(out, CfMetric(subdominant_ultrametric(&m.0).into_space()));
        Ok(())
    })
}

unsafe fn build_leveled(
    m: *const CfMetric,
    r: f64,
    k_min: i32,
    k_max: i32,
    h: bool,
    out: *mut *mut CfGraph,
) -> CfStatus {
    guard(|| {
        let m = deref(m, "metric")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let window = LevelWindow::new(k_min, k_max).map_err(fail)?;
        let x = if h {
            build_h(&m.0, r, window, BallMode::Witness)
        } else {
            build_rh(&m.0, r, window)
        }
        .map_err(fail)?;
        store(out, CfGraph(x.graph().clone()));
        Ok(())
    })
}

/// Rips-graph hyperbolic approximation over levels `k_min..=k_max`.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_build_rh(
    m: *const CfMetric,
    r: f64,
    k_min: i32,
    k_max: i32,
    out: *mut *mut CfGraph,
) -> CfStatus {
    build_leveled(m, r, k_min, k_max, false, out)
}

/// Ball-cover hyperbolic approximation over levels `k_min..=k_max`.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_build_h(
    m: *const CfMetric,
    r: f64,
    k_min: i32,
    k_max: i32,
    out: *mut *mut CfGraph,
) -> CfStatus {
    build_leveled(m, r, k_min, k_max, true, out)
}

/// Parses graph JSON.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_from_json(
    json: *const c_char,
    out: *mut *mut CfGraph,
) -> CfStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (CfStatus::Parse, "input is not UTF-8".to_owned()))?;
        let g = coarse_forest::io::read_graph_json(text).map_err(fail)?;
        store(out, CfGraph(g));
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_to_json(g: *const CfGraph, out: *mut *mut c_char) -> CfStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = serde_json::to_string(&GraphJson::from_graph(&g.0, None))
            .map_err(|e| fail(e.into()))?;
        *out = to_c_string(text)?;
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_free(g: *mut CfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_vertex_count(g: *const CfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.len())
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_edge_count(g: *const CfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_graph_is_tree(g: *const CfGraph) -> bool {
    g.as_ref().is_some_and(|g| g.0.is_tree())
}

/// Four-point hyperbolicity constant; exhaustive when `n^4 <= budget`.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_four_point_delta(
    g: *const CfGraph,
    budget: usize,
    out: *mut f64,
) -> CfStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = four_point_delta(&g.0, budget)
            .map_err(fail)?
            .four_point_delta;
        Ok(())
    })
}

/// Bottleneck constant of a unit-length graph.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_bottleneck_delta(
    g: *const CfGraph,
    budget: usize,
    out: *mut f64,
) -> CfStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = bottleneck_delta(&g.0, budget).map_err(fail)?.delta;
        Ok(())
    })
}

/// Level-connectivity report as JSON.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_pq_detector(
    m: *const CfMetric,
    r: f64,
    bound: usize,
    out: *mut *mut c_char,
) -> CfStatus {
    guard(|| {
        let m = deref(m, "metric")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = pq_detector(&m.0, r, bound).map_err(fail)?;
        let text = serde_json::to_string(&report).map_err(|e| fail(e.into()))?;
        *out = to_c_string(text)?;
        Ok(())
    })
}

/// Quotient tree of `g` along `f` (one value per vertex). Writes the tree
/// and, when `report` is non-null, a JSON summary with the fitted
/// constants.
///
/// # Safety
/// `g` must be a live handle; `f` must point to `n` doubles; `tree`
/// writable; `report` writable or null.
#[no_mangle]
pub unsafe extern "C" fn cf_treeify(
    g: *const CfGraph,
    f: *const f64,
    n: usize,
    tree: *mut *mut CfGraph,
    report: *mut *mut c_char,
) -> CfStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        if tree.is_null() || (f.is_null() && n > 0) {
            return Err(null("argument"));
        }
        let values: &[f64] = if n == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(f, n)
        };
        let run = treeify_pipeline(&g.0, values, TreeifyOptions::default()).map_err(fail)?;
        if !report.is_null() {
            let summary = serde_json::json!({ "summary": run.summary, "qi": run.qi });
            *report = to_c_string(summary.to_string())?;
        }
        store(tree, CfGraph(run.tree.t));
        Ok(())
    })
}
