//! Empirical power-quasi-symmetric control function.
//!
//! For a correspondence `f: Z -> U` every ordered triple `(x, a, b)` with
//! `x != b` yields `t = |xa| / |xb|` and `ratio = |f(x)f(a)| / |f(x)f(b)|`.
//! For each exponent `p` on a geometric grid the smallest admissible `q` is
//! `max(1, max ratio / eta_p(t))` with `eta_p(t) = max(t^p, t^(1/p))`.
//! Since `eta_p` grows with `p` pointwise, `q` only shrinks as `p` grows;
//! the reported pair is the smallest `p` attaining the minimal `q`.
//! This is an estimator over finitely many triples, not a decision procedure.

use rayon::prelude::*;
use serde::Serialize;

use super::FiniteMetricSpace;
use crate::error::{Error, Result};

pub const P_GRID_MAX: f64 = 8.0;
pub const P_GRID_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ControlFit {
    pub p: f64,
    pub q: f64,
    /// `(t, ratio)` for every triple with `t > 0`.
    pub samples: Vec<(f64, f64)>,
    pub max_violation: f64,
    /// `(p, q_p)` along the exponent grid.
    pub curve: Vec<(f64, f64)>,
    pub estimator: &'static str,
}

fn eta(p: f64, t: f64) -> f64 {
    t.powf(p).max(t.powf(1.0 / p))
}

pub fn quasi_symmetry_control_estimate(
    z: &FiniteMetricSpace,
    u: &FiniteMetricSpace,
    correspondence: &[usize],
) -> Result<ControlFit> {
    let n = z.len();
    if u.len() != n || correspondence.len() != n {
        return Err(Error::NotBijection);
    }
    let mut hit = vec![false; n];
    for &c in correspondence {
        if c >= n || std::mem::replace(&mut hit[c], true) {
            return Err(Error::NotBijection);
        }
    }
    let f = correspondence;

    let mut samples = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for b in 0..n {
            if b == x {
                continue;
            }
            let den_u = u.d(f[x], f[b]);
            for a in 0..n {
                if a == x {
                    continue;
                }
                if den_u == 0.0 {
                    return Err(Error::DegenerateTriple { x, a, b });
                }
                let t = z.d(x, a) / z.d(x, b);
                let ratio = u.d(f[x], f[a]) / den_u;
                samples.push((t, ratio));
            }
        }
    }

    let grid: Vec<f64> = (0..P_GRID_STEPS)
        .map(|i| P_GRID_MAX.powf(i as f64 / (P_GRID_STEPS - 1) as f64))
        .collect();
    let curve: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&p| {
            let need = samples
                .iter()
                .map(|&(t, ratio)| ratio / eta(p, t))
                .fold(1.0f64, f64::max);
            (p, need)
        })
        .collect();
    let q_min = curve.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let &(p, q) = curve
        .iter()
        .find(|c| c.1 <= q_min * (1.0 + 1e-12))
        .expect("grid is nonempty");
    let max_violation = samples
        .iter()
        .map(|&(t, ratio)| ratio - q * eta(p, t))
        .fold(0.0f64, f64::max);
    Ok(ControlFit {
        p,
        q,
        samples,
        max_violation,
        curve,
        estimator: "grid-max",
    })
}
