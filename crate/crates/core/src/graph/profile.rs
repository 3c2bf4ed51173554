use serde::Serialize;

use super::Graph;
use crate::scale::within;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpansionProfile {
    /// `(t, max |f(u) - f(v)| over pairs at distance <= t)`, sorted by `t`.
    pub samples: Vec<(f64, f64)>,
    /// Finite value at the largest sampled threshold.
    pub bornologous_at_scale: bool,
}

impl ExpansionProfile {
    pub fn at(&self, t: f64) -> Option<f64> {
        self.samples.iter().find(|s| s.0 == t).map(|s| s.1)
    }
}

/// Empirical expansion function of `f` at the given thresholds.
pub fn expansion_profile(g: &Graph, f: &[f64], thresholds: &[f64]) -> ExpansionProfile {
    assert_eq!(f.len(), g.len(), "f must be defined on every vertex");
    let d = g.all_pairs_distances();
    let mut ts = thresholds.to_vec();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    // Sorting pairs by distance lets one sweep fill all thresholds.
    let n = g.len();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .flat_map(|u| (u..n).map(move |v| (u, v)))
        .map(|(u, v)| (d.get(u, v), (f[u] - f[v]).abs()))
        .filter(|p| p.0.is_finite())
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut samples = Vec::with_capacity(ts.len());
    let mut running = 0.0f64;
    let mut next = 0;
    for t in ts {
        while next < pairs.len() && within(pairs[next].0, t) {
            running = running.max(pairs[next].1);
            next += 1;
        }
        samples.push((t, running));
    }
    let bornologous_at_scale = samples.last().is_none_or(|s| s.1.is_finite());
    ExpansionProfile {
        samples,
        bornologous_at_scale,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BandRow {
    pub center: f64,
    pub component: usize,
    pub vertex_count: usize,
    pub hop_diameter: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropernessProfile {
    pub half_width: f64,
    pub band_step: f64,
    pub rows: Vec<BandRow>,
    /// Largest hop diameter over all bands.
    pub max_diameter: usize,
}

/// Components of `f^{-1}[x - N, x + N]` for band centers `x` stepping from
/// `min f` by `band_step` until `max f` is covered.
///
/// Bands are vertex-induced: an edge is in the band iff both ends are.
pub fn properness_profile(
    g: &Graph,
    f: &[f64],
    half_width: f64,
    band_step: f64,
) -> PropernessProfile {
    assert_eq!(f.len(), g.len(), "f must be defined on every vertex");
    assert!(half_width > 0.0 && band_step > 0.0);
    let mut rows = Vec::new();
    if g.is_empty() {
        return PropernessProfile {
            half_width,
            band_step,
            rows,
            max_diameter: 0,
        };
    }
    let lo = f.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let steps = ((hi - lo) / band_step - 1e-9).ceil().max(0.0) as usize;
    for i in 0..=steps {
        let center = lo + i as f64 * band_step;
        let keep = |v: usize| {
            let off = (f[v] - center).abs();
            within(off, half_width)
        };
        for (component, members) in g.induced_components(keep).into_iter().enumerate() {
            rows.push(BandRow {
                center,
                component,
                vertex_count: members.len(),
                hop_diameter: g.induced_hop_diameter(&members),
            });
        }
    }
    let max_diameter = rows.iter().map(|r| r.hop_diameter).max().unwrap_or(0);
    PropernessProfile {
        half_width,
        band_step,
        rows,
        max_diameter,
    }
}
