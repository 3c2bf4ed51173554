use serde::Serialize;

use super::{Flavor, LeveledGraph};
use crate::error::Result;
use crate::metric::{d_finitely_connected, FiniteMetricSpace};
use crate::scale::{analyzable_window, check_parameter, level_scale, LevelWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "bounded-with-D")]
    Bounded,
    #[serde(rename = "growing")]
    Growing,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelRow {
    pub k: i32,
    pub components: usize,
    pub max_hop_diameter: usize,
    /// Members (point indices) of a component attaining the diameter.
    pub witness_component: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PqReport {
    pub r: f64,
    pub levels: Vec<LevelRow>,
    pub verdict: Verdict,
    #[serde(rename = "D")]
    pub d: usize,
    pub window: LevelWindow,
    /// Requested bound on the hop diameter, when one was given.
    #[serde(rename = "bound", skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    /// Analysis of an H graph: reported for information only.
    pub informational: bool,
}

/// Growing when some three consecutive levels strictly increase; bounded
/// when the two finest levels do not increase (and every level respects
/// `bound`, if given); otherwise inconclusive.
pub(crate) fn verdict(diameters: &[usize], bound: Option<usize>) -> Verdict {
    if diameters.windows(3).any(|w| w[0] < w[1] && w[1] < w[2]) {
        return Verdict::Growing;
    }
    let max = diameters.iter().copied().max().unwrap_or(0);
    match diameters {
        [.., before, last] if last <= before && bound.is_none_or(|b| max <= b) => Verdict::Bounded,
        _ => Verdict::Inconclusive,
    }
}

/// Hop diameters of the horizontal components level by level.
pub fn level_component_analysis(x: &LeveledGraph) -> PqReport {
    let levels: Vec<LevelRow> = x
        .window()
        .levels()
        .map(|k| {
            let comps = x.level_components(k);
            let sized: Vec<(usize, &Vec<usize>)> = comps
                .iter()
                .map(|c| (x.graph().induced_hop_diameter(c), c))
                .collect();
            let (diam, witness) = sized.iter().fold((0, None), |best, &(d, c)| {
                if best.1.is_none() || d > best.0 {
                    (d, Some(c))
                } else {
                    best
                }
            });
            LevelRow {
                k,
                components: comps.len(),
                max_hop_diameter: diam,
                witness_component: witness
                    .map(|c| c.iter().map(|&v| x.anchor(v)).collect())
                    .unwrap_or_default(),
            }
        })
        .collect();
    let diameters: Vec<usize> = levels.iter().map(|l| l.max_hop_diameter).collect();
    PqReport {
        r: x.r(),
        verdict: verdict(&diameters, None),
        d: diameters.iter().copied().max().unwrap_or(0),
        levels,
        window: x.window(),
        bound: None,
        informational: x.flavor() == Flavor::H,
    }
}

/// Checks the finite-chain hypothesis at every analyzable scale `r^k`.
///
/// Level `k` components of RH are exactly the `r^k`-components of `z`,
/// with the same hop diameters, so this runs directly on the metric.
pub fn pq_detector(z: &FiniteMetricSpace, r: f64, bound: usize) -> Result<PqReport> {
    check_parameter(r, true)?;
    let window = analyzable_window(z, r);
    let levels: Vec<LevelRow> =
        window
            .levels()
            .map(|k| {
                let report = d_finitely_connected(z, level_scale(r, k), bound);
                let witness = report.components.iter().fold(
                    None::<&crate::metric::ComponentHops>,
                    |best, c| match best {
                        Some(b) if b.max_hops >= c.max_hops => Some(b),
                        _ => Some(c),
                    },
                );
                LevelRow {
                    k,
                    components: report.components.len(),
                    max_hop_diameter: report.max_hops(),
                    witness_component: witness.map(|c| c.members.clone()).unwrap_or_default(),
                }
            })
            .collect();
    let diameters: Vec<usize> = levels.iter().map(|l| l.max_hop_diameter).collect();
    Ok(PqReport {
        r,
        verdict: verdict(&diameters, Some(bound)),
        d: diameters.iter().copied().max().unwrap_or(0),
        levels,
        window,
        bound: Some(bound),
        informational: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BandConnectivity {
    pub k: i32,
    pub level_connected: bool,
    /// Connectivity of the subgraph induced by levels `k` and `k + 1`.
    pub band_connected: bool,
}

/// Connectivity of `l^{-1}(k)` against that of the unit band `l^{-1}[k, k+1]`.
pub fn level_band_connectivity(x: &LeveledGraph, k: i32) -> BandConnectivity {
    let here = x.level_vertices(k);
    let band = if k < x.window().k_max {
        here.start..x.level_vertices(k + 1).end
    } else {
        here.clone()
    };
    BandConnectivity {
        k,
        level_connected: x.graph().induced_components(|v| here.contains(&v)).len() <= 1,
        band_connected: x.graph().induced_components(|v| band.contains(&v)).len() <= 1,
    }
}
