//! Quotient tree of a graph along the level sets of a function.
//!
//! The graph is coned off over balls around a separated set, so that the
//! result is simply connected. The function is extended affinely, pushed
//! off the integers, and the integer level sets (tracks) are collapsed to
//! edges while the regions between them become vertices.

mod cone;
mod loops;
mod perturb;
mod quotient;
mod tracks;

use std::time::Instant;

use serde::Serialize;

pub use cone::{cone_complex, ConeCounts, ConedComplex};
pub use loops::{loop_bound, rescale};
pub use perturb::{perturb, perturb_value, PerturbedFunction, PERTURBATION};
pub use quotient::{quotient, QuotientTree, Representative};
pub use tracks::{extract_tracks, Crossing, TrackSystem};

use crate::error::{Error, Result};
use crate::gamma::{build_gamma, induce_hat_f, GammaGraph};
use crate::graph::{
    expansion_profile, fit_qi, properness_profile, ExpansionProfile, Graph, PropernessProfile,
    QiReport, QiSample,
};
use crate::sampling::{pairs, DEFAULT_BUDGET, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeifyOptions {
    /// Overrides the computed loop bound. Trusted as given.
    pub loop_bound: Option<usize>,
    pub sample_budget: usize,
}

impl Default for TreeifyOptions {
    fn default() -> Self {
        TreeifyOptions {
            loop_bound: None,
            sample_budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StageTiming {
    pub stage: &'static str,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeifySummary {
    pub loop_bound: usize,
    pub cone_radius: usize,
    pub scale: f64,
    pub centers: usize,
    pub cone: ConeCounts,
    pub crossings: usize,
    pub tracks: usize,
    pub tree_vertices: usize,
    pub tree_edges: usize,
    pub max_perturbation: f64,
    pub scaled_expansion: f64,
    #[serde(skip)]
    pub timings: Vec<StageTiming>,
}

#[derive(Debug, Clone)]
pub struct TreeifyRun {
    pub coned: ConedComplex,
    pub scaled: Vec<f64>,
    pub perturbed: PerturbedFunction,
    pub tracks: TrackSystem,
    pub tree: QuotientTree,
    /// `π` restricted to base vertices.
    pub qi: QiReport,
    pub expansion: ExpansionProfile,
    pub properness: PropernessProfile,
    pub summary: TreeifySummary,
}

impl TreeifyRun {
    /// `π` on the base vertices.
    pub fn projection(&self) -> &[usize] {
        &self.tree.pi[..self.coned.base_len]
    }
}

struct Clock {
    last: Instant,
    timings: Vec<StageTiming>,
}

impl Clock {
    fn lap(&mut self, stage: &'static str) {
        let now = Instant::now();
        self.timings.push(StageTiming {
            stage,
            millis: (now - self.last).as_secs_f64() * 1e3,
        });
        self.last = now;
    }
}

pub fn treeify_pipeline(x: &Graph, f: &[f64], options: TreeifyOptions) -> Result<TreeifyRun> {
    if f.len() != x.len() {
        return Err(Error::InvalidParameter(format!(
            "function has {} values for {} vertices",
            f.len(),
            x.len()
        )));
    }
    if f.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "function values must be finite".into(),
        ));
    }
    if !x.is_unit() {
        return Err(Error::NonUnitEdges);
    }
    x.require_connected()?;
    let mut clock = Clock {
        last: Instant::now(),
        timings: Vec::new(),
    };

    let loop_len = match options.loop_bound {
        Some(l) => l,
        None => loop_bound(x)?,
    }
    .max(1);
    clock.lap("loop_bound");
    let (scaled, c) = rescale(f, x, loop_len);
    clock.lap("rescale");
    let coned = cone_complex(x, loop_len)?;
    clock.lap("cone_complex");
    let perturbed = perturb(&coned, &scaled);
    clock.lap("perturb");
    let mut tracks = extract_tracks(&coned, &perturbed);
    clock.lap("extract_tracks");
    let tree = quotient(&coned, &perturbed, &mut tracks)?;
    clock.lap("quotient");

    let qi = projection_qi(&coned, &tree, options.sample_budget);
    clock.lap("qi");
    let l = loop_len as f64;
    let expansion = expansion_profile(x, &scaled, &[1.0, l, 2.0 * l, 3.0 * l]);
    let properness = properness_profile(x, &scaled, 1.0, 0.5);
    clock.lap("diagnostics");

    let summary = TreeifySummary {
        loop_bound: loop_len,
        cone_radius: coned.radius,
        scale: c,
        centers: coned.centers.len(),
        cone: coned.counts(),
        crossings: tracks.crossings.len(),
        tracks: tracks.component_count,
        tree_vertices: tree.t.len(),
        tree_edges: tree.t.edge_count(),
        max_perturbation: perturbed.max_shift(&scaled),
        scaled_expansion: expansion.at(l).unwrap_or(0.0),
        timings: clock.timings,
    };
    Ok(TreeifyRun {
        coned,
        scaled,
        perturbed,
        tracks,
        tree,
        qi,
        expansion,
        properness,
        summary,
    })
}

fn projection_qi(coned: &ConedComplex, tree: &QuotientTree, budget: usize) -> QiReport {
    let n = coned.base_len;
    let dy: Vec<Vec<f64>> = {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .map(|s| coned.y.distances_from(s))
            .collect()
    };
    let dt = tree.t.all_pairs_distances();
    let (sampled, sampling) = pairs(n, budget, DEFAULT_SEED);
    let samples: Vec<QiSample> = sampled
        .into_iter()
        .map(|(u, v)| QiSample {
            pair: (u, v),
            source: dy[u][v],
            target: dt.get(tree.pi[u], tree.pi[v]),
        })
        .collect();
    let image = &tree.pi[..n];
    let codensity = crate::graph::codensity(&dt, image);
    fit_qi(&samples, codensity, sampling)
}

/// Runs the pipeline on the ball graph of `x` at radius `R`, with the
/// function averaged over balls.
pub fn treeify_via_gamma(
    x: &Graph,
    f: &[f64],
    radius: f64,
    options: TreeifyOptions,
) -> Result<(GammaGraph, TreeifyRun)> {
    let gamma = build_gamma(x, radius)?;
    let hat_f = induce_hat_f(&gamma, f);
    let run = treeify_pipeline(&gamma.graph, &hat_f, options)?;
    Ok((gamma, run))
}
