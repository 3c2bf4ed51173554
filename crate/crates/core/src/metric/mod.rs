//! Validated finite metric spaces and the scale-based predicates built on
//! them.

mod connect;
mod control;
mod ultra;

pub use connect::{
    d_finitely_connected, epsilon_components, greedy_maximal_separated, ChainCertificate,
    ComponentHops, FiniteConnectivity,
};
pub use control::{quasi_symmetry_control_estimate, ControlFit, P_GRID_MAX, P_GRID_STEPS};
pub use ultra::{is_ultrametric, subdominant_ultrametric, UltrametricSpace};

use serde::{Deserialize, Serialize};

use crate::error::{MetricViolation, Result};

/// Additive slack for the triangle inequality during validation.
pub const DEFAULT_SLACK: f64 = 1e-9;

/// Point-cloud metrics accepted at ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointMetric {
    Euclidean,
    Chebyshev,
}

/// A finite set of labelled points with a validated distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    ids: Vec<String>,
    dist: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Validates `rows` as a metric with the default slack. Point labels
    /// default to `0..n`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let ids = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::validate(ids, rows, DEFAULT_SLACK)
    }

    pub fn with_ids(ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::validate(ids, rows, DEFAULT_SLACK)
    }

    /// Checks the metric axioms in order (shape, finiteness, diagonal,
    /// sign, symmetry, separation, triangle) and reports the first failure
    /// with its witness indices.
    pub fn validate(ids: Vec<String>, rows: Vec<Vec<f64>>, slack: f64) -> Result<Self> {
        let n = rows.len();
        if ids.len() != n {
            return Err(crate::Error::Parse(format!(
                "{} labels for a {n}x{n} matrix",
                ids.len()
            )));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MetricViolation::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                }
                .into());
            }
        }
        let dist: Vec<f64> = rows.into_iter().flatten().collect();
        validate_flat(n, &dist, slack)?;
        Ok(Self { ids, dist })
    }

    /// Builds the distance matrix of a point cloud.
    pub fn from_points(points: &[Vec<f64>], metric: PointMetric) -> Result<Self> {
        let n = points.len();
        if let Some(dim) = points.first().map(Vec::len) {
            if let Some(row) = points.iter().position(|p| p.len() != dim) {
                return Err(crate::Error::Parse(format!(
                    "point {row} has dimension {}, expected {dim}",
                    points[row].len()
                )));
            }
        }
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let diffs = points[i].iter().zip(&points[j]).map(|(a, b)| (a - b).abs());
                rows[i][j] = match metric {
                    PointMetric::Euclidean => diffs.map(|x| x * x).sum::<f64>().sqrt(),
                    PointMetric::Chebyshev => diffs.fold(0.0, f64::max),
                };
            }
        }
        Self::from_rows(rows)
    }

    /// Trusted constructor for matrices produced inside the crate.
    pub(crate) fn from_trusted(ids: Vec<String>, dist: Vec<f64>) -> Self {
        debug_assert_eq!(ids.len() * ids.len(), dist.len());
        Self { ids, dist }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_positive_distance(&self) -> Option<f64> {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d > 0.0)
            .min_by(f64::total_cmp)
    }

    /// The space with points reordered so that new point `i` is old point
    /// `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(order.len(), n);
        let ids = order.iter().map(|&i| self.ids[i].clone()).collect();
        let mut dist = vec![0.0; n * n];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                dist[a * n + b] = self.d(i, j);
            }
        }
        Self { ids, dist }
    }
}

fn validate_flat(n: usize, dist: &[f64], slack: f64) -> std::result::Result<(), MetricViolation> {
    let d = |i: usize, j: usize| dist[i * n + j];
    for i in 0..n {
        for j in 0..n {
            if !d(i, j).is_finite() {
                return Err(MetricViolation::NonFinite { i, j });
            }
        }
    }
    if let Some(i) = (0..n).find(|&i| d(i, i) != 0.0) {
        return Err(MetricViolation::NonzeroDiagonal { i });
    }
    for i in 0..n {
        for j in 0..n {
            if d(i, j) < 0.0 {
                return Err(MetricViolation::NegativeEntry { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (d(i, j) - d(j, i)).abs() > slack {
                return Err(MetricViolation::Asymmetric { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if d(i, j) == 0.0 {
                return Err(MetricViolation::DuplicatePoint { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d(i, k) > d(i, j) + d(j, k) + slack {
                    return Err(MetricViolation::TriangleViolation { i, j, k });
                }
            }
        }
    }
    Ok(())
}
