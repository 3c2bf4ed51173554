//! File formats: distance matrices (CSV, JSON), point clouds (JSON),
//! annotated graphs (JSON) and Graphviz DOT.
//!
//! A distance CSV is a square numeric table, optionally preceded by a
//! header row of point ids. Graph JSON refers to vertices by position:
//!
//! ```json
//! {"vertices": [{"id": "a", "level": 0, "ball": ["a", "b"]}],
//!  "edges": [{"u": 0, "v": 1, "len": 1.0, "kind": "plain"}]}
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph};
use crate::metric::{FiniteMetricSpace, PointMetric};

pub fn read_metric_csv(text: &str) -> Result<FiniteMetricSpace> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse(format!("csv: {e}")))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push(rec);
    }
    let numeric = |field: &str| field.parse::<f64>().is_ok();
    let ids = match records.first() {
        Some(first) if !first.iter().all(numeric) => {
            let ids: Vec<String> = first.iter().map(str::to_owned).collect();
            records.remove(0);
            Some(ids)
        }
        _ => None,
    };
    let rows = records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            rec.iter()
                .map(|field| {
                    field
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("row {i}: '{field}' is not a number")))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    match ids {
        Some(ids) => {
            if ids.len() != rows.len() {
                return Err(Error::Parse(format!(
                    "{} ids for {} rows",
                    ids.len(),
                    rows.len()
                )));
            }
            FiniteMetricSpace::with_ids(ids, rows)
        }
        None => FiniteMetricSpace::from_rows(rows),
    }
}

pub fn write_metric_csv(z: &FiniteMetricSpace) -> String {
    let mut out = z.ids().join(",");
    out.push('\n');
    for i in 0..z.len() {
        let row: Vec<String> = z.row(i).iter().map(|d| d.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricJson {
    Matrix {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ids: Option<Vec<String>>,
        dist: Vec<Vec<f64>>,
    },
    Points {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ids: Option<Vec<String>>,
        points: Vec<Vec<f64>>,
        #[serde(default = "default_point_metric")]
        metric: PointMetric,
    },
}

fn default_point_metric() -> PointMetric {
    PointMetric::Euclidean
}

impl MetricJson {
    pub fn from_space(z: &FiniteMetricSpace) -> Self {
        MetricJson::Matrix {
            ids: Some(z.ids().to_vec()),
            dist: z.rows(),
        }
    }

    pub fn into_space(self) -> Result<FiniteMetricSpace> {
        match self {
            MetricJson::Matrix {
                ids: Some(ids),
                dist,
            } => FiniteMetricSpace::with_ids(ids, dist),
            MetricJson::Matrix { ids: None, dist } => FiniteMetricSpace::from_rows(dist),
            MetricJson::Points {
                ids,
                points,
                metric,
            } => {
                let z = FiniteMetricSpace::from_points(&points, metric)?;
                match ids {
                    Some(ids) => FiniteMetricSpace::with_ids(ids, z.rows()),
                    None => Ok(z),
                }
            }
        }
    }
}

pub fn read_metric_json(text: &str) -> Result<FiniteMetricSpace> {
    let parsed: MetricJson = serde_json::from_str(text)?;
    parsed.into_space()
}

/// Reads a metric by extension: `.csv` or anything else as JSON.
pub fn load_metric(path: &Path) -> Result<FiniteMetricSpace> {
    let text = fs::read_to_string(path)?;
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        read_metric_csv(&text)
    } else {
        read_metric_json(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    #[serde(default = "unit_length")]
    pub len: f64,
    #[serde(default)]
    pub kind: EdgeKind,
}

fn unit_length() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    /// `balls`, when given, lists the member ids of each vertex.
    pub fn from_graph(g: &Graph, balls: Option<Vec<Vec<String>>>) -> Self {
        let mut balls = balls.map(Vec::into_iter);
        let vertices = (0..g.len())
            .map(|v| VertexJson {
                id: g.ids()[v].clone(),
                level: g.levels().map(|l| l[v]),
                ball: balls.as_mut().and_then(Iterator::next),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                u: e.u,
                v: e.v,
                len: e.len,
                kind: e.kind,
            })
            .collect();
        GraphJson { vertices, edges }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new(self.vertices.iter().map(|v| v.id.clone()).collect());
        for e in &self.edges {
            g.add_edge(e.u, e.v, e.len, e.kind)
                .map_err(|err| Error::Parse(format!("edge ({}, {}): {err}", e.u, e.v)))?;
        }
        let levels: Vec<Option<i32>> = self.vertices.iter().map(|v| v.level).collect();
        if !levels.is_empty() && levels.iter().all(Option::is_some) {
            g.set_levels(levels.into_iter().flatten().collect())?;
        } else if levels.iter().any(Option::is_some) {
            return Err(Error::Parse(
                "either every vertex has a level or none does".into(),
            ));
        }
        Ok(g)
    }
}

pub fn read_graph_json(text: &str) -> Result<Graph> {
    serde_json::from_str::<GraphJson>(text)?.to_graph()
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    read_graph_json(&fs::read_to_string(path)?)
}

/// One real value per line, or a JSON array of numbers.
pub fn read_function(text: &str) -> Result<Vec<f64>> {
    if text.trim_start().starts_with('[') {
        return Ok(serde_json::from_str(text)?);
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<f64>()
                .map_err(|_| Error::Parse(format!("'{l}' is not a number")))
        })
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT. Vertices sharing a level are placed on one rank.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for (v, id) in g.ids().iter().enumerate() {
        let _ = writeln!(out, "  {v} [label={}];", quote(id));
    }
    if let Some(levels) = g.levels() {
        let mut distinct: Vec<i32> = levels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        for k in distinct {
            let members: Vec<String> = (0..g.len())
                .filter(|&v| levels[v] == k)
                .map(|v| v.to_string())
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", members.join("; "));
        }
    }
    for e in g.edges() {
        let style = match e.kind {
            EdgeKind::Plain => "",
            EdgeKind::Horizontal => " [style=dashed]",
            EdgeKind::Radial => " [style=solid]",
        };
        let _ = writeln!(out, "  {} -- {}{};", e.u, e.v, style);
    }
    out.push_str("}\n");
    out
}
