//! Command-line front end.
//!
//! Inputs are file paths (`.csv` distance matrices, metric JSON, graph
//! JSON) or `fixture:<name>` for the built-in examples. Reports go to
//! stdout as JSON; `--out` additionally writes the artifact, a DOT file
//! for graphs, and a run manifest beside it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::gamma::{build_gamma, verify_gamma_qi};
use crate::graph::{
    bottleneck_delta, expansion_profile, four_point_delta, properness_profile, Graph,
};
use crate::io::{self, GraphJson, MetricJson};
use crate::metric::{is_ultrametric, FiniteMetricSpace};
use crate::rips::{
    build_h, build_rh, level_component_analysis, pq_detector, rh_to_h_distortion, rips_graph,
    BallMode, LeveledGraph,
};
use crate::sampling::DEFAULT_BUDGET;
use crate::scale::{analyzable_window, parse_ratio, LevelWindow};
use crate::treeify::{treeify_pipeline, treeify_via_gamma, TreeifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "COARSE_FOREST_THREADS";

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotATree(_) => EXIT_PROPERTY,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "coarse-forest",
    version,
    about = "Hyperbolic approximations and tree quotients of finite spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that an input is a valid metric space or graph.
    Validate { input: String },
    /// Build a graph from an input.
    Build(BuildArgs),
    /// Run one analysis and print its report.
    Analyze(AnalyzeArgs),
    /// Collapse a graph to a quotient tree along a function.
    Treeify(TreeifyArgs),
    /// Print a built-in example as JSON.
    Fixture {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildFlavor {
    H,
    Rh,
    Rips,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliBallMode {
    Witness,
    Metric,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub input: String,
    #[arg(long, value_enum)]
    pub flavor: BuildFlavor,
    /// Scale ratio, decimal or `p/q`.
    #[arg(long, default_value = "1/6")]
    pub r: String,
    /// Rips threshold.
    #[arg(long)]
    pub t: Option<String>,
    /// Ball-graph radius.
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Level range `a..b`, inclusive. Defaults to the analyzable window.
    #[arg(long)]
    pub levels: Option<String>,
    #[arg(long, value_enum, default_value = "witness")]
    pub ball_mode: CliBallMode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Delta,
    Bottleneck,
    Levels,
    Pq,
    Properness,
    Expansion,
    Distortion,
    Gamma,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: String,
    #[arg(long, value_enum)]
    pub op: Op,
    #[arg(long, default_value = "1/6")]
    pub r: String,
    /// Hop bound for the PQ detector.
    #[arg(long = "D")]
    pub bound: Option<usize>,
    /// Band half-width for properness.
    #[arg(long = "N", default_value_t = 1.0)]
    pub half_width: f64,
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    /// Expansion thresholds, comma separated.
    #[arg(long, default_value = "1,2,4,8")]
    pub t: String,
    /// Ball-graph radius.
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long)]
    pub levels: Option<String>,
    #[arg(long, value_enum)]
    pub flavor: Option<BuildFlavor>,
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// `index`, `column`, `rung`, `const:<value>` or a file of values.
    #[arg(long = "f", default_value = "index")]
    pub f: String,
    /// Columns for `--f column`; defaults to the square root of the size.
    #[arg(long)]
    pub cols: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TreeifyArgs {
    pub input: String,
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Loop bound override.
    #[arg(long = "L")]
    pub loop_bound: Option<usize>,
    /// Pass through the ball graph of this radius first.
    #[arg(long = "R")]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: String,
    pub input: String,
    pub input_digest: String,
    pub parameters: BTreeMap<String, Value>,
    pub stage_timings: Vec<(String, f64)>,
    pub outputs: Vec<String>,
}

/// Result of one command: the report printed to stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub manifest: Option<RunManifest>,
}

enum Loaded {
    Metric(FiniteMetricSpace),
    Graph(Graph),
}

struct Input {
    label: String,
    digest: String,
    loaded: Loaded,
}

fn load_input(spec: &str) -> Result<Input> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        let loaded = if let Some(z) = fixtures::metric_by_name(name) {
            Loaded::Metric(z)
        } else if let Some(g) = fixtures::graph_by_name(name) {
            Loaded::Graph(g)
        } else {
            return Err(Error::InvalidParameter(format!("unknown fixture '{name}'")));
        };
        return Ok(Input {
            label: spec.to_owned(),
            digest: hex::encode(Sha256::digest(spec.as_bytes())),
            loaded,
        });
    }
    let path = Path::new(spec);
    let bytes = fs::read(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    let loaded = if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        Loaded::Metric(io::read_metric_csv(&text)?)
    } else {
        let value: Value = serde_json::from_str(&text)?;
        if value.get("vertices").is_some() {
            Loaded::Graph(serde_json::from_value::<GraphJson>(value)?.to_graph()?)
        } else {
            Loaded::Metric(serde_json::from_value::<MetricJson>(value)?.into_space()?)
        }
    };
    Ok(Input {
        label: spec.to_owned(),
        digest,
        loaded,
    })
}

impl Input {
    fn metric(&self) -> Result<&FiniteMetricSpace> {
        match &self.loaded {
            Loaded::Metric(z) => Ok(z),
            Loaded::Graph(_) => Err(Error::InvalidParameter(format!(
                "{} is a graph; a metric space is needed",
                self.label
            ))),
        }
    }

    fn graph(&self) -> Result<&Graph> {
        match &self.loaded {
            Loaded::Graph(g) => Ok(g),
            Loaded::Metric(_) => Err(Error::InvalidParameter(format!(
                "{} is a metric space; a graph is needed",
                self.label
            ))),
        }
    }
}

/// Parses `a..b` (inclusive).
pub fn parse_levels(text: &str) -> Result<LevelWindow> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("levels '{text}' must look like a..b")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<i32>()
            .map_err(|_| Error::Parse(format!("level '{s}' is not an integer")))
    };
    LevelWindow::new(parse(a)?, parse(b)?)
}

fn window_for(z: &FiniteMetricSpace, r: f64, levels: Option<&str>) -> Result<LevelWindow> {
    match levels {
        Some(text) => parse_levels(text),
        None => Ok(analyzable_window(z, r)),
    }
}

fn resolve_function(args: &FunctionArgs, g: &Graph) -> Result<Vec<f64>> {
    let n = g.len();
    let f: Vec<f64> = match args.f.as_str() {
        "index" => (0..n).map(|v| v as f64).collect(),
        "column" => {
            let cols = match args.cols {
                Some(c) if c > 0 => c,
                Some(_) => return Err(Error::InvalidParameter("--cols must be positive".into())),
                None => {
                    let c = (n as f64).sqrt().round() as usize;
                    if c * c != n {
                        return Err(Error::InvalidParameter(format!(
                            "{n} vertices is not a square; pass --cols"
                        )));
                    }
                    c
                }
            };
            (0..n).map(|v| (v % cols) as f64).collect()
        }
        "rung" => {
            if !n.is_multiple_of(2) {
                return Err(Error::InvalidParameter(
                    "rung index needs an even vertex count".into(),
                ));
            }
            (0..n).map(|v| (v % (n / 2)) as f64).collect()
        }
        other => {
            if let Some(c) = other.strip_prefix("const:") {
                let c: f64 = c
                    .parse()
                    .map_err(|_| Error::Parse(format!("'{c}' is not a number")))?;
                vec![c; n]
            } else {
                io::read_function(&fs::read_to_string(other)?)?
            }
        }
    };
    if f.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} values for {n} vertices",
            f.len()
        )));
    }
    Ok(f)
}

fn ball_ids(x: &LeveledGraph, z: &FiniteMetricSpace) -> Option<Vec<Vec<String>>> {
    (0..x.len())
        .map(|v| {
            x.ball_members(v)
                .map(|m| m.into_iter().map(|p| z.ids()[p].clone()).collect())
        })
        .collect()
}

struct Emitter {
    outputs: Vec<String>,
}

impl Emitter {
    fn write(&mut self, path: &Path, contents: &str) -> Result<()> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, contents)?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    fn graph(&mut self, out: &Path, json: &GraphJson, g: &Graph) -> Result<()> {
        self.write(out, &to_pretty(json)?)?;
        self.write(&out.with_extension("dot"), &io::to_dot(g))
    }
}

fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn manifest_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.manifest.json"))
}

fn finish(
    command: &str,
    input: &Input,
    parameters: BTreeMap<String, Value>,
    stage_timings: Vec<(String, f64)>,
    mut emitter: Emitter,
    out: Option<&Path>,
    report: Value,
) -> Result<Outcome> {
    let Some(out) = out else {
        return Ok(Outcome {
            report,
            manifest: None,
        });
    };
    let path = manifest_path(out);
    emitter.outputs.push(path.display().to_string());
    let manifest = RunManifest {
        command: command.to_owned(),
        input: input.label.clone(),
        input_digest: input.digest.clone(),
        parameters,
        stage_timings,
        outputs: emitter.outputs.clone(),
    };
    emitter.write(&path, &to_pretty(&manifest)?)?;
    Ok(Outcome {
        report,
        manifest: Some(manifest),
    })
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .filter(|(_, v)| !v.is_null())
        .map(|(k, v)| ((*k).to_owned(), v.clone()))
        .collect()
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Validate { input } => validate(&input),
        Command::Build(args) => build(&args),
        Command::Analyze(args) => analyze(&args),
        Command::Treeify(args) => treeify(&args),
        Command::Fixture { name, out } => fixture(&name, out.as_deref()),
    }
}

fn validate(spec: &str) -> Result<Outcome> {
    let input = load_input(spec)?;
    let report = match &input.loaded {
        Loaded::Metric(z) => json!({
            "kind": "metric",
            "points": z.len(),
            "diameter": z.diameter(),
            "ultrametric": is_ultrametric(z),
        }),
        Loaded::Graph(g) => json!({
            "kind": "graph",
            "vertices": g.len(),
            "edges": g.edge_count(),
            "connected": g.is_connected(),
            "unitLengths": g.is_unit(),
            "tree": g.is_tree(),
        }),
    };
    Ok(Outcome {
        report,
        manifest: None,
    })
}

fn build(args: &BuildArgs) -> Result<Outcome> {
    let start = Instant::now();
    let input = load_input(&args.input)?;
    let mut emitter = Emitter {
        outputs: Vec::new(),
    };
    let r = parse_ratio(&args.r)?;
    let (graph, json, parameters) = match args.flavor {
        BuildFlavor::H | BuildFlavor::Rh => {
            let z = input.metric()?;
            let window = window_for(z, r, args.levels.as_deref())?;
            let x = if args.flavor == BuildFlavor::H {
                let mode = match args.ball_mode {
                    CliBallMode::Witness => BallMode::Witness,
                    CliBallMode::Metric => BallMode::Metric,
                };
                build_h(z, r, window, mode)?
            } else {
                build_rh(z, r, window)?
            };
            let json = GraphJson::from_graph(x.graph(), ball_ids(&x, z));
            let p = params(&[
                ("flavor", json!(x.flavor())),
                ("r", json!(r)),
                ("levels", json!(window)),
                ("ballMode", json!(x.ball_mode())),
            ]);
            (x.graph().clone(), json, p)
        }
        BuildFlavor::Rips => {
            let z = input.metric()?;
            let t = parse_ratio(
                args.t
                    .as_deref()
                    .ok_or_else(|| Error::InvalidParameter("--t is required".into()))?,
            )?;
            let g = rips_graph(z, t);
            let json = GraphJson::from_graph(&g, None);
            (
                g,
                json,
                params(&[("flavor", json!("rips")), ("t", json!(t))]),
            )
        }
        BuildFlavor::Gamma => {
            let x = input.graph()?;
            let radius = args
                .radius
                .ok_or_else(|| Error::InvalidParameter("--R is required".into()))?;
            let gamma = build_gamma(x, radius)?;
            let balls = gamma
                .balls
                .iter()
                .map(|b| b.iter().map(|&p| x.ids()[p].clone()).collect())
                .collect();
            let json = GraphJson::from_graph(&gamma.graph, Some(balls));
            (
                gamma.graph,
                json,
                params(&[("flavor", json!("gamma")), ("R", json!(radius))]),
            )
        }
    };
    let report = json!({
        "vertices": graph.len(),
        "edges": graph.edge_count(),
        "horizontalEdges": graph.edges().iter().filter(|e| e.kind == crate::graph::EdgeKind::Horizontal).count(),
        "connected": graph.is_connected(),
        "tree": graph.is_tree(),
        "graph": json,
    });
    if let Some(out) = &args.out {
        emitter.graph(out, &json, &graph)?;
    }
    let timings = vec![("build".to_owned(), start.elapsed().as_secs_f64() * 1e3)];
    finish(
        "build",
        &input,
        parameters,
        timings,
        emitter,
        args.out.as_deref(),
        report,
    )
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome> {
    let start = Instant::now();
    let input = load_input(&args.input)?;
    let r = parse_ratio(&args.r)?;
    let report = match args.op {
        Op::Delta => serde_json::to_value(four_point_delta(input.graph()?, args.budget)?)?,
        Op::Bottleneck => serde_json::to_value(bottleneck_delta(input.graph()?, args.budget)?)?,
        Op::Pq => {
            let bound = args
                .bound
                .ok_or_else(|| Error::InvalidParameter("--D is required".into()))?;
            serde_json::to_value(pq_detector(input.metric()?, r, bound)?)?
        }
        Op::Levels => {
            let z = input.metric()?;
            let window = window_for(z, r, args.levels.as_deref())?;
            let x = match args.flavor {
                Some(BuildFlavor::H) => build_h(z, r, window, BallMode::Witness)?,
                None | Some(BuildFlavor::Rh) => build_rh(z, r, window)?,
                Some(other) => {
                    return Err(Error::InvalidParameter(format!(
                        "levels needs flavor h or rh, not {other:?}"
                    )))
                }
            };
            serde_json::to_value(level_component_analysis(&x))?
        }
        Op::Distortion => {
            let z = input.metric()?;
            let window = window_for(z, r, args.levels.as_deref())?;
            serde_json::to_value(rh_to_h_distortion(z, r, window)?)?
        }
        Op::Properness => {
            let g = input.graph()?;
            let f = resolve_function(&args.function, g)?;
            serde_json::to_value(properness_profile(g, &f, args.half_width, args.step))?
        }
        Op::Expansion => {
            let g = input.graph()?;
            let f = resolve_function(&args.function, g)?;
            let thresholds = args
                .t
                .split(',')
                .map(|s| parse_ratio(s.trim()))
                .collect::<Result<Vec<f64>>>()?;
            serde_json::to_value(expansion_profile(g, &f, &thresholds))?
        }
        Op::Gamma => {
            serde_json::to_value(verify_gamma_qi(&build_gamma(input.graph()?, args.radius)?))?
        }
    };
    let mut emitter = Emitter {
        outputs: Vec::new(),
    };
    if let Some(out) = &args.out {
        emitter.write(out, &to_pretty(&report)?)?;
    }
    let parameters = params(&[
        ("op", json!(format!("{:?}", args.op).to_lowercase())),
        ("r", json!(r)),
        ("D", json!(args.bound)),
        ("N", json!(args.half_width)),
        ("R", json!(args.radius)),
        ("f", json!(args.function.f)),
        ("budget", json!(args.budget)),
        ("seed", json!(crate::sampling::DEFAULT_SEED)),
    ]);
    let timings = vec![("analyze".to_owned(), start.elapsed().as_secs_f64() * 1e3)];
    finish(
        "analyze",
        &input,
        parameters,
        timings,
        emitter,
        args.out.as_deref(),
        report,
    )
}

fn treeify(args: &TreeifyArgs) -> Result<Outcome> {
    let input = load_input(&args.input)?;
    let x = input.graph()?;
    let f = resolve_function(&args.function, x)?;
    let options = TreeifyOptions {
        loop_bound: args.loop_bound,
        sample_budget: args.budget,
    };
    let run = match args.radius {
        Some(radius) => treeify_via_gamma(x, &f, radius, options)?.1,
        None => treeify_pipeline(x, &f, options)?,
    };
    let mut t = run.tree.t.clone();
    // Levels: the integer band of each region's representative value.
    let band_of_region: Vec<i32> = {
        let mut band = vec![0; t.len()];
        for (v, &region) in run.tree.pi.iter().enumerate() {
            band[region] = run.perturbed.values[v].floor() as i32;
        }
        band
    };
    t.set_levels(band_of_region)?;
    let tree_json = GraphJson::from_graph(&t, None);
    let report = json!({
        "summary": run.summary,
        "qi": run.qi,
        "expansion": run.expansion,
        "properness": run.properness,
        "projection": run.projection(),
        "tree": tree_json,
    });
    let mut emitter = Emitter {
        outputs: Vec::new(),
    };
    if let Some(out) = &args.out {
        emitter.graph(out, &tree_json, &t)?;
    }
    let parameters = params(&[
        ("f", json!(args.function.f)),
        ("L", json!(run.summary.loop_bound)),
        ("R", json!(run.summary.cone_radius)),
        ("c", json!(run.summary.scale)),
        ("lambda", json!(run.qi.lambda)),
        ("C", json!(run.qi.c)),
        ("codensity", json!(run.qi.codensity)),
        ("gammaRadius", json!(args.radius)),
        ("budget", json!(args.budget)),
        ("seed", json!(crate::sampling::DEFAULT_SEED)),
    ]);
    let timings = run
        .summary
        .timings
        .iter()
        .map(|s| (s.stage.to_owned(), s.millis))
        .collect();
    finish(
        "treeify",
        &input,
        parameters,
        timings,
        emitter,
        args.out.as_deref(),
        report,
    )
}

fn fixture(name: &str, out: Option<&Path>) -> Result<Outcome> {
    let report = if let Some(z) = fixtures::metric_by_name(name) {
        serde_json::to_value(MetricJson::from_space(&z))?
    } else if let Some(g) = fixtures::graph_by_name(name) {
        serde_json::to_value(GraphJson::from_graph(&g, None))?
    } else {
        return Err(Error::InvalidParameter(format!("unknown fixture '{name}'")));
    };
    if let Some(out) = out {
        Emitter {
            outputs: Vec::new(),
        }
        .write(out, &to_pretty(&report)?)?;
    }
    Ok(Outcome {
        report,
        manifest: None,
    })
}

/// Applies `COARSE_FOREST_THREADS` to the global worker pool.
pub fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV}='{value}' is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}
