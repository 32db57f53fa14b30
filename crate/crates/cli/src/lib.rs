//! The `phcurv` command line: argument parsing, dispatch to
//! `phcurv-core`, JSON reports and plot data.
//!
//! Exit codes: 0 on success, 1 for usage, parse and I/O errors, 2 when a
//! verified identity fails.

pub mod args;
pub mod plot;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::Path;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use phcurv_core::curvature::CurvatureVector;
use phcurv_core::experiments::{self, TrialRow};
use phcurv_core::geometric::{self, PointCloud};
use phcurv_core::morse2d::classify_all;
use phcurv_core::poly::rational_string;
use phcurv_core::rng::{self, substream};
use phcurv_core::{
    curvature, io, registry, Coloring, ColoringMeasure, ColoringSampler, Graph, Limits,
    Orientation, DEFAULT_BUDGET,
};

pub use args::RunConfig;
use args::*;
use plot::{emit_plot_data, PlotData, PlotRow};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] phcurv_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: String,
        source: phcurv_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // an identity failed while being checked along the way
            Self::Core(phcurv_core::Error::Inconsistent(_)) => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub results: Value,
    pub verification: BTreeMap<&'static str, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug)]
pub enum Output {
    Report(Box<Report>),
    /// Generated data (point clouds, graphs, CSV rows) written verbatim.
    Data(String),
}

#[derive(Debug)]
pub struct Outcome {
    pub output: Output,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match &self.output {
            Output::Report(r) => r.verification.values().all(|&ok| ok),
            Output::Data(_) => true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn render(&self) -> String {
        match &self.output {
            Output::Report(r) => {
                let mut s = serde_json::to_string_pretty(r).expect("report serializes");
                s.push('\n');
                s
            }
            Output::Data(d) => d.clone(),
        }
    }

    pub fn report(&self) -> Option<&Report> {
        match &self.output {
            Output::Report(r) => Some(r),
            Output::Data(_) => None,
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::Parser;
    RunConfig::try_parse_from(argv)
}

/// Runs a parsed command, on a dedicated pool when `--threads` is given.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.global.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(cfg)),
        None => dispatch(cfg),
    }
}

/// What a process invocation would print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Execution {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Execution {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            return Execution {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let text = outcome.render();
    let mut stderr = String::new();
    if !outcome.passed() {
        stderr.push_str("verification failed\n");
    }
    match &cfg.global.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Execution {
                code: outcome.exit_code(),
                stdout: String::new(),
                stderr,
            },
            Err(e) => Execution {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
            },
        },
        None => Execution {
            code: outcome.exit_code(),
            stdout: text,
            stderr,
        },
    }
}

fn budget(cfg: &RunConfig) -> u64 {
    cfg.global.budget.unwrap_or(DEFAULT_BUDGET)
}

fn input<T>(path: &Path, r: phcurv_core::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A readable file takes precedence; otherwise the registry is consulted.
pub fn load_graph(name: &str) -> Result<Graph> {
    let path = Path::new(name);
    if path.is_file() {
        return input(path, io::parse_graph(&read(path)?));
    }
    registry::named(name).map_err(|e| match e {
        phcurv_core::Error::Parse(_) => CliError::Usage(format!(
            "`{name}` is neither a readable file nor a registry graph \
             (cycle:k, path:k, complete:k, bipyramid:k, torus:m:n, octahedron, icosahedron, utility)"
        )),
        other => other.into(),
    })
}

fn load_cloud(path: &Path) -> Result<PointCloud> {
    let file = fs::File::open(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    input(path, io::read_point_cloud(std::io::BufReader::new(file)))
}

fn load_orientation(g: &Graph, field: &FieldArgs) -> Result<(Orientation, &'static str)> {
    if let Some(path) = &field.orientation {
        return Ok((
            input(path, io::parse_orientation(g, &read(path)?))?,
            "orientation",
        ));
    }
    let (c, source) = match &field.coloring {
        Some(path) => (input(path, io::parse_coloring(&read(path)?))?, "coloring"),
        None => (Coloring::identity(g.n()), "ids"),
    };
    Ok((Orientation::from_coloring(g, &c)?, source))
}

fn config_echo(cfg: &RunConfig, args: &impl Serialize) -> Value {
    let mut v = serde_json::to_value(args).expect("arguments serialize");
    if let Value::Object(map) = &mut v {
        map.insert("seed".into(), json!(cfg.global.seed));
        map.insert("budget".into(), json!(budget(cfg)));
    }
    v
}

fn rationals(values: &[BigRational]) -> Vec<String> {
    values.iter().map(rational_string).collect()
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome> {
    let start = Instant::now();
    let b = budget(cfg);
    let seed = cfg.global.seed;
    let mut verification = BTreeMap::new();
    let (config, results) = match &cfg.command {
        Command::Chi(a) => {
            let g = load_graph(&a.graph)?;
            let chi = phcurv_core::graph_euler_characteristic(&g, b)?;
            (
                config_echo(cfg, a),
                json!({ "n": g.n(), "edges": g.edge_count(), "chi": chi }),
            )
        }
        Command::Fvector(a) => {
            let g = load_graph(&a.graph.graph)?;
            let limits = Limits {
                max_dim: a.max_dim,
                budget: b,
            };
            let cc = phcurv_core::count_cliques(&g, &limits)?;
            let fv = &cc.fvector;
            (
                config_echo(cfg, a),
                json!({
                    "n": g.n(),
                    "edges": g.edge_count(),
                    "fvector": fv.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "dim": fv.dim(),
                    "f_function": fv.f_function().to_string(),
                    "truncated": cc.truncated,
                    "chi": (!cc.truncated).then(|| fv.euler_characteristic().to_string()),
                }),
            )
        }
        Command::Index(a) => {
            let g = load_graph(&a.graph.graph)?;
            let (o, source) = load_orientation(&g, a)?;
            let r = phcurv_core::verify_poincare_hopf(&g, &o, b)?;
            verification.insert("poincare_hopf", r.holds);
            (
                config_echo(cfg, a),
                json!({
                    "source": source,
                    "indices": r.indices,
                    "index_sum": r.index_sum,
                    "chi": r.euler_characteristic,
                }),
            )
        }
        Command::Verify(a) => {
            let (results, flags) = verify(&a.field, a.colorings, seed, b)?;
            verification = flags;
            (config_echo(cfg, a), results)
        }
        Command::Curvature(a) => {
            let (results, holds) = curvature_command(a, seed, b)?;
            verification.insert("gauss_bonnet", holds);
            (config_echo(cfg, a), results)
        }
        Command::Classify(a) => {
            let g = load_graph(&a.graph.graph)?;
            let (o, source) = load_orientation(&g, a)?;
            let cls = classify_all(&g, &o, b)?;
            // classify_all refuses to return unless the indices sum to chi
            verification.insert("index_sum_equals_chi", true);
            let mut results = serde_json::to_value(&cls).expect("classification serializes");
            results["source"] = json!(source);
            (config_echo(cfg, a), results)
        }
        Command::Sample(a) => {
            let pc = sample(a)?;
            let mut buf = Vec::new();
            io::write_point_cloud(&pc, &mut buf)?;
            return Ok(Outcome {
                output: Output::Data(String::from_utf8(buf).expect("utf-8")),
            });
        }
        Command::Epsgraph(a) => {
            let pc = load_cloud(&a.cloud)?;
            let g = geometric::build_eps_graph(&pc, resolve_eps(&pc, a.eps))?;
            let mut s = io::graph_to_json(&g);
            s.push('\n');
            return Ok(Outcome {
                output: Output::Data(s),
            });
        }
        Command::EmbedCurv(a) => {
            let (results, holds) = embed(a, seed, b)?;
            verification.insert("gauss_bonnet", holds);
            (config_echo(cfg, a), results)
        }
        Command::Experiment(a) => {
            let (results, rows, flags) = experiment(a, seed)?;
            if a.csv {
                return Ok(Outcome {
                    output: Output::Data(trial_csv(&rows)),
                });
            }
            verification = flags;
            (config_echo(cfg, a), results)
        }
    };
    Ok(Outcome {
        output: Output::Report(Box::new(Report {
            tool: "phcurv",
            version: env!("CARGO_PKG_VERSION"),
            command: cfg.command.name(),
            config,
            results,
            verification,
            timing: cfg.global.timing.then(|| Timing {
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }),
        })),
    })
}

fn verify(
    field: &FieldArgs,
    colorings: u64,
    seed: u64,
    b: u64,
) -> Result<(Value, BTreeMap<&'static str, bool>)> {
    let g = load_graph(&field.graph.graph)?;
    let (given, source) = load_orientation(&g, field)?;
    let sampler = curvature::UniformOrderSampler { n: g.n() };
    let mut orientations = vec![given];
    for i in 0..colorings {
        let c = sampler.sample(&mut substream(seed, rng::DOMAIN_VERIFY, i));
        orientations.push(Orientation::from_coloring(&g, &c)?);
    }
    let (mut ph_failures, mut f_failures) = (0u64, 0u64);
    for o in &orientations {
        if !phcurv_core::verify_poincare_hopf(&g, o, b)?.holds {
            ph_failures += 1;
        }
        if !phcurv_core::verify_f_identity(&g, o, b)?.holds {
            f_failures += 1;
        }
    }
    let fgb = phcurv_core::verify_functional_gauss_bonnet(&g, b)?;
    let k = phcurv_core::exact_curvature(&g, b)?;
    let gb = phcurv_core::verify_gauss_bonnet(&k, &g, b)?;
    let results = json!({
        "n": g.n(),
        "chi": gb.euler_characteristic,
        "source": source,
        "orientations_tested": orientations.len(),
        "poincare_hopf_failures": ph_failures,
        "f_identity_failures": f_failures,
        "functional_gauss_bonnet": {
            "lhs": fgb.lhs.to_string(),
            "rhs": fgb.rhs.to_string(),
            "chi_from_curvature": rational_string(&fgb.chi_from_curvature),
        },
        "curvature_total": rational_string(&gb.total),
    });
    let flags = BTreeMap::from([
        ("poincare_hopf", ph_failures == 0),
        ("f_identity", f_failures == 0),
        (
            "functional_gauss_bonnet",
            fgb.holds && fgb.holds_at_minus_one,
        ),
        ("gauss_bonnet", gb.holds),
    ]);
    Ok((results, flags))
}

fn curvature_values(k: &CurvatureVector) -> Value {
    let exact = match k {
        CurvatureVector::Exact(v) => json!(rationals(v)),
        CurvatureVector::MonteCarlo(_) => Value::Null,
    };
    json!({
        "mode": k.mode(),
        "K": k.values(),
        "K_exact": exact,
        "stderr": k.stderrs(),
        "total": rational_string(&k.total()),
    })
}

fn plot_rows(k: &CurvatureVector, pc: Option<&PointCloud>) -> PlotData {
    let stderrs = k.stderrs();
    let exact = match k {
        CurvatureVector::Exact(v) => Some(rationals(v)),
        CurvatureVector::MonteCarlo(_) => None,
    };
    PlotData {
        dim: pc.map_or(0, PointCloud::dim),
        rows: (0..k.len())
            .map(|v| PlotRow {
                vertex: v,
                coords: pc.map(|pc| pc.point(v).to_vec()).unwrap_or_default(),
                value: k.value(v),
                stderr: stderrs.as_ref().map(|s| s[v]),
                exact: exact.as_ref().map(|e| e[v].clone()),
            })
            .collect(),
    }
}

fn write_plot(data: &PlotData, path: &Path) -> Result<()> {
    emit_plot_data(data, path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn curvature_command(a: &CurvatureArgs, seed: u64, b: u64) -> Result<(Value, bool)> {
    let g = load_graph(&a.graph.graph)?;
    let (k, measure) = if let Some(path) = &a.measure {
        let support = input(path, io::parse_measure(&read(path)?))?;
        (
            curvature::curvature_from_finite_measure(&g, &support, b)?,
            "finite",
        )
    } else if a.mc || a.samples.is_some() {
        let samples = a.samples.unwrap_or(DEFAULT_MC_SAMPLES);
        (
            phcurv_core::mc_curvature(&g, &ColoringMeasure::UniformOrder, samples, seed, b)?,
            "uniform-order",
        )
    } else {
        (phcurv_core::exact_curvature(&g, b)?, "uniform-order")
    };
    let gb = phcurv_core::verify_gauss_bonnet(&k, &g, b)?;
    if let Some(path) = &a.plot {
        write_plot(&plot_rows(&k, None), path)?;
    }
    let mut results = curvature_values(&k);
    results["chi"] = json!(gb.euler_characteristic);
    results["measure"] = json!(measure);
    if let CurvatureVector::MonteCarlo(mc) = &k {
        results["samples"] = json!(mc.samples);
    }
    Ok((results, gb.holds))
}

fn sample(a: &SampleArgs) -> Result<PointCloud> {
    Ok(match a.shape {
        ShapeArg::Circle => geometric::sample_circle(a.n, a.radius)?,
        ShapeArg::Sphere => geometric::sample_sphere(a.rows, a.cols)?,
        ShapeArg::Torus => geometric::sample_torus(a.n1, a.n2, a.major, a.minor)?,
        ShapeArg::Lemniscate => geometric::sample_lemniscate(a.n)?,
    })
}

fn resolve_eps(pc: &PointCloud, eps: Epsilon) -> f64 {
    match eps {
        Epsilon::Auto => geometric::auto_epsilon(pc),
        Epsilon::Value(x) => x,
    }
}

fn embed(a: &EmbedArgs, seed: u64, b: u64) -> Result<(Value, bool)> {
    let pc = load_cloud(&a.eps.cloud)?;
    let eps = resolve_eps(&pc, a.eps.eps);
    let g = geometric::build_eps_graph(&pc, eps)?;
    let k = geometric::embedded_curvature(&pc, &g, a.dirs, seed, b)?;
    let gb = phcurv_core::verify_gauss_bonnet(&k, &g, b)?;
    if let Some(path) = &a.plot {
        write_plot(&plot_rows(&k, Some(&pc)), path)?;
    }
    let mut results = curvature_values(&k);
    results["points"] = json!(pc.len());
    results["dim"] = json!(pc.dim());
    results["eps"] = json!(eps);
    results["edges"] = json!(g.edge_count());
    results["chi"] = json!(gb.euler_characteristic);
    results["directions"] = json!(a.dirs);
    Ok((results, gb.holds))
}

fn experiment(
    a: &ExperimentArgs,
    seed: u64,
) -> Result<(Value, Vec<TrialRow>, BTreeMap<&'static str, bool>)> {
    let mut flags = BTreeMap::new();
    Ok(match a.kind {
        ExperimentKind::Triangles => {
            let r = experiments::triangle_cycle_fraction(a.n, a.p, a.trials, seed)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["z_score"] = json!(r.fraction.map(|f| f.z_score(r.target)));
            (v, r.rows, flags)
        }
        ExperimentKind::Irrotational => {
            let r = experiments::irrotational_probability(a.n, a.p, a.trials, seed)?;
            (
                serde_json::to_value(&r).expect("report serializes"),
                r.rows,
                flags,
            )
        }
        ExperimentKind::EffectiveDensity => {
            let r = experiments::effective_density_check(a.n, a.p, a.trials, seed)?;
            flags.insert("closed_forms_agree", r.closed_forms_agree);
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["z_score"] = json!(r.ratio.map(|e| e.z_score(r.target_ratio)));
            (v, r.rows, flags)
        }
    })
}

fn trial_csv(rows: &[TrialRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "trial",
        "edges",
        "triangles",
        "cyclic_triangles",
        "irrotational",
    ])
    .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.trial.to_string(),
            r.edges.to_string(),
            r.triangles.to_string(),
            r.cyclic_triangles.to_string(),
            r.irrotational.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}
