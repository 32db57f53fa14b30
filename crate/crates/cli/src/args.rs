use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 7;

/// Poincaré–Hopf indices and index-expectation curvature on finite graphs.
#[derive(Debug, Parser)]
#[command(name = "phcurv", version)]
pub struct RunConfig {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Step budget for clique enumeration.
    #[arg(long, global = true, env = "PHCURV_BUDGET")]
    pub budget: Option<u64>,
    /// Master seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report (or generated data) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timing to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler characteristic of the Whitney complex.
    Chi(GraphArgs),
    /// f-vector and f-function.
    Fvector(FvectorArgs),
    /// Poincaré–Hopf indices of an irrotational orientation.
    Index(FieldArgs),
    /// Check the index, f-function and Gauss–Bonnet identities on a graph.
    Verify(VerifyArgs),
    /// Index-expectation curvature.
    Curvature(CurvatureArgs),
    /// Critical-point classification on a 2-graph.
    Classify(FieldArgs),
    /// Generate a point cloud.
    Sample(SampleArgs),
    /// Build an ε-graph from a point cloud.
    Epsgraph(EpsGraphArgs),
    /// Curvature of an ε-graph from height functions in random directions.
    EmbedCurv(EmbedArgs),
    /// Random directed Erdős–Rényi experiments.
    Experiment(ExperimentArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Chi(_) => "chi",
            Self::Fvector(_) => "fvector",
            Self::Index(_) => "index",
            Self::Verify(_) => "verify",
            Self::Curvature(_) => "curvature",
            Self::Classify(_) => "classify",
            Self::Sample(_) => "sample",
            Self::Epsgraph(_) => "epsgraph",
            Self::EmbedCurv(_) => "embed-curv",
            Self::Experiment(_) => "experiment",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct GraphArgs {
    /// Graph file (edge list or JSON) or registry name such as
    /// `icosahedron`, `cycle:12`, `torus:5:6`.
    #[arg(long)]
    pub graph: String,
}

#[derive(Debug, Args, Serialize)]
pub struct FvectorArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Count simplices up to this dimension only.
    #[arg(long)]
    pub max_dim: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct FieldArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Coloring JSON `{"values": [...]}`; default is the vertex ids.
    #[arg(long, conflicts_with = "orientation")]
    pub coloring: Option<PathBuf>,
    /// Orientation JSON `{"edges": [[u, v], ...]}` meaning u→v.
    #[arg(long)]
    pub orientation: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
    /// Additional uniformly random orderings to test.
    #[arg(long, default_value_t = 20)]
    pub colorings: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct CurvatureArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Exact curvature of the uniform-order measure (the default).
    #[arg(long, conflicts_with_all = ["mc", "samples", "measure"])]
    pub exact: bool,
    /// Monte Carlo over uniformly random orderings.
    #[arg(long, conflicts_with = "measure")]
    pub mc: bool,
    /// Monte Carlo sample count (implies --mc).
    #[arg(long, conflicts_with = "measure")]
    pub samples: Option<u64>,
    /// Finitely supported measure JSON, evaluated exactly.
    #[arg(long)]
    pub measure: Option<PathBuf>,
    /// Also write per-vertex values as CSV.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

pub const DEFAULT_MC_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeArg {
    Circle,
    Sphere,
    Torus,
    Lemniscate,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub shape: ShapeArg,
    /// Points on the circle or lemniscate.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Circle radius.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Sphere latitudes, poles included.
    #[arg(long, default_value_t = 20)]
    pub rows: usize,
    /// Sphere longitudes.
    #[arg(long, default_value_t = 40)]
    pub cols: usize,
    /// Torus points around the axis.
    #[arg(long, default_value_t = 48)]
    pub n1: usize,
    /// Torus points around the tube.
    #[arg(long, default_value_t = 16)]
    pub n2: usize,
    /// Torus major radius.
    #[arg(long = "R", default_value_t = 2.0)]
    pub major: f64,
    /// Torus minor radius.
    #[arg(long = "r", default_value_t = 1.0)]
    pub minor: f64,
}

/// `auto` or a positive number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Epsilon {
    #[serde(serialize_with = "auto_str")]
    Auto,
    Value(f64),
}

fn auto_str<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("auto")
}

impl FromStr for Epsilon {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Self::Auto);
        }
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(Self::Value(x)),
            _ => Err(format!("expected `auto` or a positive number, got `{s}`")),
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct EpsGraphArgs {
    /// Point cloud CSV with a `# dim=d` header.
    #[arg(long)]
    pub cloud: PathBuf,
    #[arg(long, default_value = "auto")]
    pub eps: Epsilon,
}

#[derive(Debug, Args, Serialize)]
pub struct EmbedArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub eps: EpsGraphArgs,
    /// Number of random directions.
    #[arg(long, default_value_t = 10_000)]
    pub dirs: u64,
    /// CSV of point coordinates, curvature and standard error.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Triangles,
    Irrotational,
    EffectiveDensity,
}

#[derive(Debug, Args, Serialize)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub kind: ExperimentKind,
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Emit per-trial rows as CSV instead of the JSON report.
    #[arg(long)]
    pub csv: bool,
}
