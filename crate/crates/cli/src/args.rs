use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "seqdelib",
    version,
    about = "Sequential deliberation simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the seeded Monte Carlo simulation and report distortion statistics.
    Simulate(SimulateArgs),
    /// Stationary hypercube theory: distortion at a bit frequency, or the whole curve.
    Theory(TheoryArgs),
    /// Run a named experiment (`experiment list` shows the registry).
    Experiment(ExperimentArgs),
    /// Check whether an edge-list graph is a median graph.
    ValidateSpace(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Nash,
    Selfish,
    Unselfish,
    Dictator,
    Median3,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpaceArg {
    Line,
    Hypercube,
    Star,
    Graph(PathBuf),
}

pub fn parse_space(s: &str) -> Result<SpaceArg, String> {
    match s {
        "line" => Ok(SpaceArg::Line),
        "hypercube" => Ok(SpaceArg::Hypercube),
        "star" => Ok(SpaceArg::Star),
        other => match other.strip_prefix("graph:") {
            Some(path) if !path.is_empty() => Ok(SpaceArg::Graph(PathBuf::from(path))),
            _ => Err(format!(
                "expected line, hypercube, star or graph:<path>, got `{other}`"
            )),
        },
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// line | hypercube | star | graph:<path>
    #[arg(long, default_value = "line", value_parser = parse_space)]
    pub space: SpaceArg,
    /// Number of alternatives (default 50 on the line, 256 on the hypercube, 51 on the star).
    #[arg(long)]
    pub alternatives: Option<usize>,
    #[arg(long, default_value_t = 300)]
    pub agents: usize,
    /// Deliberation rounds T.
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = 1000)]
    pub runs: usize,
    #[arg(long, value_enum, default_value_t = SchemeArg::Nash)]
    pub scheme: SchemeArg,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Step scale of the unselfish bliss-point shift.
    #[arg(long, default_value_t = seqdelib::bargaining::DEFAULT_SHIFT_SCALE)]
    pub shift_scale: f64,
    /// Use ε-unanimous populations.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Distortion table (csv) or full report (json).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Per-step summary table: step,mean,q1,q3.
    #[arg(long)]
    pub steps_out: Option<PathBuf>,
    /// Deliberation traces: run,step,agent_u,agent_v,threat,outcome.
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    /// Bit frequency to evaluate.
    #[arg(long)]
    pub f: Option<f64>,
    /// Grid points of the curve written to --out.
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Curve table: f,pi1,distortion.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    pub name: String,
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub f: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub path: PathBuf,
}
