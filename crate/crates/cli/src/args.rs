//! Command-line surface. Every argument struct is also the serialized
//! configuration stored in a run artifact, so a run can be replayed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expcomp::{Criterion, EtaGrid, ModelId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "expcomp",
    version,
    about = "Fit and compare exponentiated composite loss models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Fit one model to a claims file.
    Fit(FitArgs),
    /// Fit several models and rank them by a goodness-of-fit criterion.
    Compare(CompareArgs),
    /// Run a parameter-recovery simulation.
    Simulate(SimulateArgs),
    /// Emit density curve points as CSV.
    Density(DensityArgs),
    /// Re-run a saved artifact and check the results match.
    #[serde(skip)]
    Replay(ReplayArgs),
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse()
}

fn parse_criterion(s: &str) -> Result<Criterion, String> {
    s.parse()
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct InputArgs {
    /// CSV file with one claim per row.
    pub path: PathBuf,
    /// Column by header name or zero-based index.
    #[arg(long, default_value = "0")]
    pub column: String,
    /// Multiply every value by this factor.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
}

#[derive(Debug, Clone, Copy, Args, Serialize, Deserialize)]
pub struct GridArgs {
    #[arg(long, default_value_t = EtaGrid::default().lower)]
    pub eta_min: f64,
    #[arg(long, default_value_t = EtaGrid::default().upper)]
    pub eta_max: f64,
    #[arg(long, default_value_t = EtaGrid::default().coarse_step)]
    pub eta_step: f64,
    /// Refinement rounds, each 10x finer around the best eta.
    #[arg(long, default_value_t = EtaGrid::default().refinement_rounds)]
    pub refine: usize,
}

impl GridArgs {
    pub fn grid(&self) -> Result<EtaGrid, expcomp::Error> {
        EtaGrid::new(self.eta_min, self.eta_max, self.eta_step, self.refine)
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Write machine-readable CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Write a run artifact (command, config, results, timestamp) as JSON.
    #[arg(long)]
    pub artifact: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = parse_model)]
    pub model: ModelId,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Literature {
    Danish,
    Norwegian,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Comma-separated model list (default: all six).
    #[arg(long = "model", value_parser = parse_model, value_delimiter = ',')]
    pub models: Vec<ModelId>,
    #[arg(long, value_parser = parse_criterion, default_value = "bic")]
    pub criterion: Criterion,
    /// Append published reference rows for the four-parameter mixing-weight
    /// composites fitted to this dataset. They are never computed here.
    #[arg(long, value_enum)]
    pub literature: Option<Literature>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_model, default_value = "exp-exp-pareto")]
    pub model: ModelId,
    #[arg(long, required_unless_present = "paper_tables")]
    pub eta: Option<f64>,
    #[arg(long, required_unless_present = "paper_tables")]
    pub theta: Option<f64>,
    /// Sample size per replicate.
    #[arg(long, required_unless_present = "paper_tables")]
    pub n: Option<usize>,
    /// Replicates (default 2000).
    #[arg(long, default_value_t = 2000)]
    pub r: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Run the twelve exp-Pareto scenarios: (eta, theta) in
    /// {(0.8, 1), (5, 1), (0.8, 5), (5, 5)} with n in {50, 100, 200}.
    #[arg(long, conflicts_with_all = ["eta", "theta", "n"])]
    pub paper_tables: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DensityArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: ModelId,
    /// theta for composites, shape for baselines.
    #[arg(long)]
    pub theta: f64,
    /// eta for composites, scale for baselines.
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 0.01)]
    pub from: f64,
    #[arg(long, default_value_t = 10.0)]
    pub to: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Space points evenly in log y.
    #[arg(long)]
    pub log_spaced: bool,
    /// Add a cdf column.
    #[arg(long)]
    pub cdf: bool,
    /// Add a column E[(Y ^ y)^t] for this order t, with the cap b running
    /// over the y grid.
    #[arg(long, value_name = "T")]
    pub limited_moment: Option<f64>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Artifact written with --artifact.
    pub artifact: PathBuf,
}
