use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gumbel_sslt::mle::SolverOptions;

/// Default seed when neither `--seed` nor the environment provides one.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "gumbel-sslt", version, about = "Inference for Gumbel Type-II step-stress life tests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a Type-II censored step-stress sample.
    Simulate(SimulateArgs),
    /// Maximum likelihood fit with asymptotic intervals.
    FitMle(FitMleArgs),
    /// Bayes estimates and credible intervals by Metropolis-Hastings.
    FitBayes(FitBayesArgs),
    /// Monte Carlo study from a configuration file.
    McStudy(McStudyArgs),
    /// Kolmogorov-Smirnov test of the baseline law.
    Gof(GofArgs),
    /// Analysis of the embedded bladder-cancer data.
    RealData(RealDataArgs),
}

#[derive(Debug, Args)]
pub struct SeedArg {
    #[arg(long, env = "GUMBEL_SSLT_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Write here instead of standard output. A `<file>.manifest.json`
    /// describing the run is written next to it.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SampleFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub tau: f64,
    /// Units on test.
    #[arg(long)]
    pub n: usize,
    /// Failures observed before the test stops.
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
    pub format: SampleFormat,
    #[command(flatten)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Sample file with header `time,stress_level`.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub tau: f64,
    /// Units on test; defaults to the number of rows.
    #[arg(long)]
    pub n: Option<usize>,
    /// Intervals have level `1 - gamma`.
    #[arg(long, default_value_t = 0.05)]
    pub gamma: f64,
}

#[derive(Debug, Args)]
pub struct FitMleArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Newton-Raphson iteration cap.
    #[arg(long, default_value_t = SolverOptions::default().max_iter)]
    pub max_iter: usize,
    #[command(flatten)]
    pub out: OutputArg,
}

/// Gamma(a, b) prior on alpha, Gamma(c, d) on lambda (shape, rate) and
/// Beta(p, q) on beta.
#[derive(Debug, Args)]
pub struct PriorArgs {
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Scheme {
    Systematic,
    Stale,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Draws recorded, burn-in included.
    #[arg(long, default_value_t = 10_000)]
    pub chain_length: usize,
    #[arg(long, default_value_t = 2_000)]
    pub burn_in: usize,
    /// LINEX shape; repeat for several.
    #[arg(long = "linex-u", default_values_t = [1.0], allow_negative_numbers = true)]
    pub linex_u: Vec<f64>,
    /// How coordinate updates within a sweep condition on each other.
    #[arg(long, value_enum, default_value_t = Scheme::Systematic)]
    pub scheme: Scheme,
    /// Write every draw to this CSV file.
    #[arg(long)]
    pub dump_chain: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct FitBayesArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub prior: PriorArgs,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableFormatArg {
    Csv,
    Markdown,
    Json,
}

#[derive(Debug, Args)]
pub struct McStudyArgs {
    /// Study configuration (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the file's replicate count.
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Overrides the file's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = TableFormatArg::Csv)]
    pub format: TableFormatArg,
    /// Include every replicate's estimates and intervals (JSON only).
    #[arg(long)]
    pub records: bool,
    /// Worker threads; all cores by default. Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct GofArgs {
    /// CSV file with a `time` column.
    #[arg(long, required_unless_present = "embedded", conflicts_with = "embedded")]
    pub data: Option<PathBuf>,
    /// Use the embedded remission-time sample.
    #[arg(long)]
    pub embedded: bool,
    /// Baseline shape; fitted to the data when omitted.
    #[arg(long, requires = "lambda")]
    pub alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    pub lambda: Option<f64>,
    /// Also compute a parametric-bootstrap p-value from this many
    /// replicates (fitted parameters only).
    #[arg(long, value_name = "REPLICATES")]
    pub parametric_bootstrap: Option<usize>,
    /// Write plot data (CSV) into this directory.
    #[arg(long)]
    pub plots: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct RealDataArgs {
    /// 2.5 or 4.
    #[arg(long)]
    pub tau: f64,
    /// 50 or 60.
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 0.05)]
    pub gamma: f64,
    #[command(flatten)]
    pub prior: PriorArgs,
    #[command(flatten)]
    pub chain: ChainArgs,
    /// Write plot data (CSV) for the complete remission-time sample here.
    #[arg(long)]
    pub plots: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    #[command(flatten)]
    pub out: OutputArg,
}
