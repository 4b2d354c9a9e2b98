//! `nomafair`: fairness indicator, capacity regions and Monte Carlo runs.
//!
//! Exit codes: 0 success, 2 usage, 3 configuration, 4 I/O.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nomafair::Fading;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "nomafair",
    version,
    about = "Uplink NOMA vs OMA fairness analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the fairness threshold for an aggregate SNR or a user pair.
    Metric(MetricArgs),
    /// Write two-user NOMA and OMA capacity region boundaries as CSV.
    Region(RegionArgs),
    /// Run a Monte Carlo experiment and write plot-ready data.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["gamma", "g1"])))]
pub struct MetricArgs {
    /// Aggregate SNR Γ (linear).
    #[arg(long, conflicts_with_all = ["g1", "g2"], allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Channel power gain |h|² of user 1 (linear).
    #[arg(long, requires_all = ["g2", "p0_dbm"], allow_hyphen_values = true)]
    pub g1: Option<f64>,
    /// Channel power gain |h|² of user 2 (linear).
    #[arg(long, requires = "g1")]
    pub g2: Option<f64>,
    /// Transmit power per user in dBm.
    #[arg(long, allow_hyphen_values = true)]
    pub p0_dbm: Option<f64>,
    /// Noise power in dBm.
    #[arg(long, default_value_t = -90.0, allow_hyphen_values = true)]
    pub noise_dbm: f64,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("pair").required(true).args(["g1", "gain1_db"])))]
pub struct RegionArgs {
    /// Channel power gain |h|² of user 1 (linear).
    #[arg(long, requires = "g2", conflicts_with_all = ["gain1_db", "gain2_db"])]
    pub g1: Option<f64>,
    /// Channel power gain |h|² of user 2 (linear).
    #[arg(long, requires = "g1")]
    pub g2: Option<f64>,
    /// |h₁|²/σ² of user 1 in dB.
    #[arg(long, requires = "gain2_db", allow_hyphen_values = true)]
    pub gain1_db: Option<f64>,
    /// |h₂|²/σ² of user 2 in dB.
    #[arg(long, requires = "gain1_db", allow_hyphen_values = true)]
    pub gain2_db: Option<f64>,
    /// Transmit power per user in dBm.
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    pub p0_dbm: f64,
    /// Noise power in dBm.
    #[arg(long, default_value_t = -90.0, allow_hyphen_values = true)]
    pub noise_dbm: f64,
    /// Number of time-sharing samples along each boundary.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Sweep,
    Distribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FadingArg {
    Rayleigh,
    None,
}

impl From<FadingArg> for Fading {
    fn from(f: FadingArg) -> Self {
        match f {
            FadingArg::Rayleigh => Fading::Rayleigh,
            FadingArg::None => Fading::None,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Experiment to run.
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// Flat key = value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// RNG seed (overrides the config file).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pairs per sweep point or drops per distribution (overrides the config file).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Transmit power in dBm for the distribution experiment.
    #[arg(long, allow_hyphen_values = true)]
    pub p0_dbm: Option<f64>,
    /// Sweep grid as start:stop:step in dBm.
    #[arg(long, allow_hyphen_values = true)]
    pub p0_grid: Option<String>,
    #[arg(long, value_enum)]
    pub fading: Option<FadingArg>,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Config(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<nomafair::Error> for CliError {
    fn from(e: nomafair::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Metric(args) => commands::metric(&args),
        Command::Region(args) => commands::region(&args),
        Command::Simulate(args) => commands::simulate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nomafair: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
