use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hbt_core::Kernel;

use crate::records::Format;

#[derive(Debug, Parser)]
#[command(
    name = "hbt",
    version,
    about = "Correlation datasets for Hanbury Brown-Twiss interferometry"
)]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Flat key=value file with default flag values; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Re-read a scan table and validate every row.
    #[arg(long, value_name = "FILE")]
    pub check: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Correlations along a transverse detector scan.
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Correlations at fixed offset over a log grid in photon number.
    #[command(name = "sweep-nbar", args_override_self = true)]
    SweepNbar(SweepArgs),
    /// Series-match and weak-light checks, as a report.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// Monte Carlo estimate of the intensity correlation.
    #[command(args_override_self = true)]
    Mc(McArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 10.0)]
    pub nbar: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.01)]
    pub x_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    #[arg(long, default_value_t = Kernel::Jinc)]
    pub kernel: Kernel,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub x: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub nbar_min: f64,
    #[arg(long, default_value_t = 1e2)]
    pub nbar_max: f64,
    #[arg(long, default_value_t = 10)]
    pub points_per_decade: usize,
    #[arg(long, default_value_t = Kernel::Jinc)]
    pub kernel: Kernel,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Photon numbers for the weak-light deviation check.
    #[arg(long, value_delimiter = ',', default_value = "0.01,10")]
    pub nbar: Vec<f64>,
    /// Correlation values for the series comparison.
    #[arg(long = "h", value_delimiter = ',', default_value = "0.1,0.3,0.5,0.7,0.9")]
    pub h: Vec<f64>,
    /// Largest weak-light deviation accepted at n̄ ≤ 0.01.
    #[arg(long, default_value_t = 1e-4)]
    pub threshold: f64,
    /// Highest series order compared.
    #[arg(long, default_value_t = 6)]
    pub orders: usize,
    #[arg(long, default_value_t = Kernel::Jinc)]
    pub kernel: Kernel,
    #[arg(long, default_value_t = 1000.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.01)]
    pub x_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = 512)]
    pub source_points: usize,
    #[arg(long, default_value_t = 200_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1.0)]
    pub nbar: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Detector grid as `start:stop:count`.
    #[arg(long, default_value = "0:0.01:25")]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}
