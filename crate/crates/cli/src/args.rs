use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use daqc_core::daqc::Mode;
use daqc_core::noise::Protocol;

#[derive(Debug, Parser)]
#[command(name = "daqc", version, about = "Digital-analog QFT fidelity experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity against the input angle beta in [0, pi].
    SweepBeta(SweepBetaArgs),
    /// Fidelity against a common multiplier of all noise widths, beta = pi/4.
    SweepErrorScale(SweepScaleArgs),
    /// Print the analog schedule for a ZZ target.
    Compile(CompileArgs),
    /// Hamiltonian-path decomposition of K_L and its dense verification.
    Nn2ata(Nn2ataArgs),
    /// Render a sweep CSV as an SVG line plot.
    Plot(PlotArgs),
}

fn parse_protocol(s: &str) -> Result<Protocol, String> {
    s.parse().map_err(|e: daqc_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Comma-separated list of dqc, sdaqc, bdaqc.
    #[arg(long, value_delimiter = ',', value_parser = parse_protocol, default_value = "dqc,sdaqc,bdaqc")]
    pub protocols: Vec<Protocol>,
    /// Comma-separated register sizes.
    #[arg(long, value_delimiter = ',', default_value = "3,5,6,7")]
    pub qubits: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub shots: usize,
    /// JSON noise configuration; unspecified keys take their defaults.
    #[arg(long)]
    pub noise_config: Option<PathBuf>,
    /// Overrides the configuration seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the configuration banged window.
    #[arg(long)]
    pub delta_t: Option<f64>,
    /// CSV output; a `.manifest.json` is written beside it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepBetaArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = daqc_core::noise::DEFAULT_BETA_POINTS)]
    pub beta_points: usize,
    /// Disable all noise.
    #[arg(long, conflicts_with = "noise_config")]
    pub ideal: bool,
}

#[derive(Debug, Args)]
pub struct SweepScaleArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1,1.25,1.5,2")]
    pub scales: Vec<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Stepwise,
    Banged,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Stepwise => Mode::Stepwise,
            ModeArg::Banged => Mode::Banged,
        }
    }
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    #[arg(long)]
    pub qubits: usize,
    /// `qft-block:m` or a coupling file of `j k g_jk` lines.
    #[arg(long)]
    pub target: String,
    #[arg(long, value_enum, default_value = "stepwise")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = daqc_core::daqc::DEFAULT_DELTA_T)]
    pub delta_t: f64,
    /// Resource coupling g.
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
    /// Target time t_F.
    #[arg(long, default_value_t = 1.0)]
    pub target_time: f64,
}

#[derive(Debug, Args)]
pub struct Nn2ataArgs {
    #[arg(long)]
    pub size: usize,
    /// Evolution time used by the dense check.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum XAxis {
    Beta,
    ErrorScale,
    NQubits,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "beta")]
    pub x: XAxis,
    #[arg(long)]
    pub out: PathBuf,
}
