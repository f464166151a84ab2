use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "flatmass",
    version,
    about = "Transmission, bound states and bands for piecewise-flat mass profiles"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Reduced Planck constant [default: 1, or the structure file value]
    #[arg(long, global = true)]
    pub hbar: Option<f64>,

    /// Write to FILE instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Emit one JSON record per row instead of CSV
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Abrupt potential and mass step
    Step(StepArgs),
    /// Rectangular potential and mass barrier
    Barrier(BarrierArgs),
    /// Bound states of a rectangular potential and mass well
    Well(WellArgs),
    /// Periodic barrier/well lattice: dispersion and band summary
    Multibarrier(MultibarrierArgs),
    /// Arbitrary layered structure read from a TOML file
    Scatter(ScatterArgs),
    /// Compare ordering parameters on the high-energy diagnostics
    BetaSweep(BetaSweepArgs),
    /// Printed closed forms next to recomputed values
    Audit,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Lowest energy of the sweep
    #[arg(long, allow_negative_numbers = true)]
    pub e_min: Option<f64>,

    /// Highest energy of the sweep
    #[arg(long, allow_negative_numbers = true)]
    pub e_max: Option<f64>,

    /// Number of sweep points
    #[arg(long, default_value_t = 1000)]
    pub points: usize,

    /// Logarithmic instead of linear spacing
    #[arg(long)]
    pub log: bool,

    /// Explicit comma-separated energies (replaces the range)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["e_min", "e_max", "log"])]
    pub energies: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct MaterialArgs {
    /// Mass on the left (outside, well layers of a lattice)
    #[arg(long)]
    pub m1: f64,

    /// Mass on the right (inside, barrier layers of a lattice)
    #[arg(long)]
    pub m2: f64,

    /// Ordering parameter; -1 is BenDaniel-Duke, -0.5 the flat form
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct StepArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Step height
    #[arg(long = "V0", visible_alias = "v0", allow_negative_numbers = true)]
    pub v0: f64,

    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BarrierArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Barrier height
    #[arg(long = "V0", visible_alias = "v0", allow_negative_numbers = true)]
    pub v0: f64,

    /// Barrier width
    #[arg(long)]
    pub a: f64,

    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WellArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Well depth; the potential inside is -depth
    #[arg(long)]
    pub depth: f64,

    /// Well width
    #[arg(long)]
    pub a: f64,

    /// Add the levels of a constant-mass-m2 well as a column
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MultibarrierArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Barrier height
    #[arg(long = "V0", visible_alias = "v0", allow_negative_numbers = true)]
    pub v0: f64,

    /// Barrier width
    #[arg(long)]
    pub a: f64,

    /// Well width
    #[arg(long)]
    pub b: f64,

    /// Samples for the band search over the sweep range [default: 1000]
    #[arg(long)]
    pub grid: Option<usize>,

    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScatterArgs {
    /// Structure description (TOML)
    #[arg(long, value_name = "FILE")]
    pub structure: PathBuf,

    /// Ordering parameter; overrides the file
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,

    /// Add per-region plane-wave amplitude columns
    #[arg(long)]
    pub amplitudes: bool,

    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BetaSweepArgs {
    /// Ordering parameters to compare
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        default_value = "-1,-0.75,-0.5,-0.25,0"
    )]
    pub betas: Vec<f64>,

    #[arg(long, default_value_t = 1.0)]
    pub m1: f64,

    #[arg(long, default_value_t = 4.0)]
    pub m2: f64,

    #[arg(
        long = "V0",
        visible_alias = "v0",
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub v0: f64,

    /// Barrier width
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,

    /// Lattice well width
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
}
