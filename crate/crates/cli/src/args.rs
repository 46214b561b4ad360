use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "levytail",
    version,
    about = "Heavy-tail analysis: stable-law tails, Hurst exponent and box-counting dimension"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here and print a short summary instead. For `simulate`
    /// this is where the generated series goes.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hurst exponent from moving-window range scaling.
    Hurst(HurstArgs),
    /// Box-counting dimension of the series trace.
    Boxdim(BoxdimArgs),
    /// Lower-tail probabilities of the standard normal and a stable law.
    Table(TableArgs),
    /// Generate a synthetic series and write it as CSV.
    Simulate(SimulateArgs),
    /// Check the stability or semi-stability identity of a characteristic function.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Noise,
    Walk,
    Fbm,
    Stable,
}

#[derive(Debug, Clone, Args)]
pub struct StableArgs {
    /// Tail exponent α in (0, 2].
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Skewness β in [−1, 1].
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// Scale γ > 0; defaults to the standardized value (0.5 at α = 2, 1 otherwise).
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Location σ.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub sigma: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Series length.
    #[arg(long, default_value_t = 16384)]
    pub n: usize,
    /// Hurst exponent for `--gen fbm`.
    #[arg(long, default_value_t = 0.5)]
    pub h: f64,
    /// Generator seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub stable: StableArgs,
}

#[derive(Debug, Clone, Args)]
#[group(id = "source", required = true, multiple = false, args = ["input", "gen"])]
pub struct InputArgs {
    /// CSV file with one column (values) or two (time, value).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generate the series instead of reading it.
    #[arg(long, value_enum)]
    pub gen: Option<GenKind>,
    #[command(flatten)]
    pub gen_args: GenArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HurstArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Window lengths in samples, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub windows: Option<Vec<usize>>,
    /// Write the (log Δt, log⟨R⟩) points as CSV.
    #[arg(long)]
    pub plot_points: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BoxdimArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Box side lengths, comma-separated, each a power of 1/2.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    /// Write the (log 1/δ, log N) points as CSV.
    #[arg(long)]
    pub plot_points: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub stable: StableArgs,
    /// Evaluation points, comma-separated; defaults to −10, −9, …, −1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub xs: Option<Vec<f64>>,
    /// Absolute tolerance of the numerical inversion.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Process to generate.
    #[arg(long, value_enum)]
    pub gen: GenKind,
    #[command(flatten)]
    pub gen_args: GenArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub stable: StableArgs,
    /// Scaling factors a for the stability identity, comma-separated.
    #[arg(long = "a-factor", value_delimiter = ',')]
    pub a_factor: Option<Vec<f64>>,
    /// Lattice base b of a semi-stable Lévy measure; selects the semi-stable check.
    #[arg(long = "semi-b")]
    pub semi_b: Option<f64>,
    /// Atom position x₀ of the semi-stable lattice.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub x0: f64,
    /// Terms per side of the truncated semi-stable series; chosen from the tolerance
    /// when omitted.
    #[arg(long)]
    pub terms: Option<u32>,
    /// Evaluation points z, comma-separated; defaults to the built-in grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub zs: Option<Vec<f64>>,
    /// Pass threshold on the modulus error.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}
