use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Caputo fractional-order dynamics: simulation, Lyapunov spectra, fractal
/// dimensions and stability criteria.
///
/// Settings are resolved as: command-line flags, then the `--config` TOML
/// document, then the catalog defaults.
#[derive(Debug, Parser)]
#[command(name = "fracdyn", version, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a catalog system and write its trajectory.
    Simulate(SimulateArgs),
    /// Lyapunov spectrum, Kaplan-Yorke dimension and attractor class.
    Lyapunov(LyapunovArgs),
    /// Box-counting dimension of a trajectory CSV.
    Dimension(DimensionArgs),
    /// Equilibria, Jacobian spectra and the eigenvalue criteria.
    Stability(StabilityArgs),
    /// Evaluate the Mittag-Leffler function E_{α,β}(z).
    Mlf(MlfArgs),
    /// One line per catalog system: name, dimension, default order, parameters.
    ListSystems,
    /// Re-run one of the five worked examples and compare with the stated results.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Catalog system: lorenz, duffing, chen, rossler, chua.
    #[arg(long)]
    pub system: Option<String>,
    /// TOML document with `system`, `alpha`, `x0`, `[params]`, `[solver]`, `[lyapunov]`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Fractional order in (0, 1] (the leading order for duffing).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Parameter override `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Initial state, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x0: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Step size.
    #[arg(long)]
    pub h: Option<f64>,
    /// Integration horizon; must be a multiple of h.
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// gl or abm.
    #[arg(long)]
    pub scheme: Option<String>,
    /// `full` or a window length in steps.
    #[arg(long)]
    pub memory: Option<String>,
    /// ABM corrector passes.
    #[arg(long = "corrector-iters")]
    pub corrector_iters: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Steps between re-orthonormalisations.
    #[arg(long = "renorm-every")]
    pub renorm_every: Option<usize>,
    /// Discarded initial time (default: 20% of t-end).
    #[arg(long)]
    pub transient: Option<f64>,
    /// Exponents within ±tol count as zero.
    #[arg(long = "zero-tol")]
    pub zero_tol: Option<f64>,
    /// json: full report; csv: running estimates per re-orthonormalisation.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DimensionArgs {
    /// Trajectory CSV with a header row.
    #[arg(long)]
    pub input: PathBuf,
    /// 1-based columns to use (default: every column but the first).
    #[arg(long, value_delimiter = ',')]
    pub columns: Option<Vec<usize>>,
    /// Fraction of leading rows to discard.
    #[arg(long, default_value_t = 0.0)]
    pub transient: f64,
    /// Largest box size (default: extent/4).
    #[arg(long = "eps-max")]
    pub eps_max: Option<f64>,
    /// Smallest box size (default: extent/4096).
    #[arg(long = "eps-min")]
    pub eps_min: Option<f64>,
    /// Number of box sizes (default 12).
    #[arg(long)]
    pub levels: Option<usize>,
    /// Report path; printed to standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Two-column `log(1/eps) log(N)` plot data.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// json: report; csv: eps,count table.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Dimension estimate for the dim > n - 1 criterion.
    #[arg(long)]
    pub dimension: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MlfArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Real part of the argument.
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    /// Imaginary part of the argument.
    #[arg(long = "z-im", allow_hyphen_values = true)]
    pub z_im: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Example number, 1 to 5.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
    pub example: u8,
    /// Directory receiving the bundle.
    #[arg(long = "out-dir")]
    pub out_dir: PathBuf,
    /// Override the documented horizon.
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
}
