use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ginibre", version, about = "Real eigenvalues of real elliptic Ginibre matrices")]
pub struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "GINIBRE_THREADS")]
    pub threads: Option<usize>,
    /// Directory for relative output paths.
    #[arg(long, global = true, env = "GINIBRE_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected number of real eigenvalues.
    Expected(ExpectedArgs),
    /// Density of real eigenvalues on a grid.
    Density(DensityArgs),
    /// Variance of the number of real eigenvalues.
    Variance(VarianceArgs),
    /// Monte Carlo sampling.
    Sample(SampleArgs),
    /// Exact identity and anchor checks.
    Verify(VerifyArgs),
    /// Coefficient tables.
    Coeffs(CoeffsArgs),
}

/// Exactly one of `--tau` and `--alpha`.
#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct Regime {
    /// Fixed non-Hermiticity parameter.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Almost-Hermitian scaling, tau = 1 - alpha^2/N.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalRegime {
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpectedRoute {
    Exact,
    Residue,
    Asymptotic,
}

#[derive(Debug, Args)]
pub struct ExpectedArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub regime: Regime,
    #[arg(long, value_enum, default_value = "exact")]
    pub route: ExpectedRoute,
    /// Expansion order m for the asymptotic route.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityRouteArg {
    Exact,
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Matrix size; required for the exact route.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub regime: Regime,
    /// Grid as lo:hi:count.
    #[arg(long, allow_hyphen_values = true, default_value = "-2.5:2.5:401")]
    pub grid: String,
    #[arg(long, value_enum, default_value = "exact")]
    pub route: DensityRouteArg,
    /// Output format.
    #[arg(long = "out", value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarianceRoute {
    Quadrature,
    Sum,
    Limit,
}

#[derive(Debug, Args)]
pub struct VarianceArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub regime: Regime,
    #[arg(long, value_enum, default_value = "quadrature")]
    pub route: VarianceRoute,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Gaussian,
    Uniform,
    Rademacher,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// fig1, fig2a, fig2b or fig3:alpha=K.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub regime: OptionalRegime,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub dist: DistArg,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Histogram bins on [-2.2, 2.2].
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    /// Statistics JSON; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Histogram CSV.
    #[arg(long)]
    pub hist: Option<PathBuf>,
    /// Complex eigenvalue CSV.
    #[arg(long)]
    pub scatter: Option<PathBuf>,
    /// Samples contributing to the scatter output.
    #[arg(long, default_value_t = 1)]
    pub scatter_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Anchors,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "identities")]
    pub suite: SuiteArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// q, p_hat, p, c_l, a_l, d_s, a_k or a_k_n.
    #[arg(long)]
    pub kind: String,
    /// First index for q, p_hat, p and a_k_n.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Last entry index.
    #[arg(long)]
    pub max: usize,
    /// alpha for c_l and d_s.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// tau for a_l.
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long = "format", value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
