use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "zprime",
    version,
    about = "Critical points of CUE characteristic polynomials"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format of the data tables.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Directory receiving the tables and the run manifest.
    #[arg(long, default_value = ".", global = true)]
    pub out: PathBuf,

    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,

    /// Suppress progress reports on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolChoice {
    G,
    H,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenphases and critical points of one Haar unitary.
    Sample(SampleArgs),
    /// Empirical Ip(x) against the large-x law and the small-x series.
    Ipx(IpxArgs),
    /// Exact gap-probability coefficients E_l and the Ip series coefficients.
    Coeffs(CoeffsArgs),
    /// Toeplitz determinants against their Szegő limits.
    Szego(SzegoArgs),
    /// Monte Carlo moments of traces of powers against the exact values.
    Moments(MomentsArgs),
    /// (S, x) pairs of spacings and critical-point distances with the β fit.
    SpacingCorr(SpacingCorrArgs),
    /// Log-log slope of the next-nearest spacing density near zero.
    NextSpacing(NextSpacingArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct IpxArgs {
    #[arg(long, default_value_t = 400)]
    pub n: usize,
    #[arg(long, default_value_t = 250)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = zprime_core::stats::DEFAULT_X_MIN)]
    pub x_min: f64,
    #[arg(long, default_value_t = zprime_core::stats::DEFAULT_X_MAX)]
    pub x_max: f64,
    #[arg(long, default_value_t = zprime_core::stats::DEFAULT_X_POINTS)]
    pub x_points: usize,
    #[arg(long, default_value_t = zprime_core::spacing::DEFAULT_L_MAX)]
    pub l_max: usize,
    #[arg(long, default_value_t = zprime_core::spacing::DEFAULT_BETA)]
    pub beta: f64,
    /// Directory of the coefficient cache (default: <out>/cache).
    #[arg(long)]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CoeffsArgs {
    #[arg(long, default_value_t = zprime_core::spacing::DEFAULT_L_MAX)]
    pub l_max: usize,
    #[arg(long, default_value_t = zprime_core::spacing::DEFAULT_BETA)]
    pub beta: f64,
    /// Directory of the coefficient cache (default: <out>/cache).
    #[arg(long)]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SzegoArgs {
    /// Modulus of z.
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
    /// Argument of z.
    #[arg(long, default_value_t = 0.0)]
    pub arg: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w_re: f64,
    #[arg(long, default_value_t = 0.0)]
    pub w_im: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    pub n_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = SymbolChoice::Both)]
    pub symbol: SymbolChoice,
    /// Also tabulate the second α-derivative check with this step.
    #[arg(long)]
    pub delta_alpha: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct MomentsArgs {
    /// Partitions separated by ';', parts by ',' (e.g. "1;2;1,1").
    #[arg(long, default_value = "1;2;1,1")]
    pub partitions: String,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct SpacingCorrArgs {
    #[arg(long, default_value_t = 400)]
    pub n: usize,
    #[arg(long, default_value_t = 250)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest x used by the β fit.
    #[arg(long, default_value_t = zprime_core::stats::BETA_FIT_X_MAX)]
    pub fit_x_max: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct NextSpacingArgs {
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.4)]
    pub window_lo: f64,
    #[arg(long, default_value_t = 0.8)]
    pub window_hi: f64,
}
