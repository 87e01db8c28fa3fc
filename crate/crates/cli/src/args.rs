use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sfd",
    version,
    about = "Squarefree values of integer polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a polynomial and print its canonical form.
    Parse(Common),
    /// Decide whether the polynomial has a repeated non-constant factor.
    SquarefreePoly(Common),
    /// Count solutions of P ≡ 0 (mod p²) at selected primes.
    Rho(RhoArgs),
    /// Truncated Euler product over primes up to a bound.
    Euler(EulerArgs),
    /// Primes p with p² dividing every value of P.
    PropertyA(Common),
    /// Count squarefree values over one box.
    Count(CountArgs),
    /// Count squarefree values over a list of boxes.
    DensitySweep(SweepArgs),
    /// Run every analysis and compare the empirical density with the product.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Lift,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Polynomial, e.g. "(x+y)^2*(x-y)".
    #[arg(long)]
    pub poly: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Maximum number of points enumerated by a single computation.
    #[arg(long, default_value_t = sfd_core::Budget::DEFAULT.0)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', conflicts_with = "prime_bound")]
    pub primes: Vec<u64>,
    /// Use every prime up to this bound.
    #[arg(long)]
    pub prime_bound: Option<u64>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    #[command(flatten)]
    pub common: Common,
    /// Defaults to 10000 for one variable and 100 otherwise.
    #[arg(long)]
    pub prime_bound: Option<u64>,
    /// Exact rational partial products.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Write the per-prime convergence table here.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated radii; a single value is used for every variable.
    #[arg(long = "box")]
    pub box_radii: String,
    /// Reject values divisible by small prime squares via residue tables.
    #[arg(long)]
    pub presieve: bool,
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Semicolon-separated boxes, e.g. "10,10;20,20".
    #[arg(long)]
    pub boxes: String,
    #[arg(long)]
    pub presieve: bool,
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub prime_bound: Option<u64>,
    #[arg(long = "box", conflicts_with = "boxes")]
    pub box_radii: Option<String>,
    #[arg(long)]
    pub boxes: Option<String>,
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long)]
    pub presieve: bool,
    /// Write the sweep table here.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}
