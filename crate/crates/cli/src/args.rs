use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use token_spectra::Method;

#[derive(Debug, Parser)]
#[command(name = "token-spectra", version, about = "Laplacian spectra of token graphs of cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rotation orbits of k-subsets, with closed-form counts.
    Orbits(OrbitsArgs),
    /// The over-lift matrix B(z), or the tridiagonal sector matrix for k = 2.
    Matrix(MatrixArgs),
    /// Laplacian spectrum by one of three methods.
    Spectrum(SpectrumArgs),
    /// Sector factors of the characteristic polynomial of F_2(C_n).
    Charpoly(CharpolyArgs),
    /// Cross-method checks over every (n, k) up to --n-max.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Overlift,
    Contfrac,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Overlift => Method::Overlift,
            MethodArg::Contfrac => Method::Contfrac,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Cycle length.
    #[arg(long)]
    pub n: usize,
    /// Number of tokens.
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Also print B evaluated at z = exp(2 pi i r / n).
    #[arg(long)]
    pub r: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Overlift)]
    pub method: MethodArg,
    /// Per-sector table with discarded values starred.
    #[arg(long)]
    pub audit: bool,
    /// Recompute with another method and fail if the spectra differ.
    #[arg(long, value_enum)]
    pub check_against: Option<MethodArg>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CharpolyArgs {
    #[arg(long)]
    pub n: usize,
    /// Only 2 is accepted.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Sector; all sectors when omitted.
    #[arg(long)]
    pub r: Option<usize>,
    /// Number of (lambda, phi(lambda)) points to sample.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda_min: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    pub lambda_max: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Add 1 to entry (0, 0) of the first over-lift matrix (negative control).
    #[arg(long, hide = true)]
    pub perturb: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
