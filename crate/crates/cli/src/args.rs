use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "newton-osc",
    version,
    about = "Decay of oscillatory multilinear forms via Newton polyhedra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Predict the decay rate for a phase and an exponent tuple.
    Analyze(AnalyzeArgs),
    /// Measure the decay numerically over a dyadic λ grid and fit the rate.
    DecayFit(DecayFitArgs),
    /// Estimate sublevel-set measures by Monte Carlo and fit the growth.
    Sublevel(SublevelArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Phase polynomial, as a JSON file {"dim": d, "terms": [{"alpha": [..], "coeff": c}, ..]}.
    #[arg(long, value_name = "FILE")]
    pub phase: PathBuf,

    /// Comma-separated Lebesgue exponents: fractions ("8/3"), decimals, or "inf".
    #[arg(long, value_name = "LIST")]
    pub exponents: String,

    /// Grid step for the nondegeneracy scan; default depends on the dimension.
    #[arg(long, value_name = "H")]
    pub grid_h: Option<f64>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Indicator family adapted to a supporting normal at the boundary point.
    Sharpness,
    /// One fixed smooth choice of f, testing the upper bound only.
    FixedF,
    /// Exact dyadic model sum, no quadrature.
    DyadicSum,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Sharpness => "sharpness",
            Mode::FixedF => "fixed-f",
            Mode::DyadicSum => "dyadic-sum",
        }
    }
}

#[derive(Debug, Args)]
pub struct DecayFitArgs {
    /// Phase polynomial, as a JSON file {"dim": d, "terms": [{"alpha": [..], "coeff": c}, ..]}.
    #[arg(long, value_name = "FILE")]
    pub phase: PathBuf,

    /// Comma-separated Lebesgue exponents: fractions ("8/3"), decimals, or "inf".
    #[arg(long, value_name = "LIST")]
    pub exponents: String,

    /// What to measure at each λ.
    #[arg(long, value_enum)]
    pub mode: Mode,

    /// Smallest λ; the grid runs over powers of two in [min, max].
    /// Defaults to 2^4 (2^6 for dyadic-sum).
    #[arg(long, value_name = "LAMBDA")]
    pub lambda_min: Option<f64>,

    /// Largest λ. Defaults to 2^12 (2^20 for dyadic-sum).
    #[arg(long, value_name = "LAMBDA")]
    pub lambda_max: Option<f64>,

    /// Integrand evaluation budget per λ for the quadrature modes.
    #[arg(long, value_name = "N", default_value_t = 400_000_000)]
    pub max_points: u64,

    /// Grid step for the nondegeneracy scan; default depends on the dimension.
    #[arg(long, value_name = "H")]
    pub grid_h: Option<f64>,

    /// Append one record per λ to this file as it is computed (JSONL, or CSV
    /// if the path ends in .csv).
    #[arg(long, value_name = "FILE")]
    pub stream: Option<PathBuf>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SublevelArgs {
    /// Phase polynomial, as a JSON file {"dim": d, "terms": [{"alpha": [..], "coeff": c}, ..]}.
    #[arg(long, value_name = "FILE")]
    pub phase: PathBuf,

    /// Smallest threshold; the grid runs over powers 2^{-k} in [min, max].
    /// Defaults to 2^-12.
    #[arg(long, value_name = "EPS")]
    pub eps_min: Option<f64>,

    /// Largest threshold. Defaults to 2^-4.
    #[arg(long, value_name = "EPS")]
    pub eps_max: Option<f64>,

    /// Monte Carlo samples per threshold.
    #[arg(long, value_name = "N", default_value_t = 1_000_000)]
    pub samples: u64,

    /// Seed for the sample stream; reruns with the same seed are bit-identical.
    #[arg(long, value_name = "S", default_value_t = 42)]
    pub seed: u64,

    /// Grid step for the nondegeneracy scan; default depends on the dimension.
    #[arg(long, value_name = "H")]
    pub grid_h: Option<f64>,

    /// Append one record per threshold to this file as it is computed (JSONL,
    /// or CSV if the path ends in .csv).
    #[arg(long, value_name = "FILE")]
    pub stream: Option<PathBuf>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}
