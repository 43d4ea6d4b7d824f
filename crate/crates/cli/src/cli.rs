use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exactss_core::Rational;

#[derive(Parser, Debug)]
#[command(name = "exactss", version, about = "Exact minimum sample sizes for Bernoulli and Poisson means")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smallest n whose worst-case coverage over [a, b] exceeds 1 − δ.
    SampleSize(SampleSizeArgs),
    /// Minimum coverage over [a, b] for one n, with every candidate evaluated.
    MinCoverage(FixedN),
    /// Coverage on a regular grid plus every candidate point, for plotting.
    CoverageCurve(CurveArgs),
    /// The finite candidate set for one n, with where each point comes from.
    Candidates(FixedN),
    /// Compare the candidate-set minimum against a brute-force grid scan.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Query {
    /// Distribution family: bernoulli (alias binomial) or poisson.
    #[arg(long, default_value = "bernoulli")]
    pub family: String,
    /// Absolute margin ε; with --rel-eps as well, the mixed margin max(ε_a, ε_r·θ).
    #[arg(long, value_name = "DECIMAL", value_parser = rational)]
    pub abs_eps: Option<Rational>,
    /// Relative margin ε, as a fraction of θ.
    #[arg(long, value_name = "DECIMAL", value_parser = rational)]
    pub rel_eps: Option<Rational>,
    /// Clamp the estimate to [a, b] instead of using the plain sample mean.
    #[arg(long)]
    pub range_preserving: bool,
    /// Lower end of the parameter interval.
    #[arg(long, value_name = "DECIMAL", value_parser = rational)]
    pub a: Rational,
    /// Upper end of the parameter interval.
    #[arg(long, value_name = "DECIMAL", value_parser = rational)]
    pub b: Rational,
}

#[derive(Args, Debug, Clone)]
pub struct Emit {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct SampleSizeArgs {
    #[command(flatten)]
    pub query: Query,
    /// Allowed miss probability δ in (0, 1).
    #[arg(long, value_name = "DECIMAL", value_parser = rational)]
    pub delta: Rational,
    #[arg(long, default_value_t = exactss_core::search::DEFAULT_N_START)]
    pub n_start: u64,
    #[arg(long, default_value_t = exactss_core::search::DEFAULT_N_MAX)]
    pub n_max: u64,
    /// Include every examined n in text and JSON output.
    #[arg(long)]
    pub trace: bool,
    /// Require coverage above 1 − δ + 1e-12.
    #[arg(long)]
    pub guard_band: bool,
    #[command(flatten)]
    pub emit: Emit,
}

#[derive(Args, Debug)]
pub struct FixedN {
    #[command(flatten)]
    pub query: Query,
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub emit: Emit,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[command(flatten)]
    pub query: Query,
    #[arg(long)]
    pub n: u64,
    /// Grid spacing; the grid runs from a to b.
    #[arg(long, value_name = "DECIMAL", value_parser = rational)]
    pub step: Rational,
    #[command(flatten)]
    pub emit: Emit,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub query: Query,
    /// A single n, or an inclusive range such as 2..40.
    #[arg(long, value_name = "N|N..M", value_parser = n_range)]
    pub n: (u64, u64),
    /// Grid spacing; defaults to (b − a)/10000.
    #[arg(long, value_name = "DECIMAL", value_parser = rational)]
    pub step: Option<Rational>,
    /// Largest allowed |candidate minimum − grid minimum|.
    #[arg(long, default_value_t = 5e-10)]
    pub tol: f64,
    /// Scan the grid alone, without adding the candidate points.
    #[arg(long)]
    pub grid_only: bool,
    #[command(flatten)]
    pub emit: Emit,
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn n_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi)?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}
