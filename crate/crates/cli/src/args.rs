use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use redheffer::DEFAULT_PRECISION;

#[derive(Debug, Parser)]
#[command(
    name = "redheffer",
    version,
    about = "Coefficients, determinants and spectra of Redheffer-type matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print v(n, k) for 1 <= k <= floor(log2 n)
    Vnk(CommonArgs),
    /// Nontrivial eigenvalues, the two large real ones and the small-eigenvalue extrema
    Spectra(CommonArgs),
    /// Determinant from the coefficient-sum formula
    Det(CommonArgs),
    /// Recompute a published table and compare cell by cell
    Reproduce {
        #[arg(value_enum)]
        table: Table,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Table1,
    Eigentable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    /// W + D from the given coefficients and weights
    #[value(name = "A")]
    A,
    /// W + D^{-1}
    #[value(name = "Atilde")]
    Atilde,
    /// Unit coefficients, given weights
    #[value(name = "B")]
    B,
    /// Redheffer matrix: unit coefficients and weights
    #[value(name = "C")]
    C,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::A => "A",
            MatrixKind::Atilde => "Atilde",
            MatrixKind::B => "B",
            MatrixKind::C => "C",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Matrix size
    #[arg(long)]
    pub n: Option<u64>,

    /// Restrict output to one k
    #[arg(long)]
    pub k: Option<u32>,

    /// Working precision in bits for the root solver
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,

    /// unit | dirichlet:<re>[,<im>] (w_k = k^-s) | path to a file of integers
    #[arg(long, default_value = "unit")]
    pub weights: String,

    /// unit | path to a file of integers (a_1 must be 1)
    #[arg(long, default_value = "unit")]
    pub coeffs: String,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Directory for cached v(n, k) tables
    #[arg(long, env = "REDHEFFER_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Also compute the determinant by exact elimination (n <= 512)
    #[arg(long)]
    pub verify_dense: bool,

    /// Include the n = 2^28 cases
    #[arg(long)]
    pub extended: bool,

    /// Include every published case up to n = 2^36
    #[arg(long)]
    pub heroic: bool,

    #[arg(long, value_enum, ignore_case = true, default_value_t = MatrixKind::A)]
    pub matrix: MatrixKind,
}
