use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dncbeta_core::div::{DEFAULT_EPS_LINE, DEFAULT_EPS_TAIL};
use dncbeta_core::reference::TABLE6_REPS;

#[derive(Debug, Parser)]
#[command(name = "dncbeta", version, about = "Doubly non-central beta and F distribution CDFs with guaranteed error bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CDF of the doubly non-central beta distribution at x.
    CdfBeta(CdfBetaArgs),
    /// CDF of the doubly non-central F distribution at f.
    CdfF(CdfFArgs),
    /// Write a block of series-matrix items as CSV.
    MatrixDump(MatrixDumpArgs),
    /// Recompute a benchmark table next to its published values.
    Tables(TablesArgs),
}

/// Distribution parameters. Degrees-of-freedom form by default; with
/// `--shape-form` the same four flags carry a, b, δ₁, δ₂ directly.
#[derive(Debug, Clone, Copy, Args)]
pub struct DistArgs {
    /// First degrees of freedom (or shape a with --shape-form).
    #[arg(long, allow_negative_numbers = true)]
    pub n1: f64,
    /// Second degrees of freedom (or shape b with --shape-form).
    #[arg(long, allow_negative_numbers = true)]
    pub n2: f64,
    /// First non-centrality (or δ₁ with --shape-form).
    #[arg(long, allow_negative_numbers = true)]
    pub lambda1: f64,
    /// Second non-centrality (or δ₂ with --shape-form).
    #[arg(long, allow_negative_numbers = true)]
    pub lambda2: f64,
    /// Read --n1 --n2 --lambda1 --lambda2 as a, b, δ₁, δ₂.
    #[arg(long)]
    pub shape_form: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    /// Per-line truncation budget.
    #[arg(long, env = "DNCBETA_EPS_LINE", default_value_t = DEFAULT_EPS_LINE)]
    pub eps_line: f64,
    /// Budget for the dropped outer Poisson tail.
    #[arg(long, env = "DNCBETA_EPS_TAIL", default_value_t = DEFAULT_EPS_TAIL)]
    pub eps_tail: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also evaluate the direct-summation reference and report the error.
    #[arg(long)]
    pub compare_oracle: bool,
}

#[derive(Debug, Args)]
pub struct CdfBetaArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Evaluation point; values outside [0, 1] are clamped.
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[command(flatten)]
    pub eval: EvalArgs,
}

#[derive(Debug, Args)]
pub struct CdfFArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Evaluation point; f ≤ 0 gives 0.
    #[arg(long, allow_negative_numbers = true)]
    pub f: f64,
    #[command(flatten)]
    pub eval: EvalArgs,
}

#[derive(Debug, Args)]
pub struct MatrixDumpArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long)]
    pub x: f64,
    /// Number of rows j = 0..rows.
    #[arg(long)]
    pub rows: usize,
    /// Number of columns l = 0..cols.
    #[arg(long)]
    pub cols: usize,
    /// Destination CSV file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Table number, 1 to 6.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub table: u8,
    /// Repetitions averaged per timing (table 6).
    #[arg(long, default_value_t = TABLE6_REPS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub bench_reps: usize,
    /// Replace every row's first non-centrality.
    #[arg(long)]
    pub lambda1: Option<f64>,
    /// Replace every row's second non-centrality.
    #[arg(long)]
    pub lambda2: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Div1,
    Div2,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Div1 => "div1",
            MethodArg::Div2 => "div2",
            MethodArg::Both => "both",
        }
    }
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Plain => "plain",
        }
    }
}
