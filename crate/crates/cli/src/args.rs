//! Command-line flags.

use clap::{Args, Parser, Subcommand, ValueEnum};
use conics_core::approx::RootChoice;
use conics_core::{FieldSpec, Strategy};

use crate::render::Format;

#[derive(Debug, Clone, Parser)]
#[command(name = "conics", version, about = "Conic group powers, Redei functions and rational approximation tables")]
pub struct Cli {
    /// Coefficient field: rational, fp:<p> or real:<digits>.
    #[arg(long, global = true, default_value = "rational")]
    pub field: FieldSpec,
    /// Output format: tsv or json.
    #[arg(long, global = true, default_value = "tsv")]
    pub format: Format,
    /// Decimal places in decimal columns.
    #[arg(long, global = true, default_value_t = 10)]
    pub digits: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Powers (x, y)^n of a point with their parameters and coordinate ratios.
    Power(PowerArgs),
    /// Pairs (N_n, D_n) and Q_n = N_n / D_n.
    Redei(RedeiArgs),
    /// Rational points whose coordinate ratio approaches beta.
    Approximate(ApproximateArgs),
    /// Pythagorean triples whose leg ratio approaches beta.
    Pythagorean(PythagoreanArgs),
    /// Seeded property suites.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PowerArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub h: String,
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    /// Largest exponent; rows cover 0..=n.
    #[arg(short = 'n', long = "steps")]
    pub steps: u64,
}

#[derive(Debug, Clone, Args)]
pub struct RedeiArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub h: String,
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Largest index; rows cover 0..=n.
    #[arg(short = 'n', long = "steps")]
    pub steps: u64,
    /// matrix, recurrence or naive.
    #[arg(long, default_value = "matrix")]
    pub strategy: Strategy,
}

#[derive(Debug, Clone, Args)]
pub struct ApproximateArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub h: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    pub d: String,
    /// pi, sqrt:<k>, rat:<p>/<q>, a decimal, or an expression such as 2*pi/3.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Number of usable convergents to emit.
    #[arg(short = 'n', long = "steps")]
    pub steps: usize,
    /// Root of the auxiliary quadratic: plus or minus.
    #[arg(long, default_value = "plus")]
    pub root: RootChoice,
}

#[derive(Debug, Clone, Args)]
pub struct PythagoreanArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    #[arg(short = 'n', long = "steps")]
    pub steps: usize,
    #[arg(long, default_value = "plus")]
    pub root: RootChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Group,
    Redei,
    Power,
    Approx,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub suite: SuiteName,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
}
