use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sharpbound::{Family, Hypothesis};

#[derive(Debug, Parser)]
#[command(
    name = "sharpbound",
    version,
    about = "Check Wirtinger- and Alzer-type inequalities numerically"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run inequality checkers on an expression or a generated corpus.
    Verify(VerifyArgs),
    /// Check the claimed extremal functions for sharpness.
    Audit(AuditArgs),
    /// Compare trapezoid-rule error bounds.
    Bounds(BoundsArgs),
    /// Search a generated corpus for counterexamples.
    Mine(MineArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Prepend a `# generated-at` line with the current time.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Generate a corpus from this family: poly, trig or exp.
    #[arg(long)]
    pub family: Option<Family>,
    /// Comma-separated hypotheses every generated function must satisfy.
    #[arg(long, value_delimiter = ',', requires = "family")]
    pub targets: Vec<Hypothesis>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 6)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 3)]
    pub max_terms: u32,
    #[arg(long, default_value_t = 1.0)]
    pub coefficient_range: f64,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Expression in `x`, e.g. "6*x^2 - 6*x + 1".
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Endpoints; accepts decimals and multiples of pi such as `2pi`.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub interval: Option<Vec<String>>,
    /// Subtract the mean of an `--expr` input before checking.
    #[arg(long)]
    pub center: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// `all` or a comma-separated list of thm1..thm6, cor1, higher.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    /// Order for the higher-order inequality.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = sharpbound::quad::DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value = "thm2,thm3,thm4,thm5,thm6")]
    pub theorem: String,
    /// Interval to move the extremals onto (thm2 always uses [0, 2pi]).
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub interval: Option<Vec<String>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub interval: Option<Vec<String>>,
    #[arg(long, default_value = "all")]
    pub theorem: String,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
