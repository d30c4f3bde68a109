use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nuradius", version, about = "Numerical radius, orthogonality and smoothness on polyhedral spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Absolute tolerance for every comparison.
    #[arg(long, global = true, env = "NURADIUS_TOLERANCE")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    W,
    Operator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LpMode {
    Support,
    Recover,
    Estimate,
}

#[derive(Debug, Args)]
pub struct SpaceArg {
    /// Built-in space name or path to a space file.
    #[arg(long)]
    pub space: String,
}

#[derive(Debug, Args)]
pub struct OperatorArgs {
    #[command(flatten)]
    pub space: SpaceArg,

    /// Operator file or `fixture:<name>`; repeat for two operators.
    #[arg(long = "op")]
    pub ops: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the space's vertex/facet data.
    Validate(SpaceArg),
    /// Operator norm and its attaining vertices.
    Norm(OperatorArgs),
    /// Numerical radius and its attaining dual pairs.
    Wnorm(OperatorArgs),
    /// Both attainment sets.
    Attain(OperatorArgs),
    /// Birkhoff-James orthogonality of the first operator to the second.
    Ortho {
        #[command(flatten)]
        operators: OperatorArgs,
        #[arg(long, value_enum, default_value_t = Kind::W)]
        kind: Kind,
    },
    /// Smoothness in the operator norm and in the numerical radius norm.
    Smooth {
        #[command(flatten)]
        operators: OperatorArgs,
        /// Also run the randomized right-additivity probe with this many trials.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Finite-dimensional l_p tools.
    Lp {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        mode: LpMode,
        /// Operator file (hidden operator for `recover`).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Comma-separated vector for `support`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        vector: Option<Vec<f64>>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the built-in example bundles.
    Fixtures,
}
