use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Association schemes, scaffold tensors and planar duality.
///
/// Wherever a scheme or diagram file is expected, `builtin:<name>` selects a
/// catalog entry; diagrams also accept `builtin:<name>:<l1>,<l2>,...`.
#[derive(Debug, Parser)]
#[command(name = "scaffolds", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Association schemes and their parameters.
    #[command(subcommand)]
    Scheme(SchemeCommand),
    /// Embedded diagrams.
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// Scaffold tensors.
    #[command(subcommand)]
    Scaffold(ScaffoldCommand),
}

#[derive(Debug, Subcommand)]
pub enum SchemeCommand {
    /// Check the scheme axioms.
    Validate {
        scheme: String,
        #[arg(long)]
        json: bool,
    },
    /// Intersection numbers, Krein parameters and eigenmatrices.
    Params {
        scheme: String,
        #[command(flatten)]
        output: Output,
    },
    /// The dual of a translation scheme, in scheme JSON.
    Dual {
        scheme: String,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DiagramCommand {
    /// Trace the faces of the embedding.
    Faces {
        diagram: String,
        #[command(flatten)]
        output: Output,
    },
    /// The planar dual, in diagram JSON.
    Dual {
        diagram: String,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScaffoldCommand {
    /// Evaluate a scaffold tensor, written as tensor JSON.
    Eval {
        diagram: String,
        #[arg(long)]
        scheme: String,
        #[arg(long, value_enum, default_value_t = Method::Elim)]
        method: Method,
        /// Elimination order, comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check the duality theorem for one diagram over a translation scheme.
    VerifyDuality {
        diagram: String,
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = scaffolds::duality::DEFAULT_TOL)]
        tol: f64,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        caps: Caps,
    },
    /// Dualize a linear combination of diagrams.
    Dualize {
        /// JSON `{"terms": [{"coeff": [re, im], "diagram": <diagram or "builtin:...">}]}`.
        terms: String,
        /// Substitute `|X|` from this scheme and evaluate both sides.
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Elim,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct Caps {
    #[arg(long, default_value_t = scaffolds::evaluate::DEFAULT_CAP)]
    pub max_entries: u128,
    #[arg(long, default_value_t = scaffolds::evaluate::DEFAULT_CAP)]
    pub max_intermediate: u128,
}

impl Caps {
    fn options(&self) -> scaffolds::EvalOptions {
        scaffolds::EvalOptions {
            max_entries: self.max_entries,
            max_intermediate: self.max_intermediate,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
