//! `rwlogic`: generate graphs, compute cut-rank and rank-width, check
//! formulas, and simulate Pauli measurements on graph states.
//!
//! Exit codes: 0 on success (a false verdict is still a success), 1 for bad
//! input data or I/O failures, 2 for usage errors, 3 when an exhaustive
//! computation is refused for size.

mod commands;
mod source;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rwlogic", version, about)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct RunConfig {
    /// Output format; JSON is the stable interface.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for measurement randomness.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Largest vertex count for exhaustive rank-width search and tree counting.
    #[arg(long, default_value_t = rwlogic_core::rankwidth::DEFAULT_EXACT_CAP, global = true)]
    pub exact_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print (or write) a generated graph as an edge list.
    Gen {
        /// path, cycle, grid, triangular, hexagonal, complete or binary_tree
        kind: String,
        size: usize,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        out: Option<std::path::PathBuf>,
    },
    /// Rank-width by exhaustive search or a greedy upper bound.
    Rankwidth {
        #[arg(short, long)]
        graph: String,
        #[arg(long, conflicts_with = "greedy", required_unless_present = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
    },
    /// Cut-rank of a vertex set against its complement.
    Cutrank {
        #[arg(short, long)]
        graph: String,
        /// Comma-separated vertex list, e.g. "0,1,4"; empty for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Evaluate a sentence on one graph or on every graph of a family.
    Check {
        /// Graph source; repeat to form a family, in order.
        #[arg(short, long, required = true)]
        graph: Vec<String>,
        /// Sentence in the surface syntax.
        #[arg(conflicts_with = "named", required_unless_present = "named")]
        formula: Option<String>,
        /// Use a library formula: path2, two_colorable, connected, even_order.
        #[arg(long)]
        named: Option<String>,
    },
    /// Measure qubits of a graph state and print the transcript.
    Simulate {
        #[arg(short, long)]
        graph: String,
        /// "qubit:basis,..." with basis X, Y or Z, e.g. "0:Z,3:X".
        #[arg(long, default_value = "")]
        pattern: String,
    },
    /// Count leaf-labelled subcubic trees by enumeration.
    TreesCount { leaves: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { kind, size, out } => commands::gen(&cli.config, &kind, size, out.as_deref()),
        Command::Rankwidth { graph, exact, .. } => commands::rankwidth(&cli.config, &graph, exact),
        Command::Cutrank { graph, set } => commands::cutrank(&cli.config, &graph, &set),
        Command::Check {
            graph,
            formula,
            named,
        } => commands::check(&cli.config, &graph, formula.as_deref(), named.as_deref()),
        Command::Simulate { graph, pattern } => commands::simulate(&cli.config, &graph, &pattern),
        Command::TreesCount { leaves } => commands::trees_count(&cli.config, leaves),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message.replace('\n', " "));
            ExitCode::from(e.code)
        }
    }
}
