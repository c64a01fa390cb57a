use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cthh::rewrite::CompletionLimits;
use cthh_cli::commands::{self, Options};

/// Bound quivers, relation extensions and first Hochschild cohomology.
#[derive(Parser)]
#[command(name = "cthh", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of the human report.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on the number of rewriting rules during completion.
    #[arg(long, global = true, value_name = "N")]
    max_rules: Option<usize>,

    /// Cap on path length for basis and nilpotency probing.
    #[arg(long, global = true, value_name = "N")]
    max_path_len: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chordless cycles, inner/outer arrows, both quiver formulas and
    /// per-point Hochschild degrees.
    Analyze { file: PathBuf },
    /// Build the relation extension of a base presentation and print it.
    Extend { file: PathBuf },
    /// Equivalence classes of new arrows and the relation invariant.
    Equiv { file: PathBuf },
    /// Derivation-space dimensions of the algebra.
    Hh1 { file: PathBuf },
    /// Run every applicable identity; exit 1 on any mismatch.
    Check { file: PathBuf },
    /// Delete a point and print the resulting presentation.
    Delete {
        file: PathBuf,
        /// Label of the point to delete.
        #[arg(long, value_name = "X")]
        point: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = CompletionLimits::default();
    if let Some(n) = cli.max_rules {
        limits.max_rules = n;
    }
    if let Some(n) = cli.max_path_len {
        limits.max_path_len = n;
    }
    let opts = Options {
        json: cli.json,
        limits,
    };

    let file = match &cli.command {
        Command::Analyze { file }
        | Command::Extend { file }
        | Command::Equiv { file }
        | Command::Hh1 { file }
        | Command::Check { file }
        | Command::Delete { file, .. } => file.clone(),
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };

    let outcome = match &cli.command {
        Command::Analyze { .. } => commands::analyze(&text, &opts).map(|s| (s, 0)),
        Command::Extend { .. } => commands::extend(&text, &opts).map(|s| (s, 0)),
        Command::Equiv { .. } => commands::equiv(&text, &opts).map(|s| (s, 0)),
        Command::Hh1 { .. } => commands::hh1(&text, &opts).map(|s| (s, 0)),
        Command::Check { .. } => {
            commands::check(&text, &opts).map(|(s, ok)| (s, if ok { 0 } else { 1 }))
        }
        Command::Delete { point, .. } => {
            commands::delete(&text, point, &opts).map(|s| (s, 0))
        }
    };

    match outcome {
        Ok((output, code)) => {
            print!("{output}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
