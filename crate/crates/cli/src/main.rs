//! `qwalg`: classify finite algebras, compute their centers, evaluate
//! identities and search for countermodels.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qwalg", version, about = "Finite-model workbench for quantum-Wajsberg algebras")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    All,
    Z,
    O,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    Leq,
    LeqQ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Bound {
    Ambient,
    Subset,
}

#[derive(Args, Debug, Clone)]
struct Budget {
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Search-node budget across all workers.
    #[arg(long)]
    nodes: Option<u64>,
    /// Wall-clock budget per size, in seconds.
    #[arg(long)]
    time: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check class membership; without --class, run the whole hierarchy.
    Check {
        /// Algebra file or builtin name.
        file: String,
        #[arg(long)]
        class: Option<String>,
        /// Scan every class even when a containing class already failed.
        #[arg(long)]
        force: bool,
    },
    /// List Z(X) and O(X) with their structure checks.
    Centers { file: String },
    /// Run every center theorem and the identity corpus.
    Verify {
        file: String,
        /// Range of the bound variable in the least/greatest-bound checks.
        #[arg(long, value_enum, default_value_t = Bound::Ambient)]
        bound: Bound,
    },
    /// Evaluate a statement.
    Eval {
        file: String,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
    },
    /// Search for the smallest model of a class refuting a statement.
    Refute {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Write the countermodel here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Enumerate a class at one size, up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        class: String,
        #[arg(long)]
        count_only: bool,
        /// Directory receiving one file per model plus manifest.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Covering pairs of an order, restricted to a center.
    Hasse {
        file: String,
        #[arg(long, value_enum, default_value_t = Order::Leq)]
        order: Order,
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
    },
    /// Print a shipped algebra.
    Builtin {
        name: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("reports serialize")
                ),
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
