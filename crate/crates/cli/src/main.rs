//! `ptamtl`: command-line front end.
//!
//! Every input argument is a file path if such a file exists, `-` for
//! standard input, and inline text otherwise.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ptamtl::Rational;

#[derive(Parser, Debug)]
#[command(name = "ptamtl", version, about = "Parametric timed automata, MTL and the channel machine reduction")]
struct Cli {
    /// Print machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Does the word satisfy the formula?
    Eval { formula: String, word: String },
    /// Is the word accepted by the automaton under the valuation?
    Member { pta: String, valuation: String, word: String },
    /// Is the automaton deterministic?
    DetCheck { pta: String },
    /// Build the automaton, formula and alphabet for a machine and target.
    Reduce {
        machine: String,
        target: String,
        /// Write `<base>.pta`, `<base>.mtl` and `<base>.alphabet`.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Encode an error-free computation as a timed word.
    Encode {
        machine: String,
        target: String,
        computation: String,
        /// Start time of the first block.
        #[arg(long)]
        delta: Option<Rational>,
        /// Slot offsets inside each block, comma separated.
        #[arg(long, value_delimiter = ',')]
        slots: Option<Vec<Rational>>,
    },
    /// Is the word in L(C, n)?
    CheckLcn { machine: String, target: String, n: usize, word: String },
    /// Recover the computation encoded by a word.
    Decode { machine: String, target: String, word: String },
    /// Bounded search for an error-free computation reaching the target.
    Search {
        machine: String,
        target: String,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[arg(long, default_value_t = 4)]
        chan: usize,
    },
    /// Bounded search for a valuation under which every accepted word
    /// satisfies the formula.
    McBounded {
        pta: String,
        formula: String,
        /// Candidate valuations separated by `;`, e.g. `p=1/2;p=1/3`.
        #[arg(long, conflicts_with = "k")]
        candidates: Option<String>,
        /// Use every combination of `1/k`, `1 <= k <= K`.
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long)]
        grid: Rational,
        #[arg(long)]
        horizon: Rational,
        #[arg(long)]
        max_events: usize,
        #[arg(long)]
        node_limit: Option<usize>,
    },
    /// Check both directions of the reduction on a bounded witness.
    VerifyReduction {
        machine: String,
        target: String,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[arg(long, default_value_t = 4)]
        chan: usize,
    },
}

/// Why a command did not produce a verdict.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command, cli.json) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
