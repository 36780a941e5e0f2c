//! `realize`: run the realize-core operations over formula files.

mod render;
mod run;

use std::num::NonZeroU64;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use realize_core::witness::Range;

/// Realizability, Dialectica and sequential forms for finite-type arithmetic.
#[derive(Debug, Parser)]
#[command(name = "realize", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Check,
    Classify,
    Mr,
    MrTypes,
    Dialectica,
    DTypes,
    Seq,
    Report,
    Eval,
    Decide,
    Witness,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::Check => "check",
            Which::Classify => "classify",
            Which::Mr => "mr",
            Which::MrTypes => "mr-types",
            Which::Dialectica => "dialectica",
            Which::DTypes => "d-types",
            Which::Seq => "seq",
            Which::Report => "report",
            Which::Eval => "eval",
            Which::Decide => "decide",
            Which::Witness => "witness",
        }
    }
}

#[derive(Debug, Subcommand)]
#[command(rename_all = "kebab-case")]
enum Command {
    #[command(about = "Parse and type-check every item")]
    Check(Options),
    #[command(about = "Report formula class membership")]
    Classify(Options),
    #[command(about = "Modified realizability translation (or `t mr A` with --realizer)")]
    Mr(Options),
    #[command(about = "Types of the realizer tuple")]
    MrTypes(Options),
    #[command(about = "Dialectica translation")]
    Dialectica(Options),
    #[command(about = "Types of the Dialectica tuples")]
    DTypes(Options),
    #[command(about = "Sequential form of a `!x. ?y. A` sentence")]
    Seq(Options),
    #[command(about = "Which uniformization hypotheses a sentence meets")]
    Report(Options),
    #[command(about = "Normalize term items")]
    Eval(Options),
    #[command(about = "Decide closed quantifier-free formula items")]
    Decide(Options),
    #[command(about = "Check a witness (or, with --mr, a realizer tuple) on a range")]
    Witness(Options),
}

#[derive(Clone, Debug, Args)]
pub struct Options {
    /// Input files; `-` reads standard input.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,

    /// Only process the item with this name.
    #[arg(long)]
    pub item: Option<String>,

    /// Treat quantifier-free subformulas as prime when testing ∃-freeness.
    #[arg(long)]
    pub liberal_qf: bool,

    /// Print results as JSON.
    #[arg(long)]
    pub json: bool,

    /// Evaluation step budget.
    #[arg(long, default_value = "1000000")]
    pub max_steps: NonZeroU64,

    /// Inclusive range `a..b` for witness checks.
    #[arg(long, default_value = "0..10")]
    pub range: Range,

    /// Show every reduction step of `eval`.
    #[arg(long)]
    pub trace: bool,

    /// Realizer or witness term: the name of a term item, or term text.
    #[arg(long = "realizer", value_name = "TERM")]
    pub realizers: Vec<String>,

    /// With `witness`: check `t mr A` for the --realizer tuple instead of a
    /// single witness for `!x. ?y. A`.
    #[arg(long)]
    pub mr: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (which, opts) = match cli.command {
        Command::Check(o) => (Which::Check, o),
        Command::Classify(o) => (Which::Classify, o),
        Command::Mr(o) => (Which::Mr, o),
        Command::MrTypes(o) => (Which::MrTypes, o),
        Command::Dialectica(o) => (Which::Dialectica, o),
        Command::DTypes(o) => (Which::DTypes, o),
        Command::Seq(o) => (Which::Seq, o),
        Command::Report(o) => (Which::Report, o),
        Command::Eval(o) => (Which::Eval, o),
        Command::Decide(o) => (Which::Decide, o),
        Command::Witness(o) => (Which::Witness, o),
    };
    // Deeply nested numerals recurse; give the worker plenty of stack.
    let worker = std::thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(move || run::run(which, &opts))
        .expect("spawn worker thread");
    let code = worker.join().unwrap_or(101);
    ExitCode::from(code)
}
