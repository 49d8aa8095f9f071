//! `signspot` — dictionary-based sign spotting with LM-guided disambiguation.
//!
//! Subcommands mirror the pipeline stages: `dict-build` packages feature
//! files into a dictionary archive, `spot` scores segments against it,
//! `disambiguate` beam-decodes the resulting distributions with a language
//! model, `synth` fabricates noisy evaluation data, and `eval`/`sweep`
//! compute WER/accuracy metrics and hyperparameter grids.
//!
//! Exit codes: 0 success, 2 validation failure, 3 transport failure,
//! 4 I/O failure.

mod args;
mod commands;

use clap::{Parser, Subcommand};
use signspot::error::ErrorCategory;

#[derive(Parser)]
#[command(
    name = "signspot",
    version,
    about = "Sign spotting and gloss disambiguation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate feature files and package them into a dictionary archive
    DictBuild(commands::dict_build::DictBuildArgs),
    /// Score segments against a dictionary and write similarity distributions
    Spot(commands::spot::SpotCmdArgs),
    /// Beam-decode distributions into gloss hypotheses with an LM
    Disambiguate(commands::disambiguate::DisambiguateArgs),
    /// Generate noisy synthetic distributions from a tagged corpus
    Synth(commands::synth::SynthArgs),
    /// Score hypotheses (WER) and distributions (top-k accuracy)
    Eval(commands::eval::EvalArgs),
    /// Run a hyperparameter or noise grid and tabulate the metrics
    Sweep(commands::sweep::SweepArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::DictBuild(args) => commands::dict_build::run(args),
        Command::Spot(args) => commands::spot::run(args),
        Command::Disambiguate(args) => commands::disambiguate::run(args),
        Command::Synth(args) => commands::synth::run(args),
        Command::Eval(args) => commands::eval::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
    };
    if let Err(error) = result {
        eprintln!("error: {error}");
        let code = match error.category() {
            ErrorCategory::Validation => 2,
            ErrorCategory::Transport => 3,
            ErrorCategory::Io => 4,
        };
        std::process::exit(code);
    }
}
