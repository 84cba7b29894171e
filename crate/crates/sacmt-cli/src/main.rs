//! `sacmt` — train and evaluate a shared sentiment space for code-mixed
//! text from the command line.
//!
//! Every subcommand prints a one-line JSON summary to standard output and
//! writes file outputs atomically. Exit codes: 0 on success, 1 on a
//! pipeline error, 2 on a usage error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "sacmt",
    version,
    about = "Sentiment-space training pipeline for code-mixed text",
    arg_required_else_help = true
)]
struct Cli {
    /// JSON object supplying defaults for any long flag; command-line
    /// values override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus statistics: sentence counts, class shares, vocabulary sizes.
    Stats(commands::stats::StatsArgs),
    /// Train word embeddings with the negative-sampling skip-gram model.
    Skipgram(commands::skipgram::SkipgramArgs),
    /// Group spelling variants of one word using embeddings + consonant skeletons.
    Cluster(commands::cluster::ClusterArgs),
    /// Rewrite a corpus so every spelling variant uses its canonical form.
    Preprocess(commands::preprocess::PreprocessArgs),
    /// Train the twin-encoder sentiment space on sentence pairs.
    Train(commands::train::TrainArgs),
    /// Evaluate a trained model against a labeled test set.
    Eval(commands::eval::EvalArgs),
    /// Averaged-word-vector + logistic-regression baseline.
    #[command(name = "baseline-asv")]
    BaselineAsv(commands::baseline::BaselineArgs),
    /// Project sentences into the sentiment space with a trained model.
    Embed(commands::embed::EmbedArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config::ConfigFile::load(cli.config.as_deref()).and_then(|cfg| {
        match cli.command {
            Command::Stats(args) => commands::stats::run(args, &cfg),
            Command::Skipgram(args) => commands::skipgram::run(args, &cfg),
            Command::Cluster(args) => commands::cluster::run(args, &cfg),
            Command::Preprocess(args) => commands::preprocess::run(args, &cfg),
            Command::Train(args) => commands::train::run(args, &cfg),
            Command::Eval(args) => commands::eval::run(args, &cfg),
            Command::BaselineAsv(args) => commands::baseline::run(args, &cfg),
            Command::Embed(args) => commands::embed::run(args, &cfg),
        }
    });
    match result {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
