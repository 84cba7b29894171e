//! `sacmt skipgram` — train word embeddings with negative sampling.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use sacmt_core::skipgram::{train_skipgram, SkipgramConfig};
use serde_json::{json, Value};

use crate::config::{pick, pick_or, require, ConfigFile};

#[derive(Args)]
pub struct SkipgramArgs {
    /// Corpus to train on, `id<TAB>label<TAB>text` lines.
    #[arg(long, value_name = "TSV")]
    input: Option<PathBuf>,

    /// Where to write the embeddings (JSON).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Embedding dimension.
    #[arg(long)]
    dim: Option<usize>,

    /// Context window radius in words.
    #[arg(long)]
    window: Option<usize>,

    /// Negative samples per context word.
    #[arg(long)]
    negatives: Option<usize>,

    /// Training epochs.
    #[arg(long)]
    epochs: Option<usize>,

    /// Initial learning rate (decays linearly).
    #[arg(long)]
    lr: Option<f64>,

    /// Ignore words occurring fewer times than this.
    #[arg(long)]
    min_count: Option<usize>,

    /// RNG seed; required.
    #[arg(long)]
    seed: Option<u64>,
}

pub fn run(args: SkipgramArgs, cfg: &ConfigFile) -> Result<Value> {
    let input = require(pick(args.input, cfg, "input")?, "input")?;
    let out = require(pick(args.out, cfg, "out")?, "out")?;
    let defaults = SkipgramConfig::default();
    let sg = SkipgramConfig {
        dim: pick_or(args.dim, cfg, "dim", defaults.dim)?,
        window: pick_or(args.window, cfg, "window", defaults.window)?,
        negatives: pick_or(args.negatives, cfg, "negatives", defaults.negatives)?,
        epochs: pick_or(args.epochs, cfg, "epochs", defaults.epochs)?,
        lr: pick_or(args.lr, cfg, "lr", defaults.lr)?,
        min_count: pick_or(args.min_count, cfg, "min-count", defaults.min_count)?,
        seed: require(pick(args.seed, cfg, "seed")?, "seed")?,
    };
    let corpus = super::load_corpus(&input)?;
    let (emb, losses) = train_skipgram(&corpus, &sg)?;
    emb.save(&out)?;
    Ok(json!({
        "command": "skipgram",
        "input": input,
        "out": out,
        "words": emb.len(),
        "dim": emb.dim(),
        "epochs": sg.epochs,
        "final_loss": losses.last(),
    }))
}
