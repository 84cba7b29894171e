//! `sacmt baseline-asv` — averaged-word-vector baseline.
//!
//! Sentences become the mean of their word embeddings; an L2-regularized
//! multinomial logistic regression is fit on the training set and scored
//! on the test set with the same metrics as `eval`.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use sacmt_core::baseline::{
    predict_logreg, save_baseline, sentence_vector, train_logreg, LogRegConfig,
};
use sacmt_core::classify::{evaluate, render_metrics_table};
use sacmt_core::corpus::Sentiment;
use serde_json::{json, Value};

use crate::config::{pick, pick_or, require, ConfigFile};

#[derive(Args)]
pub struct BaselineArgs {
    /// Labeled training corpus.
    #[arg(long, value_name = "TSV")]
    train: Option<PathBuf>,

    /// Labeled test corpus.
    #[arg(long, value_name = "TSV")]
    test: Option<PathBuf>,

    /// Pre-trained word embeddings; omitted → train skip-gram on the training corpus.
    #[arg(long, value_name = "FILE")]
    embeddings: Option<PathBuf>,

    /// Word-embedding dimension when training on the fly.
    #[arg(long)]
    dim: Option<usize>,

    /// L2 penalty on the regression weights.
    #[arg(long)]
    l2: Option<f64>,

    /// Regression learning rate.
    #[arg(long)]
    lr: Option<f64>,

    /// Regression epochs (full-batch gradient descent).
    #[arg(long)]
    epochs: Option<usize>,

    /// RNG seed; required.
    #[arg(long)]
    seed: Option<u64>,

    /// Where to write the metrics (JSON).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Where to write the fitted regression model (JSON).
    #[arg(long, value_name = "FILE")]
    model_out: Option<PathBuf>,

    /// Where to write an aligned-column metrics table.
    #[arg(long, value_name = "FILE")]
    table_out: Option<PathBuf>,

    /// Row label used in the metrics table.
    #[arg(long)]
    name: Option<String>,
}

pub fn run(args: BaselineArgs, cfg: &ConfigFile) -> Result<Value> {
    let train_path = require(pick(args.train, cfg, "train")?, "train")?;
    let test_path = require(pick(args.test, cfg, "test")?, "test")?;
    let seed = require(pick(args.seed, cfg, "seed")?, "seed")?;
    let defaults = LogRegConfig::default();
    let lr_cfg = LogRegConfig {
        l2: pick_or(args.l2, cfg, "l2", defaults.l2)?,
        lr: pick_or(args.lr, cfg, "lr", defaults.lr)?,
        epochs: pick_or(args.epochs, cfg, "epochs", defaults.epochs)?,
        seed,
    };

    let train_set = super::load_corpus(&train_path)?;
    let test_set = super::load_corpus(&test_path)?;
    let emb = super::obtain_embeddings(
        pick(args.embeddings, cfg, "embeddings")?.as_deref(),
        &train_set,
        pick_or(args.dim, cfg, "dim", 100)?,
        Some(seed),
    )?;

    let xs: Vec<Vec<f64>> = train_set
        .iter()
        .map(|s| sentence_vector(&s.text, &emb))
        .collect();
    let ys: Vec<Sentiment> = train_set.iter().map(|s| s.label).collect();
    let (model, losses) = train_logreg(&xs, &ys, &lr_cfg)?;
    let metrics = evaluate(&test_set, |s| {
        predict_logreg(&model, &sentence_vector(&s.text, &emb))
    })?;

    if let Some(path) = pick(args.model_out, cfg, "model-out")? {
        save_baseline(&model, &path)?;
    }
    if let Some(path) = pick(args.out, cfg, "out")? {
        sacmt_core::io::write_json(&path, &metrics)?;
    }
    let name = pick_or(args.name, cfg, "name", "asv".to_string())?;
    if let Some(path) = pick(args.table_out, cfg, "table-out")? {
        super::write_text(&path, &render_metrics_table(&[(name.as_str(), &metrics)]))?;
    }
    Ok(json!({
        "command": "baseline-asv",
        "train": train_path,
        "test": test_path,
        "test_sentences": test_set.len(),
        "final_loss": losses.last(),
        "accuracy": metrics.accuracy,
        "macro_precision": metrics.macro_precision,
        "macro_recall": metrics.macro_recall,
        "macro_f_score": metrics.macro_f_score,
    }))
}
