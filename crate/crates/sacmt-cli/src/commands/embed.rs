//! `sacmt embed` — map sentences into the learned sentiment space.
//!
//! Loads a trained model and prints (or writes) the nonnegative embedding
//! vector for each input sentence, so downstream tools can cluster or
//! inspect the space without re-running training.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use sacmt_core::siamese::load_model;
use serde_json::{json, Value};

use crate::config::{pick, require, ConfigFile};

#[derive(Args)]
pub struct EmbedArgs {
    /// Trained model file.
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,

    /// Sentence given inline; repeatable.
    #[arg(long, value_name = "SENTENCE")]
    text: Vec<String>,

    /// Labeled corpus whose sentences should all be embedded.
    #[arg(long, value_name = "TSV")]
    input: Option<PathBuf>,

    /// Where to write the embeddings (JSON array of {id, vector}).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

pub fn run(args: EmbedArgs, cfg: &ConfigFile) -> Result<Value> {
    let model_path = require(pick(args.model, cfg, "model")?, "model")?;
    let (params, vocab) = load_model(&model_path)?;

    let mut items: Vec<(String, String)> = args
        .text
        .iter()
        .enumerate()
        .map(|(i, t)| (format!("text-{i}"), t.clone()))
        .collect();
    if let Some(path) = pick(args.input, cfg, "input")? {
        let corpus = super::load_corpus(&path)?;
        items.extend(corpus.iter().map(|s| (s.id.clone(), s.text.clone())));
    }
    if items.is_empty() {
        anyhow::bail!("nothing to embed: pass --text and/or --input");
    }

    let mut rows = Vec::with_capacity(items.len());
    for (id, text) in &items {
        let vector = params.forward(&vocab.encode(text)?)?;
        rows.push(json!({ "id": id, "vector": vector }));
    }

    let dim = params.out_dim();
    let count = rows.len();
    if let Some(path) = pick(args.out, cfg, "out")? {
        sacmt_core::io::write_json(&path, &rows)?;
        Ok(json!({ "command": "embed", "model": model_path, "count": count, "dim": dim, "out": path }))
    } else {
        Ok(json!({ "command": "embed", "model": model_path, "count": count, "dim": dim, "vectors": rows }))
    }
}
