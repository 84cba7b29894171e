//! `sacmt preprocess` — rewrite spelling variants to their canonical forms.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use sacmt_core::corpus::{corpus_stats, save_dataset};
use sacmt_core::variants::{apply_clusters, cluster_variants, word_frequencies, ClusterMap};
use serde_json::{json, Value};

use crate::config::{pick, pick_or, require, ConfigFile};

#[derive(Args)]
pub struct PreprocessArgs {
    /// Corpus to rewrite.
    #[arg(long, value_name = "TSV")]
    input: Option<PathBuf>,

    /// Where to write the rewritten corpus.
    #[arg(long, value_name = "TSV")]
    out: Option<PathBuf>,

    /// Reuse a precomputed cluster map instead of building one.
    #[arg(long, value_name = "FILE")]
    clusters: Option<PathBuf>,

    /// Pre-trained embeddings for clustering; omitted → train on the input.
    #[arg(long, value_name = "FILE")]
    embeddings: Option<PathBuf>,

    /// Embedding dimension when training on the fly.
    #[arg(long)]
    dim: Option<usize>,

    /// Cosine similarity threshold for joining variants.
    #[arg(long)]
    tau: Option<f64>,

    /// RNG seed; required unless --embeddings or --clusters is given.
    #[arg(long)]
    seed: Option<u64>,

    /// Also write the cluster map used for the rewrite.
    #[arg(long, value_name = "FILE")]
    clusters_out: Option<PathBuf>,

    /// Also write a human-readable cluster report.
    #[arg(long, value_name = "FILE")]
    report_out: Option<PathBuf>,
}

pub fn run(args: PreprocessArgs, cfg: &ConfigFile) -> Result<Value> {
    let input = require(pick(args.input, cfg, "input")?, "input")?;
    let out = require(pick(args.out, cfg, "out")?, "out")?;
    let corpus = super::load_corpus(&input)?;

    let clusters = match pick::<PathBuf>(args.clusters, cfg, "clusters")? {
        Some(path) => ClusterMap::load(&path)
            .with_context(|| format!("loading cluster map {}", path.display()))?,
        None => {
            let emb = super::obtain_embeddings(
                pick(args.embeddings, cfg, "embeddings")?.as_deref(),
                &corpus,
                pick_or(args.dim, cfg, "dim", 100)?,
                pick(args.seed, cfg, "seed")?,
            )?;
            let tau = pick_or(args.tau, cfg, "tau", 0.6)?;
            cluster_variants(&word_frequencies(&corpus), &emb, tau)?
        }
    };

    let rewritten = apply_clusters(&corpus, &clusters);
    save_dataset(&rewritten, &out)?;
    if let Some(path) = pick(args.clusters_out, cfg, "clusters-out")? {
        clusters.save(&path)?;
    }
    if let Some(path) = pick(args.report_out, cfg, "report-out")? {
        super::write_text(&path, &clusters.render_report())?;
    }

    let before = corpus_stats(&corpus)?;
    let after = corpus_stats(&rewritten)?;
    Ok(json!({
        "command": "preprocess",
        "input": input,
        "out": out,
        "sentences": after.sentences,
        "rewritten_words": clusters.rewrites(),
        "distinct_tokens_before": before.distinct_tokens,
        "distinct_tokens_after": after.distinct_tokens,
    }))
}
