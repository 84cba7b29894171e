//! `sacmt cluster` — group spelling variants of the corpus vocabulary.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use sacmt_core::variants::{cluster_variants, word_frequencies};
use serde_json::{json, Value};

use crate::config::{pick, pick_or, require, ConfigFile};

#[derive(Args)]
pub struct ClusterArgs {
    /// Corpus whose vocabulary should be clustered.
    #[arg(long, value_name = "TSV")]
    input: Option<PathBuf>,

    /// Where to write the cluster map (JSON `{variant: canonical}`).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Pre-trained word embeddings; omitted → train skip-gram on the input.
    #[arg(long, value_name = "FILE")]
    embeddings: Option<PathBuf>,

    /// Embedding dimension when training on the fly.
    #[arg(long)]
    dim: Option<usize>,

    /// Cosine similarity threshold for joining variants.
    #[arg(long)]
    tau: Option<f64>,

    /// RNG seed; required unless --embeddings is given.
    #[arg(long)]
    seed: Option<u64>,

    /// Also write a human-readable cluster report.
    #[arg(long, value_name = "FILE")]
    report_out: Option<PathBuf>,
}

pub fn run(args: ClusterArgs, cfg: &ConfigFile) -> Result<Value> {
    let input = require(pick(args.input, cfg, "input")?, "input")?;
    let out = require(pick(args.out, cfg, "out")?, "out")?;
    let tau = pick_or(args.tau, cfg, "tau", 0.6)?;
    let corpus = super::load_corpus(&input)?;
    let emb = super::obtain_embeddings(
        pick(args.embeddings, cfg, "embeddings")?.as_deref(),
        &corpus,
        pick_or(args.dim, cfg, "dim", 100)?,
        pick(args.seed, cfg, "seed")?,
    )?;
    let clusters = cluster_variants(&word_frequencies(&corpus), &emb, tau)?;
    clusters.save(&out)?;
    if let Some(report) = pick(args.report_out, cfg, "report-out")? {
        super::write_text(&report, &clusters.render_report())?;
    }
    Ok(json!({
        "command": "cluster",
        "input": input,
        "out": out,
        "tau": tau,
        "clusters": clusters.clusters().len(),
        "rewritten_words": clusters.rewrites(),
        "identity": clusters.is_identity(),
    }))
}
