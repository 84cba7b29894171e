//! Subcommand implementations. Each handler merges its flags with the
//! config file, runs the pipeline stage, and returns the one-line JSON
//! summary printed by `main`.

pub mod baseline;
pub mod cluster;
pub mod embed;
pub mod eval;
pub mod preprocess;
pub mod skipgram;
pub mod stats;
pub mod train;

use std::path::Path;

use anyhow::{Context, Result};
use sacmt_core::corpus::{load_dataset, LabeledCorpus};
use sacmt_core::skipgram::{train_skipgram, SkipgramConfig, WordEmbeddings};

use crate::config::require;

pub(crate) fn load_corpus(path: &Path) -> Result<LabeledCorpus> {
    load_dataset(path).with_context(|| format!("loading corpus {}", path.display()))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    sacmt_core::io::write_atomic(path, text.as_bytes())
        .with_context(|| format!("writing {}", path.display()))
}

/// Word embeddings for clustering or the baseline: load them from a file
/// when one is given, otherwise train skip-gram on `corpus` — which then
/// needs a seed.
pub(crate) fn obtain_embeddings(
    explicit: Option<&Path>,
    corpus: &LabeledCorpus,
    dim: usize,
    seed: Option<u64>,
) -> Result<WordEmbeddings> {
    if let Some(path) = explicit {
        return WordEmbeddings::load(path)
            .with_context(|| format!("loading embeddings {}", path.display()));
    }
    let sg = SkipgramConfig {
        dim,
        seed: require(seed, "seed")?,
        ..SkipgramConfig::default()
    };
    let (emb, _) = train_skipgram(corpus, &sg).context("training word embeddings")?;
    Ok(emb)
}
