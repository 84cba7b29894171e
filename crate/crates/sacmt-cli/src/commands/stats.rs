//! `sacmt stats` — corpus-level counts and class shares.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use sacmt_core::corpus::corpus_stats;
use serde_json::{json, Value};

use crate::config::{pick, require, ConfigFile};

#[derive(Args)]
pub struct StatsArgs {
    /// Labeled corpus, one `id<TAB>label<TAB>text` line per sentence.
    #[arg(long, value_name = "TSV")]
    input: Option<PathBuf>,

    /// Also write the statistics as a JSON file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

pub fn run(args: StatsArgs, cfg: &ConfigFile) -> Result<Value> {
    let input = require(pick(args.input, cfg, "input")?, "input")?;
    let corpus = super::load_corpus(&input)?;
    let stats = corpus_stats(&corpus)?;
    if let Some(out) = pick(args.out, cfg, "out")? {
        sacmt_core::io::write_json(&out, &stats)?;
    }
    Ok(json!({
        "command": "stats",
        "input": input,
        "sentences": stats.sentences,
        "distinct_tokens": stats.distinct_tokens,
        "distinct_trigrams": stats.distinct_trigrams,
        "negative": stats.negative,
        "neutral": stats.neutral,
        "positive": stats.positive,
    }))
}
