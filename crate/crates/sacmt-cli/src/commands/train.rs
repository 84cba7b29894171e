//! `sacmt train` — fit the twin-encoder sentiment space.
//!
//! The pipeline: load the anchor (`--left`) and partner (`--right`,
//! defaulting to the anchor) corpora; in emoji mode relabel them from
//! emoji markers; unless `--no-preprocess` is given, rewrite spelling
//! variants using a cluster map (loaded, or built from embeddings, or
//! built from scratch); build the trigram vocabulary over both corpora;
//! draw one Same and one Different partner per anchor; run mini-batch
//! gradient descent; save the model.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use sacmt_core::corpus::{relabel_by_emoji, render_emoji_report, EmojiMap, LabeledCorpus};
use sacmt_core::siamese::{make_pairs, save_model, train, SiameseParams, TrainConfig};
use sacmt_core::textprep::TrigramVocab;
use sacmt_core::variants::{apply_clusters, cluster_variants, word_frequencies, ClusterMap};
use serde_json::{json, Value};

use crate::config::{pick, pick_or, require, ConfigFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Pair sentences by their sentiment labels.
    Sentiment,
    /// Derive labels from emoji markers first, then pair.
    Emoji,
}

#[derive(Args)]
pub struct TrainArgs {
    /// Anchor corpus, `id<TAB>label<TAB>text` lines.
    #[arg(long, value_name = "TSV")]
    left: Option<PathBuf>,

    /// Partner corpus for pairing; defaults to the anchor corpus.
    #[arg(long, value_name = "TSV")]
    right: Option<PathBuf>,

    /// Where to write the trained model (JSON).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// How training pairs get their class labels.
    #[arg(long, value_enum)]
    mode: Option<Mode>,

    /// Emoji→class map (JSON), required in emoji mode.
    #[arg(long, value_name = "FILE")]
    emoji_map: Option<PathBuf>,

    /// Write the emoji class-distribution report here (emoji mode).
    #[arg(long, value_name = "FILE")]
    emoji_report: Option<PathBuf>,

    /// Skip spelling-variant preprocessing entirely.
    #[arg(long)]
    no_preprocess: bool,

    /// Reuse a precomputed cluster map for preprocessing.
    #[arg(long, value_name = "FILE")]
    clusters: Option<PathBuf>,

    /// Pre-trained embeddings for clustering; omitted → train on the anchor corpus.
    #[arg(long, value_name = "FILE")]
    embeddings: Option<PathBuf>,

    /// Also write the cluster map used for preprocessing.
    #[arg(long, value_name = "FILE")]
    cluster_out: Option<PathBuf>,

    /// Cosine similarity threshold for joining variants.
    #[arg(long)]
    tau: Option<f64>,

    /// Word-embedding dimension when clustering embeddings are trained on the fly.
    #[arg(long)]
    dim: Option<usize>,

    /// Contrastive margin for different-class pairs, in (0, 1).
    #[arg(long)]
    margin: Option<f64>,

    /// Sentiment-space dimension.
    #[arg(long)]
    d: Option<usize>,

    /// Recurrent hidden size per direction.
    #[arg(long)]
    h: Option<usize>,

    /// Trigram embedding dimension.
    #[arg(long)]
    e: Option<usize>,

    /// Learning rate.
    #[arg(long)]
    lr: Option<f64>,

    /// Mini-batch size.
    #[arg(long)]
    batch: Option<usize>,

    /// Training epochs.
    #[arg(long)]
    epochs: Option<usize>,

    /// Gradient-norm clip threshold.
    #[arg(long)]
    clip: Option<f64>,

    /// RNG seed; required.
    #[arg(long)]
    seed: Option<u64>,

    /// Draw fresh pair partners every epoch instead of once per run.
    #[arg(long)]
    resample_per_epoch: bool,
}

pub fn run(args: TrainArgs, cfg: &ConfigFile) -> Result<Value> {
    let left_path = require(pick(args.left, cfg, "left")?, "left")?;
    let out = require(pick(args.out, cfg, "out")?, "out")?;
    let right_path = pick(args.right, cfg, "right")?;
    let mode = pick_or(args.mode, cfg, "mode", Mode::Sentiment)?;
    let defaults = TrainConfig::default();
    let tc = TrainConfig {
        margin: pick_or(args.margin, cfg, "margin", defaults.margin)?,
        d: pick_or(args.d, cfg, "d", defaults.d)?,
        h: pick_or(args.h, cfg, "h", defaults.h)?,
        e: pick_or(args.e, cfg, "e", defaults.e)?,
        lr: pick_or(args.lr, cfg, "lr", defaults.lr)?,
        batch_size: pick_or(args.batch, cfg, "batch", defaults.batch_size)?,
        epochs: pick_or(args.epochs, cfg, "epochs", defaults.epochs)?,
        clip_norm: pick_or(args.clip, cfg, "clip", defaults.clip_norm)?,
        seed: require(pick(args.seed, cfg, "seed")?, "seed")?,
    };
    tc.validate()?;

    let mut left = super::load_corpus(&left_path)?;
    let mut right = match &right_path {
        Some(p) => Some(super::load_corpus(p)?),
        None => None,
    };

    // emoji mode: classes come from emoji markers, not the stored labels
    let mut dropped = 0usize;
    if mode == Mode::Emoji {
        let map_path = require(pick(args.emoji_map, cfg, "emoji-map")?, "emoji-map")?;
        let map = EmojiMap::load(&map_path)
            .with_context(|| format!("loading emoji map {}", map_path.display()))?;
        let outcome = relabel_by_emoji(&left, &map)?;
        dropped += outcome.dropped;
        if let Some(report) = pick(args.emoji_report, cfg, "emoji-report")? {
            super::write_text(
                &report,
                &render_emoji_report(&map, &outcome.corpus, outcome.dropped),
            )?;
        }
        left = outcome.corpus;
        if let Some(r) = right.take() {
            let outcome = relabel_by_emoji(&r, &map)?;
            dropped += outcome.dropped;
            right = Some(outcome.corpus);
        }
    }

    // spelling-variant preprocessing (skipped with --no-preprocess)
    let no_preprocess = cfg.switch(args.no_preprocess, "no-preprocess")?;
    let mut rewrites = 0usize;
    if !no_preprocess {
        let clusters = match pick::<PathBuf>(args.clusters, cfg, "clusters")? {
            Some(path) => ClusterMap::load(&path)
                .with_context(|| format!("loading cluster map {}", path.display()))?,
            None => {
                let emb = super::obtain_embeddings(
                    pick(args.embeddings, cfg, "embeddings")?.as_deref(),
                    &left,
                    pick_or(args.dim, cfg, "dim", 100)?,
                    Some(tc.seed),
                )?;
                let tau = pick_or(args.tau, cfg, "tau", 0.6)?;
                cluster_variants(&word_frequencies(&left), &emb, tau)?
            }
        };
        rewrites = clusters.rewrites();
        if let Some(path) = pick(args.cluster_out, cfg, "cluster-out")? {
            clusters.save(&path)?;
        }
        left = apply_clusters(&left, &clusters);
        right = right.map(|r| apply_clusters(&r, &clusters));
    }

    let right_ref: &LabeledCorpus = right.as_ref().unwrap_or(&left);
    let vocab = TrigramVocab::build(left.texts().chain(right_ref.texts()));
    let mut params = SiameseParams::init(vocab.len(), tc.e, tc.h, tc.d, tc.seed);

    let resample = cfg.switch(args.resample_per_epoch, "resample-per-epoch")?;
    let (history, n_pairs) = if resample {
        // fresh partners each epoch: compose single-epoch runs with
        // per-epoch seeds so the whole schedule stays deterministic
        let mut history = Vec::with_capacity(tc.epochs);
        let mut n_pairs = 0;
        for epoch in 0..tc.epochs {
            let epoch_seed = tc.seed.wrapping_add(epoch as u64);
            let pairs = make_pairs(&left, right_ref, &vocab, epoch_seed)?;
            n_pairs = pairs.len();
            let epoch_cfg = TrainConfig {
                epochs: 1,
                seed: epoch_seed,
                ..tc
            };
            history.extend(train(&mut params, &pairs, &epoch_cfg)?);
        }
        (history, n_pairs)
    } else {
        let pairs = make_pairs(&left, right_ref, &vocab, tc.seed)?;
        let history = train(&mut params, &pairs, &tc)?;
        (history, pairs.len())
    };

    save_model(&params, &vocab, &out)?;
    Ok(json!({
        "command": "train",
        "out": out,
        "mode": match mode { Mode::Sentiment => "sentiment", Mode::Emoji => "emoji" },
        "sentences": left.len() + if right.is_some() { right_ref.len() } else { 0 },
        "dropped": dropped,
        "preprocessed": !no_preprocess,
        "rewritten_words": rewrites,
        "pairs": n_pairs,
        "epochs": tc.epochs,
        "vocab": vocab.len(),
        "final_loss": history.last(),
    }))
}
