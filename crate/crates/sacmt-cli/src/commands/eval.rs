//! `sacmt eval` — score a trained model against a labeled test set.
//!
//! Anchor sentences define the per-class centroids (or, with `--knn`, the
//! reference points for a k-nearest-neighbors vote); test sentences are
//! projected into the sentiment space and classified by cosine similarity.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::Args;
use sacmt_core::classify::{
    compute_centroids, evaluate, render_metrics_table, CentroidClassifier, KnnClassifier,
};
use sacmt_core::corpus::Sentiment;
use sacmt_core::siamese::load_model;
use sacmt_core::variants::{apply_clusters, ClusterMap};
use serde_json::{json, Value};

use crate::config::{pick, pick_or, require, ConfigFile};

#[derive(Args)]
pub struct EvalArgs {
    /// Trained model file.
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,

    /// Labeled corpus defining the class centroids (usually the training set).
    #[arg(long, value_name = "TSV")]
    anchors: Option<PathBuf>,

    /// Labeled test corpus.
    #[arg(long, value_name = "TSV")]
    test: Option<PathBuf>,

    /// Cluster map to apply to anchors and test sentences, matching the
    /// preprocessing used at training time.
    #[arg(long, value_name = "FILE")]
    clusters: Option<PathBuf>,

    /// Classify by k-nearest anchors instead of class centroids.
    #[arg(long, value_name = "K")]
    knn: Option<usize>,

    /// Class assigned to sentences with a zero sentiment vector.
    #[arg(long, value_name = "CLASS")]
    fallback: Option<String>,

    /// Where to write the metrics (JSON).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Where to write an aligned-column metrics table.
    #[arg(long, value_name = "FILE")]
    table_out: Option<PathBuf>,

    /// Row label used in the metrics table.
    #[arg(long)]
    name: Option<String>,
}

pub fn run(args: EvalArgs, cfg: &ConfigFile) -> Result<Value> {
    let model_path = require(pick(args.model, cfg, "model")?, "model")?;
    let anchors_path = require(pick(args.anchors, cfg, "anchors")?, "anchors")?;
    let test_path = require(pick(args.test, cfg, "test")?, "test")?;
    let fallback = match pick(args.fallback, cfg, "fallback")? {
        Some(name) => Sentiment::from_str(&name)?,
        None => Sentiment::Neutral,
    };

    let (params, vocab) = load_model(&model_path)
        .with_context(|| format!("loading model {}", model_path.display()))?;
    let mut anchors = super::load_corpus(&anchors_path)?;
    let mut test = super::load_corpus(&test_path)?;
    if let Some(path) = pick::<PathBuf>(args.clusters, cfg, "clusters")? {
        let clusters = ClusterMap::load(&path)
            .with_context(|| format!("loading cluster map {}", path.display()))?;
        anchors = apply_clusters(&anchors, &clusters);
        test = apply_clusters(&test, &clusters);
    }

    let knn = pick(args.knn, cfg, "knn")?;
    let metrics = match knn {
        Some(k) => {
            let clf = KnnClassifier::from_corpus(&params, &vocab, &anchors, k)?;
            evaluate(&test, |s| {
                clf.predict_vector(&params.forward(&vocab.encode(&s.text)?)?)
            })?
        }
        None => {
            let centroids = compute_centroids(&params, &vocab, &anchors)?;
            let clf = CentroidClassifier::with_fallback(centroids, fallback);
            evaluate(&test, |s| clf.predict(&params, &vocab, s))?
        }
    };

    if let Some(path) = pick(args.out, cfg, "out")? {
        sacmt_core::io::write_json(&path, &metrics)?;
    }
    let name = pick_or(args.name, cfg, "name", "sacmt".to_string())?;
    if let Some(path) = pick(args.table_out, cfg, "table-out")? {
        super::write_text(&path, &render_metrics_table(&[(name.as_str(), &metrics)]))?;
    }
    Ok(json!({
        "command": "eval",
        "model": model_path,
        "test": test_path,
        "test_sentences": test.len(),
        "rule": match knn { Some(k) => format!("knn-{k}"), None => "centroid".to_string() },
        "accuracy": metrics.accuracy,
        "macro_precision": metrics.macro_precision,
        "macro_recall": metrics.macro_recall,
        "macro_f_score": metrics.macro_f_score,
    }))
}
