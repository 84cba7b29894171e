//! Turning the learned sentiment space into a 3-class classifier, plus the
//! evaluation metrics and report tables.
//!
//! The default inference rule is nearest centroid by cosine: each class is
//! represented by the mean sentiment vector of its anchor sentences. A
//! k-nearest-neighbors rule over the raw anchor vectors is available as an
//! alternative.

use serde::{Deserialize, Serialize};

use crate::corpus::{LabeledCorpus, Sentence, Sentiment};
use crate::error::{Error, Result};
use crate::numcore::cosine;
use crate::siamese::SiameseParams;
use crate::textprep::TrigramVocab;

/// One mean sentiment vector per class, indexed by [`Sentiment::index`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Centroids {
    pub by_class: [Vec<f64>; 3],
}

/// Average per-class vectors. Every class must contribute at least one
/// vector and all vectors must share one dimension.
pub fn centroids_from_vectors(items: &[(Vec<f64>, Sentiment)]) -> Result<Centroids> {
    let dim = items
        .first()
        .map(|(v, _)| v.len())
        .ok_or(Error::EmptyCorpus)?;
    let mut sums = [vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]];
    let mut counts = [0usize; 3];
    for (v, label) in items {
        if v.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        for (s, x) in sums[label.index()].iter_mut().zip(v) {
            *s += x;
        }
        counts[label.index()] += 1;
    }
    for class in Sentiment::ALL {
        let n = counts[class.index()];
        if n == 0 {
            return Err(Error::ClassUnsatisfiable {
                class: class.to_string(),
                msg: "no anchor sentences for this class".to_string(),
            });
        }
        for s in sums[class.index()].iter_mut() {
            *s /= n as f64;
        }
    }
    Ok(Centroids { by_class: sums })
}

/// Encode every anchor sentence and average per class.
pub fn compute_centroids(
    p: &SiameseParams,
    vocab: &TrigramVocab,
    anchors: &LabeledCorpus,
) -> Result<Centroids> {
    let items: Vec<(Vec<f64>, Sentiment)> = anchors
        .iter()
        .map(|s| Ok((p.forward(&vocab.encode(&s.text)?)?, s.label)))
        .collect::<Result<_>>()?;
    centroids_from_vectors(&items)
}

/// Nearest-centroid-by-cosine classifier. Sentences whose sentiment vector
/// is zero (no direction to compare) fall back to a fixed class —
/// by default Neutral, the majority class of typical social-media corpora.
#[derive(Debug, Clone)]
pub struct CentroidClassifier {
    centroids: Centroids,
    fallback: Sentiment,
}

impl CentroidClassifier {
    pub fn new(centroids: Centroids) -> Self {
        CentroidClassifier {
            centroids,
            fallback: Sentiment::Neutral,
        }
    }

    pub fn with_fallback(centroids: Centroids, fallback: Sentiment) -> Self {
        CentroidClassifier { centroids, fallback }
    }

    /// Class of the most cosine-similar centroid; exact ties go to the
    /// lower class in the order Negative < Neutral < Positive.
    pub fn predict_vector(&self, v: &[f64]) -> Result<Sentiment> {
        if crate::numcore::norm(v) < 1e-12 {
            return Ok(self.fallback);
        }
        let mut best = (Sentiment::Negative, f64::NEG_INFINITY);
        for class in Sentiment::ALL {
            let sim = cosine(v, &self.centroids.by_class[class.index()])?;
            if sim > best.1 {
                best = (class, sim);
            }
        }
        Ok(best.0)
    }

    pub fn predict(
        &self,
        p: &SiameseParams,
        vocab: &TrigramVocab,
        sentence: &Sentence,
    ) -> Result<Sentiment> {
        self.predict_vector(&p.forward(&vocab.encode(&sentence.text)?)?)
    }
}

/// k-nearest-neighbors over the anchor vectors, majority vote by cosine.
#[derive(Debug, Clone)]
pub struct KnnClassifier {
    anchors: Vec<(Vec<f64>, Sentiment)>,
    k: usize,
    fallback: Sentiment,
}

impl KnnClassifier {
    pub fn new(anchors: Vec<(Vec<f64>, Sentiment)>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadConfig("k must be at least 1".to_string()));
        }
        if anchors.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        Ok(KnnClassifier {
            anchors,
            k,
            fallback: Sentiment::Neutral,
        })
    }

    pub fn from_corpus(
        p: &SiameseParams,
        vocab: &TrigramVocab,
        anchors: &LabeledCorpus,
        k: usize,
    ) -> Result<Self> {
        let items = anchors
            .iter()
            .map(|s| Ok((p.forward(&vocab.encode(&s.text)?)?, s.label)))
            .collect::<Result<_>>()?;
        KnnClassifier::new(items, k)
    }

    /// Majority class among the k most-similar anchors; similarity ties
    /// keep the earlier anchor, vote ties go to the lower class.
    pub fn predict_vector(&self, v: &[f64]) -> Result<Sentiment> {
        if crate::numcore::norm(v) < 1e-12 {
            return Ok(self.fallback);
        }
        let mut sims: Vec<(f64, usize)> = self
            .anchors
            .iter()
            .enumerate()
            .map(|(i, (a, _))| Ok((cosine(v, a)?, i)))
            .collect::<Result<_>>()?;
        sims.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        let mut votes = [0usize; 3];
        for &(_, i) in sims.iter().take(self.k) {
            votes[self.anchors[i].1.index()] += 1;
        }
        let best = *votes.iter().max().unwrap();
        Ok(Sentiment::ALL
            .into_iter()
            .find(|c| votes[c.index()] == best)
            .unwrap())
    }
}

/// Precision/recall/F for one class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f_score: f64,
}

/// Full evaluation record: accuracy, per-class and macro-averaged
/// precision/recall/F, and the 3×3 confusion matrix
/// (`confusion[gold][predicted]`, classes in Negative/Neutral/Positive
/// order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub negative: ClassMetrics,
    pub neutral: ClassMetrics,
    pub positive: ClassMetrics,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f_score: f64,
    pub confusion: [[usize; 3]; 3],
}

impl Metrics {
    pub fn class(&self, c: Sentiment) -> ClassMetrics {
        match c {
            Sentiment::Negative => self.negative,
            Sentiment::Neutral => self.neutral,
            Sentiment::Positive => self.positive,
        }
    }

    /// Build all derived numbers from a confusion matrix.
    pub fn from_confusion(confusion: [[usize; 3]; 3]) -> Result<Metrics> {
        let total: usize = confusion.iter().flatten().sum();
        if total == 0 {
            return Err(Error::EmptyCorpus);
        }
        let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        let mut per_class = [ClassMetrics { precision: 0.0, recall: 0.0, f_score: 0.0 }; 3];
        for c in 0..3 {
            let tp = confusion[c][c];
            let gold: usize = confusion[c].iter().sum();
            let predicted: usize = (0..3).map(|g| confusion[g][c]).sum();
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, gold);
            let f_score = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            per_class[c] = ClassMetrics { precision, recall, f_score };
        }
        let trace: usize = (0..3).map(|c| confusion[c][c]).sum();
        Ok(Metrics {
            accuracy: trace as f64 / total as f64,
            negative: per_class[0],
            neutral: per_class[1],
            positive: per_class[2],
            macro_precision: per_class.iter().map(|m| m.precision).sum::<f64>() / 3.0,
            macro_recall: per_class.iter().map(|m| m.recall).sum::<f64>() / 3.0,
            macro_f_score: per_class.iter().map(|m| m.f_score).sum::<f64>() / 3.0,
            confusion,
        })
    }
}

/// Run a predictor over a test corpus and tabulate the results.
pub fn evaluate<F>(test: &LabeledCorpus, mut predict: F) -> Result<Metrics>
where
    F: FnMut(&Sentence) -> Result<Sentiment>,
{
    if test.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut confusion = [[0usize; 3]; 3];
    for s in test.iter() {
        let predicted = predict(s)?;
        confusion[s.label.index()][predicted.index()] += 1;
    }
    Metrics::from_confusion(confusion)
}

fn format_row(cells: &[String], widths: &[usize]) -> String {
    let mut line = String::new();
    for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
        if i > 0 {
            line.push_str("  ");
        }
        line.push_str(cell);
        if i + 1 < cells.len() {
            line.extend(std::iter::repeat_n(' ', w.saturating_sub(cell.chars().count())));
        }
    }
    line.trim_end().to_string()
}

fn metric_cells(m: &Metrics) -> [String; 4] {
    [
        format!("{:.1}%", m.accuracy * 100.0),
        format!("{:.3}", m.macro_precision),
        format!("{:.3}", m.macro_recall),
        format!("{:.3}", m.macro_f_score),
    ]
}

/// Aligned text table of evaluation results, one row per model:
/// `Models  Accuracy  Precision  Recall  F-score`.
pub fn render_metrics_table(rows: &[(&str, &Metrics)]) -> String {
    let header: Vec<String> = ["Models", "Accuracy", "Precision", "Recall", "F-score"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = vec![header];
    for (name, m) in rows {
        let mut row = vec![name.to_string()];
        row.extend(metric_cells(m));
        table.push(row);
    }
    let mut widths = vec![0usize; 5];
    for row in &table {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &table {
        out.push_str(&format_row(row, &widths));
        out.push('\n');
    }
    out
}

/// Aligned text table comparing runs with and without variant
/// preprocessing, mirroring the paired-column report layout.
pub fn render_ablation_table(rows: &[(&str, &Metrics, &Metrics)]) -> String {
    let labels = ["Accuracy", "Precision", "Recall", "F-score"];
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut sub = vec![String::new()];
    sub.extend(labels.iter().map(|s| s.to_string()));
    sub.extend(labels.iter().map(|s| s.to_string()));
    table.push(sub);
    for (name, with, without) in rows {
        let mut row = vec![name.to_string()];
        row.extend(metric_cells(with));
        row.extend(metric_cells(without));
        table.push(row);
    }
    let mut widths = vec![0usize; 9];
    for row in &table {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    // group header spanning the two four-column halves
    let left_width = widths[1..5].iter().sum::<usize>() + 3 * 2;
    out.push_str(&format_row(
        &[
            " ".repeat(widths[0]),
            format!("{:<left_width$}", "With Preprocessing"),
            "Without Preprocessing".to_string(),
        ],
        &[widths[0], left_width, 0],
    ));
    out.push('\n');
    let mut first = vec!["Models".to_string()];
    first.extend(table[0][1..].iter().cloned());
    out.push_str(&format_row(&first, &widths));
    out.push('\n');
    for row in &table[1..] {
        out.push_str(&format_row(row, &widths));
        out.push('\n');
    }
    out
}
