//! Averaged-sentence-vector baseline: a sentence is the mean of its word
//! embeddings, classified by L2-regularized multinomial logistic regression.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Sentiment;
use crate::error::{Error, Result};
use crate::io;
use crate::numcore::Matrix;
use crate::skipgram::WordEmbeddings;
use crate::textprep::tokenize;

/// Mean of the embedding vectors of the sentence's words. Words without an
/// embedding are excluded from both the sum and the count; if no word is
/// embedded the result is the zero vector. Occurrences count separately, and
/// the sum runs in sorted-token order so the result is bit-identical under
/// any reordering of the words.
pub fn sentence_vector(text: &str, emb: &WordEmbeddings) -> Vec<f64> {
    let mut tokens = tokenize(text);
    tokens.sort_unstable();
    let mut sum = vec![0.0; emb.dim()];
    let mut count = 0usize;
    for t in &tokens {
        if let Some(v) = emb.vector(t) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
            count += 1;
        }
    }
    if count > 0 {
        for s in sum.iter_mut() {
            *s /= count as f64;
        }
    }
    sum
}

/// Multinomial logistic regression over the three sentiment classes.
/// Row `c` of `weights` scores class `Sentiment::ALL[c]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRegModel {
    weights: Matrix,
    bias: [f64; 3],
}

impl LogRegModel {
    pub fn input_dim(&self) -> usize {
        self.weights.cols()
    }

    fn scores(&self, x: &[f64]) -> [f64; 3] {
        let z = self.weights.matvec(x);
        [z[0] + self.bias[0], z[1] + self.bias[1], z[2] + self.bias[2]]
    }
}

/// Gradient-descent settings for [`train_logreg`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogRegConfig {
    /// L2 penalty coefficient on the weight matrix (biases unregularized).
    pub l2: f64,
    pub epochs: usize,
    pub lr: f64,
    pub seed: u64,
}

impl Default for LogRegConfig {
    fn default() -> Self {
        LogRegConfig {
            l2: 0.001,
            epochs: 300,
            lr: 0.5,
            seed: 0,
        }
    }
}

impl LogRegConfig {
    fn validate(&self) -> Result<()> {
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return Err(Error::BadConfig(format!(
                "l2 penalty must be finite and nonnegative, got {}",
                self.l2
            )));
        }
        if !(self.lr.is_finite() && self.lr > 0.0) {
            return Err(Error::BadConfig(format!(
                "learning rate must be finite and positive, got {}",
                self.lr
            )));
        }
        if self.epochs == 0 {
            return Err(Error::BadConfig("epochs must be at least 1".to_string()));
        }
        Ok(())
    }
}

fn softmax(scores: &[f64; 3]) -> [f64; 3] {
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps = scores.map(|s| (s - max).exp());
    let total: f64 = exps.iter().sum();
    exps.map(|e| e / total)
}

/// Fit by full-batch gradient descent on mean cross-entropy plus
/// `l2/2 · ‖W‖²`. Returns the model and the per-epoch loss measured before
/// each update. Deterministic for a fixed seed.
pub fn train_logreg(
    xs: &[Vec<f64>],
    ys: &[Sentiment],
    cfg: &LogRegConfig,
) -> Result<(LogRegModel, Vec<f64>)> {
    cfg.validate()?;
    if xs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if xs.len() != ys.len() {
        return Err(Error::DimMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    let dim = xs[0].len();
    for x in xs {
        if x.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: x.len(),
            });
        }
    }
    let mut seen = [false; 3];
    for y in ys {
        seen[y.index()] = true;
    }
    if seen.iter().filter(|&&s| s).count() < 2 {
        return Err(Error::BadConfig(
            "training data contains a single class; nothing to separate".to_string(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut model = LogRegModel {
        weights: Matrix::uniform(3, dim, -0.01, 0.01, &mut rng),
        bias: [0.0; 3],
    };
    let n = xs.len() as f64;
    let mut history = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        let mut loss = 0.0;
        let mut grad_w = Matrix::zeros(3, dim);
        let mut grad_b = [0.0; 3];
        for (x, y) in xs.iter().zip(ys) {
            let probs = softmax(&model.scores(x));
            loss -= probs[y.index()].max(f64::MIN_POSITIVE).ln();
            for c in 0..3 {
                let delta = probs[c] - if c == y.index() { 1.0 } else { 0.0 };
                for (g, xi) in grad_w.row_mut(c).iter_mut().zip(x) {
                    *g += delta * xi;
                }
                grad_b[c] += delta;
            }
        }
        loss /= n;
        let penalty: f64 = model.weights.data().iter().map(|w| w * w).sum();
        loss += cfg.l2 / 2.0 * penalty;
        if !loss.is_finite() {
            return Err(Error::NonFinite(format!("regression loss at epoch {epoch}")));
        }
        history.push(loss);
        for (w, g) in model
            .weights
            .data_mut()
            .iter_mut()
            .zip(grad_w.data())
        {
            *w -= cfg.lr * (g / n + cfg.l2 * *w);
        }
        for (b, g) in model.bias.iter_mut().zip(grad_b) {
            *b -= cfg.lr * g / n;
        }
    }
    Ok((model, history))
}

/// Class with the highest score; exact ties go to the lower class in the
/// order Negative < Neutral < Positive.
pub fn predict_logreg(model: &LogRegModel, x: &[f64]) -> Result<Sentiment> {
    if x.len() != model.input_dim() {
        return Err(Error::DimMismatch {
            expected: model.input_dim(),
            got: x.len(),
        });
    }
    let scores = model.scores(x);
    let mut best = (Sentiment::Negative, f64::NEG_INFINITY);
    for class in Sentiment::ALL {
        if scores[class.index()] > best.1 {
            best = (class, scores[class.index()]);
        }
    }
    Ok(best.0)
}

const BASELINE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct BaselineFile {
    version: u32,
    model: LogRegModel,
}

pub fn save_baseline(model: &LogRegModel, path: &std::path::Path) -> Result<()> {
    io::write_json(
        path,
        &BaselineFile {
            version: BASELINE_VERSION,
            model: model.clone(),
        },
    )
}

pub fn load_baseline(path: &std::path::Path) -> Result<LogRegModel> {
    let file: BaselineFile = io::read_json(path)?;
    if file.version != BASELINE_VERSION {
        return Err(Error::VersionMismatch {
            found: file.version,
            expected: BASELINE_VERSION,
        });
    }
    if file.model.weights.rows() != 3 || !file.model.bias.iter().all(|b| b.is_finite()) {
        return Err(Error::ModelParse {
            path: path.to_path_buf(),
            msg: "expected three finite class rows".to_string(),
        });
    }
    Ok(file.model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skipgram::{train_skipgram, SkipgramConfig};
    use rand::Rng;

    fn embeddings(entries: &[(&str, Vec<f64>)]) -> WordEmbeddings {
        WordEmbeddings::from_vectors(
            entries[0].1.len(),
            entries
                .iter()
                .map(|(w, v)| (w.to_string(), v.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn sentence_vector_is_the_mean_of_embedded_words() {
        let emb = embeddings(&[("accha", vec![1.0, 2.0]), ("din", vec![3.0, 4.0])]);
        assert_eq!(sentence_vector("accha din", &emb), vec![2.0, 3.0]);
        assert_eq!(sentence_vector("accha", &emb), vec![1.0, 2.0]);
    }

    #[test]
    fn unembedded_words_are_skipped_entirely() {
        let emb = embeddings(&[("accha", vec![1.0, 2.0])]);
        // "xyz" has no vector: mean over the one embedded word only
        assert_eq!(sentence_vector("accha xyz", &emb), vec![1.0, 2.0]);
        assert_eq!(sentence_vector("xyz pqr", &emb), vec![0.0, 0.0]);
    }

    #[test]
    fn sentence_vector_ignores_word_order_exactly() {
        let emb = embeddings(&[
            ("a", vec![0.1, 0.7]),
            ("b", vec![0.3, 0.2]),
            ("c", vec![0.9, 0.4]),
        ]);
        let forward = sentence_vector("a b c b", &emb);
        let shuffled = sentence_vector("b c a b", &emb);
        assert_eq!(forward, shuffled);
    }

    fn two_clusters(n_per: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<Sentiment>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..2 * n_per {
            let center = if i % 2 == 0 { 2.0 } else { -2.0 };
            xs.push(vec![
                center + rng.random_range(-0.5..0.5),
                rng.random_range(-0.5..0.5),
            ]);
            ys.push(if i % 2 == 0 {
                Sentiment::Positive
            } else {
                Sentiment::Negative
            });
        }
        (xs, ys)
    }

    #[test]
    fn separable_clusters_are_fit_almost_perfectly() {
        let (xs, ys) = two_clusters(20, 11);
        let cfg = LogRegConfig {
            l2: 0.0,
            epochs: 500,
            lr: 0.5,
            seed: 0,
        };
        let (model, _) = train_logreg(&xs, &ys, &cfg).unwrap();
        let correct = xs
            .iter()
            .zip(&ys)
            .filter(|(x, y)| predict_logreg(&model, x).unwrap() == **y)
            .count();
        assert!(
            correct as f64 / xs.len() as f64 >= 0.99,
            "only {correct}/{} correct",
            xs.len()
        );
    }

    #[test]
    fn huge_l2_penalty_shrinks_the_weights() {
        let (xs, ys) = two_clusters(20, 3);
        let cfg = LogRegConfig {
            l2: 1e6,
            epochs: 300,
            lr: 1e-7,
            seed: 0,
        };
        let (model, _) = train_logreg(&xs, &ys, &cfg).unwrap();
        let norm: f64 = model
            .weights
            .data()
            .iter()
            .map(|w| w * w)
            .sum::<f64>()
            .sqrt();
        assert!(norm < 1e-2, "weight norm {norm} not shrunk");
    }

    #[test]
    fn training_is_deterministic_per_seed() {
        let (xs, ys) = two_clusters(10, 5);
        let cfg = LogRegConfig::default();
        let (a, la) = train_logreg(&xs, &ys, &cfg).unwrap();
        let (b, lb) = train_logreg(&xs, &ys, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(la, lb);
        let other = LogRegConfig { seed: 1, ..cfg };
        let (c, _) = train_logreg(&xs, &ys, &other).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn loss_never_increases_under_a_small_learning_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let xs: Vec<Vec<f64>> = (0..50)
            .map(|_| (0..4).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let ys: Vec<Sentiment> = (0..50)
            .map(|i| Sentiment::ALL[i % 3])
            .collect();
        let cfg = LogRegConfig {
            l2: 0.001,
            epochs: 100,
            lr: 0.05,
            seed: 2,
        };
        let (_, history) = train_logreg(&xs, &ys, &cfg).unwrap();
        for pair in history.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-9,
                "loss rose from {} to {}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn single_class_training_data_is_rejected() {
        let xs = vec![vec![1.0], vec![2.0]];
        let ys = vec![Sentiment::Positive, Sentiment::Positive];
        assert!(train_logreg(&xs, &ys, &LogRegConfig::default()).is_err());
    }

    #[test]
    fn zero_model_predicts_the_lowest_class() {
        let model = LogRegModel {
            weights: Matrix::zeros(3, 2),
            bias: [0.0; 3],
        };
        assert_eq!(
            predict_logreg(&model, &[0.3, -0.8]).unwrap(),
            Sentiment::Negative
        );
        assert!(predict_logreg(&model, &[1.0]).is_err());
    }

    #[test]
    fn predictions_ignore_a_common_score_shift() {
        let (xs, ys) = two_clusters(10, 7);
        let (model, _) = train_logreg(&xs, &ys, &LogRegConfig::default()).unwrap();
        let shifted = LogRegModel {
            weights: model.weights.clone(),
            bias: [model.bias[0] + 5.0, model.bias[1] + 5.0, model.bias[2] + 5.0],
        };
        for x in &xs {
            assert_eq!(
                predict_logreg(&model, x).unwrap(),
                predict_logreg(&shifted, x).unwrap()
            );
        }
    }

    #[test]
    fn model_file_round_trips() {
        let (xs, ys) = two_clusters(5, 1);
        let (model, _) = train_logreg(&xs, &ys, &LogRegConfig::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("baseline.json");
        save_baseline(&model, &path).unwrap();
        assert_eq!(load_baseline(&path).unwrap(), model);
    }

    #[test]
    fn pipeline_from_trained_embeddings_classifies_held_out_text() {
        // tiny smoke check that the pieces compose: embeddings from a toy
        // corpus, averaged vectors, regression fit on those vectors
        let lines: Vec<String> = (0..10)
            .flat_map(|i| {
                vec![
                    format!("p{i}\tpositive\tbahut accha din hai"),
                    format!("p{i}x\tnegative\tbahut bura din tha"),
                ]
            })
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("toy.tsv");
        std::fs::write(&path, lines.join("\n")).unwrap();
        let corpus = crate::corpus::load_dataset(&path).unwrap();
        let cfg = SkipgramConfig {
            dim: 8,
            epochs: 3,
            ..SkipgramConfig::default()
        };
        let (emb, _) = train_skipgram(&corpus, &cfg).unwrap();
        let xs: Vec<Vec<f64>> = corpus
            .iter()
            .map(|s| sentence_vector(&s.text, &emb))
            .collect();
        let ys: Vec<Sentiment> = corpus.iter().map(|s| s.label).collect();
        let (model, _) = train_logreg(&xs, &ys, &LogRegConfig::default()).unwrap();
        let v = sentence_vector("accha din", &emb);
        // prediction exists and is one of the trained classes
        let got = predict_logreg(&model, &v).unwrap();
        assert!(got == Sentiment::Positive || got == Sentiment::Negative);
    }
}
