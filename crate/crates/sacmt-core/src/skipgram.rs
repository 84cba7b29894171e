//! Skip-gram word embeddings with negative sampling, trained
//! single-threaded and fully deterministically for a fixed seed.
//!
//! These vectors feed the variant-clustering preprocessor and the averaged
//! sentence-vector baseline.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::LabeledCorpus;
use crate::error::{Error, Result};
use crate::io;
use crate::textprep;

pub use crate::numcore::cosine;

/// Hyperparameters for [`train_skipgram`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkipgramConfig {
    /// Embedding dimension k.
    pub dim: usize,
    /// Context window radius.
    pub window: usize,
    /// Negative samples per (center, context) event.
    pub negatives: usize,
    pub epochs: usize,
    /// Initial learning rate, decayed linearly to a small floor.
    pub lr: f64,
    /// Words below this count are excluded from the vocabulary.
    pub min_count: usize,
    pub seed: u64,
}

impl Default for SkipgramConfig {
    fn default() -> Self {
        SkipgramConfig {
            dim: 100,
            window: 5,
            negatives: 5,
            epochs: 5,
            lr: 0.025,
            min_count: 1,
            seed: 0,
        }
    }
}

/// Trained word vectors of a fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct WordEmbeddings {
    dim: usize,
    words: Vec<String>,
    vectors: Vec<Vec<f64>>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingFile {
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

impl WordEmbeddings {
    pub fn from_vectors(dim: usize, entries: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let mut words = Vec::with_capacity(entries.len());
        let mut vectors = Vec::with_capacity(entries.len());
        let mut index = HashMap::with_capacity(entries.len());
        for (word, vec) in entries {
            if vec.len() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: vec.len(),
                });
            }
            if index.insert(word.clone(), words.len()).is_some() {
                return Err(Error::BadConfig(format!("duplicate embedded word: {word}")));
            }
            words.push(word);
            vectors.push(vec);
        }
        Ok(WordEmbeddings {
            dim,
            words,
            vectors,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Stored vector for a word; `None` for out-of-vocabulary words.
    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index.get(word).map(|&i| self.vectors[i].as_slice())
    }

    /// Words in vocabulary order (frequency-filtered first occurrence).
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = EmbeddingFile {
            dim: self.dim,
            vectors: self
                .words
                .iter()
                .cloned()
                .zip(self.vectors.iter().cloned())
                .collect(),
        };
        io::write_json(path, &file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file: EmbeddingFile = io::read_json(path)?;
        WordEmbeddings::from_vectors(file.dim, file.vectors.into_iter().collect())
    }
}

/// Train skip-gram embeddings with negative sampling.
///
/// Returns the embeddings plus the total objective value per epoch (each
/// event's loss measured just before its update). The sampling stream is
/// re-seeded identically every epoch, so per-epoch losses are sums over the
/// same finite event set and can be compared directly.
pub fn train_skipgram(
    corpus: &LabeledCorpus,
    cfg: &SkipgramConfig,
) -> Result<(WordEmbeddings, Vec<f64>)> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if cfg.dim == 0 || cfg.window == 0 {
        return Err(Error::BadConfig(
            "skip-gram dim and window must be at least 1".to_string(),
        ));
    }

    // Vocabulary in first-occurrence order, filtered by min-count.
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut first_seen: Vec<String> = Vec::new();
    for text in corpus.texts() {
        for token in textprep::tokenize(text) {
            let c = counts.entry(token.clone()).or_insert(0);
            if *c == 0 {
                first_seen.push(token);
            }
            *c += 1;
        }
    }
    let words: Vec<String> = first_seen
        .into_iter()
        .filter(|w| counts[w] >= cfg.min_count)
        .collect();
    if words.is_empty() {
        return Err(Error::BadConfig(format!(
            "no token appears at least {} times",
            cfg.min_count
        )));
    }
    let index: HashMap<&str, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_str(), i))
        .collect();

    // Unigram^0.75 noise distribution as a cumulative table.
    let noise_cdf: Vec<f64> = {
        let weights: Vec<f64> = words.iter().map(|w| (counts[w] as f64).powf(0.75)).collect();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        weights
            .iter()
            .map(|w| {
                acc += w / total;
                acc
            })
            .collect()
    };

    // Sentences as in-vocabulary word indices (out-of-vocab tokens dropped
    // before windowing, so windows stretch over them).
    let encoded: Vec<Vec<usize>> = corpus
        .texts()
        .map(|text| {
            textprep::tokenize(text)
                .iter()
                .filter_map(|t| index.get(t.as_str()).copied())
                .collect()
        })
        .collect();

    let events_per_epoch: usize = encoded
        .iter()
        .map(|s| {
            (0..s.len())
                .map(|t| (t.min(cfg.window)) + ((s.len() - 1 - t).min(cfg.window)))
                .sum::<usize>()
        })
        .sum();
    let total_events = (events_per_epoch * cfg.epochs).max(1);

    let mut init_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let half = 0.5 / cfg.dim as f64;
    let mut input: Vec<Vec<f64>> = (0..words.len())
        .map(|_| (0..cfg.dim).map(|_| init_rng.random_range(-half..half)).collect())
        .collect();
    let mut output: Vec<Vec<f64>> = vec![vec![0.0; cfg.dim]; words.len()];

    let sample_noise = |rng: &mut ChaCha8Rng| -> usize {
        let u: f64 = rng.random();
        noise_cdf.partition_point(|&c| c <= u).min(words.len() - 1)
    };

    let mut epoch_losses = Vec::with_capacity(cfg.epochs);
    let mut processed = 0usize;
    for _ in 0..cfg.epochs {
        // identical sampling stream every epoch: same negatives per event
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
        let mut epoch_loss = 0.0;
        for sentence in &encoded {
            for t in 0..sentence.len() {
                let center = sentence[t];
                let lo = t.saturating_sub(cfg.window);
                let hi = (t + cfg.window).min(sentence.len() - 1);
                for (ctx_pos, &context) in sentence.iter().enumerate().take(hi + 1).skip(lo) {
                    if ctx_pos == t {
                        continue;
                    }
                    let lr = cfg.lr
                        * (1.0 - processed as f64 / total_events as f64).max(1e-4);
                    processed += 1;

                    let mut d_center = vec![0.0; cfg.dim];
                    // positive event
                    let s = dot(&input[center], &output[context]);
                    epoch_loss += softplus(-s);
                    let g = sigmoid(s) - 1.0;
                    for k in 0..cfg.dim {
                        d_center[k] += g * output[context][k];
                    }
                    let center_vec = input[center].clone();
                    for (o, &c) in output[context].iter_mut().zip(&center_vec) {
                        *o -= lr * g * c;
                    }
                    // negative events
                    for _ in 0..cfg.negatives {
                        let neg = sample_noise(&mut rng);
                        if neg == context {
                            continue;
                        }
                        let s = dot(&input[center], &output[neg]);
                        epoch_loss += softplus(s);
                        let g = sigmoid(s);
                        for k in 0..cfg.dim {
                            d_center[k] += g * output[neg][k];
                        }
                        for (o, &c) in output[neg].iter_mut().zip(&center_vec) {
                            *o -= lr * g * c;
                        }
                    }
                    for (v, d) in input[center].iter_mut().zip(&d_center) {
                        *v -= lr * d;
                    }
                }
            }
        }
        epoch_losses.push(epoch_loss);
    }

    let embeddings = WordEmbeddings::from_vectors(
        cfg.dim,
        words.into_iter().zip(input).collect(),
    )?;
    Ok((embeddings, epoch_losses))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Numerically stable `ln(1 + e^x)`.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}
