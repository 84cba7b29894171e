//! Mini-batch gradient descent on the contrastive objective.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{apply_gradients, batch_gradients, Pair, SiameseParams};
use crate::error::{Error, Result};

/// Training hyperparameters.
///
/// The objective is a *sum* over each batch, so the effective step size
/// scales with `batch_size`; the default `lr` is tuned for batches of 32.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Contrastive margin, strictly between 0 and 1.
    pub margin: f64,
    /// Sentiment-space dimension.
    pub d: usize,
    /// LSTM hidden dimension per direction.
    pub h: usize,
    /// Trigram-embedding dimension.
    pub e: usize,
    pub lr: f64,
    pub batch_size: usize,
    pub epochs: usize,
    pub seed: u64,
    /// Gradients are rescaled when their global L2 norm exceeds this.
    pub clip_norm: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            margin: 0.5,
            d: 128,
            h: 64,
            e: 64,
            lr: 0.01,
            batch_size: 32,
            epochs: 30,
            seed: 0,
            clip_norm: 5.0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.margin > 0.0 && self.margin < 1.0) {
            return Err(Error::BadConfig(format!(
                "margin must be strictly between 0 and 1, got {}",
                self.margin
            )));
        }
        if self.d == 0 || self.h == 0 || self.e == 0 {
            return Err(Error::BadConfig(
                "dimensions d, h, e must be at least 1".to_string(),
            ));
        }
        if !self.lr.is_finite() || self.lr < 0.0 {
            return Err(Error::BadConfig(format!(
                "learning rate must be finite and nonnegative, got {}",
                self.lr
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::BadConfig("batch size must be at least 1".to_string()));
        }
        if !self.clip_norm.is_finite() || self.clip_norm <= 0.0 {
            return Err(Error::BadConfig(format!(
                "clip norm must be positive, got {}",
                self.clip_norm
            )));
        }
        Ok(())
    }
}

/// Train in place with seeded per-epoch shuffling and global-norm gradient
/// clipping. Returns the total training loss of every epoch (each batch
/// measured just before its update).
pub fn train(p: &mut SiameseParams, pairs: &[Pair], cfg: &TrainConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    if pairs.is_empty() {
        return Err(Error::BadConfig("no training pairs".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    let mut history = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        order.shuffle(&mut rng);
        let mut epoch_loss = 0.0;
        for (batch_idx, chunk) in order.chunks(cfg.batch_size).enumerate() {
            let batch: Vec<Pair> = chunk.iter().map(|&i| pairs[i].clone()).collect();
            let (loss, mut grads) = batch_gradients(p, &batch, cfg.margin)?;
            if !loss.is_finite() {
                return Err(Error::NonFinite(format!(
                    "training loss at epoch {epoch}, batch {batch_idx}"
                )));
            }
            let norm = grads.global_norm();
            if norm > cfg.clip_norm {
                grads.scale(cfg.clip_norm / norm);
            }
            apply_gradients(p, &grads, cfg.lr);
            epoch_loss += loss;
        }
        history.push(epoch_loss);
    }
    Ok(history)
}
