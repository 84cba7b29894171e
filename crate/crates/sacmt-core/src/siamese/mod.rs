//! The twin-encoder network: one shared parameter set encodes both sides
//! of every sentence pair into a nonnegative sentiment space, trained with
//! a contrastive cosine loss.

mod model_io;
mod pairs;
mod train;

pub use model_io::{load_model, save_model};
pub use pairs::{make_pairs, Pair, PairLabel};
pub use train::{train, TrainConfig};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numcore::{
    bilstm_forward, concat, cosine, lstm_backward, BiLstmCache, EmbeddingTable, LstmGrads,
    LstmParams, Matrix, ProjectionGrads, ProjectionParams,
};
use crate::textprep::TrigramSeq;

/// The single shared parameter set. Both twins are this one function:
/// embedding lookup → bidirectional LSTM → dense+ReLU projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiameseParams {
    pub embedding: EmbeddingTable,
    pub fw: LstmParams,
    pub bw: LstmParams,
    pub proj: ProjectionParams,
}

impl SiameseParams {
    /// Seeded random initialization for a trigram vocabulary of size
    /// `vocab` (ids `0..=vocab`), embedding dim `e`, hidden dim `h`, and
    /// sentiment-space dim `d`.
    pub fn init(vocab: usize, e: usize, h: usize, d: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SiameseParams {
            embedding: EmbeddingTable::init(vocab, e, &mut rng),
            fw: LstmParams::init(e, h, &mut rng),
            bw: LstmParams::init(e, h, &mut rng),
            proj: ProjectionParams::init(d, 2 * h, &mut rng),
        }
    }

    pub fn zeros(vocab: usize, e: usize, h: usize, d: usize) -> Self {
        SiameseParams {
            embedding: EmbeddingTable::zeros(vocab, e),
            fw: LstmParams::zeros(e, h),
            bw: LstmParams::zeros(e, h),
            proj: ProjectionParams::zeros(d, 2 * h),
        }
    }

    pub fn vocab_size(&self) -> usize {
        self.embedding.vocab_size()
    }

    pub fn embed_dim(&self) -> usize {
        self.embedding.dim()
    }

    pub fn hidden_dim(&self) -> usize {
        self.fw.hidden_dim()
    }

    pub fn out_dim(&self) -> usize {
        self.proj.out_dim()
    }

    /// Map one sequence into the sentiment space (every coordinate ≥ 0).
    pub fn forward(&self, seq: &TrigramSeq) -> Result<Vec<f64>> {
        Ok(self.forward_cached(seq)?.output)
    }

    fn forward_cached(&self, seq: &TrigramSeq) -> Result<ForwardCache> {
        let bi = bilstm_forward(&self.fw, &self.bw, &self.embedding, seq)?;
        let z = concat(bi.fw.final_hidden(), bi.bw.final_hidden());
        let output = self.proj.forward(&z)?;
        Ok(ForwardCache {
            ids: seq.ids.clone(),
            bi,
            z,
            output,
        })
    }

    /// Euclidean distance between two sentences in the sentiment space.
    /// A diagnostic quantity only; training minimizes the cosine-based
    /// [`pair_loss`].
    pub fn energy(&self, a: &TrigramSeq, b: &TrigramSeq) -> Result<f64> {
        let va = self.forward(a)?;
        let vb = self.forward(b)?;
        Ok(va
            .iter()
            .zip(&vb)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt())
    }

    /// All parameters as one flat vector (embedding, forward LSTM,
    /// backward LSTM, projection) — the layout [`SiameseGrads::flatten`]
    /// mirrors.
    pub fn flatten(&self) -> Vec<f64> {
        let mut theta = Vec::new();
        theta.extend_from_slice(self.embedding.table.data());
        for lstm in [&self.fw, &self.bw] {
            theta.extend_from_slice(lstm.w_ih.data());
            theta.extend_from_slice(lstm.w_hh.data());
            theta.extend_from_slice(&lstm.bias);
        }
        theta.extend_from_slice(self.proj.w.data());
        theta.extend_from_slice(&self.proj.b);
        theta
    }

    /// Overwrite all parameters from a flat vector laid out as in
    /// [`SiameseParams::flatten`].
    pub fn assign_flat(&mut self, theta: &[f64]) -> Result<()> {
        let expected = self.flatten().len();
        if theta.len() != expected {
            return Err(Error::DimMismatch {
                expected,
                got: theta.len(),
            });
        }
        let mut offset = 0;
        let mut take = |dst: &mut [f64]| {
            dst.copy_from_slice(&theta[offset..offset + dst.len()]);
            offset += dst.len();
        };
        take(self.embedding.table.data_mut());
        for lstm in [&mut self.fw, &mut self.bw] {
            take(lstm.w_ih.data_mut());
            take(lstm.w_hh.data_mut());
            take(&mut lstm.bias);
        }
        take(self.proj.w.data_mut());
        take(&mut self.proj.b);
        Ok(())
    }
}

struct ForwardCache {
    ids: Vec<u32>,
    bi: BiLstmCache,
    z: Vec<f64>,
    output: Vec<f64>,
}

/// Gradients for every field of [`SiameseParams`].
#[derive(Debug, Clone)]
pub struct SiameseGrads {
    pub embedding: Matrix,
    pub fw: LstmGrads,
    pub bw: LstmGrads,
    pub proj: ProjectionGrads,
}

impl SiameseGrads {
    pub fn zeros_like(p: &SiameseParams) -> Self {
        SiameseGrads {
            embedding: Matrix::zeros(p.vocab_size() + 1, p.embed_dim()),
            fw: LstmGrads::zeros(p.embed_dim(), p.hidden_dim()),
            bw: LstmGrads::zeros(p.embed_dim(), p.hidden_dim()),
            proj: ProjectionGrads {
                w: Matrix::zeros(p.out_dim(), 2 * p.hidden_dim()),
                b: vec![0.0; p.out_dim()],
            },
        }
    }

    fn chunks(&self) -> impl Iterator<Item = &[f64]> {
        [
            self.embedding.data(),
            self.fw.w_ih.data(),
            self.fw.w_hh.data(),
            self.fw.bias.as_slice(),
            self.bw.w_ih.data(),
            self.bw.w_hh.data(),
            self.bw.bias.as_slice(),
            self.proj.w.data(),
            self.proj.b.as_slice(),
        ]
        .into_iter()
    }

    fn chunks_mut(&mut self) -> [&mut [f64]; 9] {
        [
            self.embedding.data_mut(),
            self.fw.w_ih.data_mut(),
            self.fw.w_hh.data_mut(),
            self.fw.bias.as_mut_slice(),
            self.bw.w_ih.data_mut(),
            self.bw.w_hh.data_mut(),
            self.bw.bias.as_mut_slice(),
            self.proj.w.data_mut(),
            self.proj.b.as_mut_slice(),
        ]
    }

    /// Same layout as [`SiameseParams::flatten`].
    pub fn flatten(&self) -> Vec<f64> {
        let mut g = Vec::new();
        for chunk in self.chunks() {
            g.extend_from_slice(chunk);
        }
        g
    }

    /// L2 norm over every coordinate of every gradient.
    pub fn global_norm(&self) -> f64 {
        self.chunks()
            .map(|c| c.iter().map(|v| v * v).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&mut self, factor: f64) {
        for chunk in self.chunks_mut() {
            for v in chunk {
                *v *= factor;
            }
        }
    }
}

/// Apply one gradient-descent step: `θ ← θ − lr·g`.
pub fn apply_gradients(p: &mut SiameseParams, g: &SiameseGrads, lr: f64) {
    let updates = [
        (p.embedding.table.data_mut(), g.embedding.data()),
        (p.fw.w_ih.data_mut(), g.fw.w_ih.data()),
        (p.fw.w_hh.data_mut(), g.fw.w_hh.data()),
        (p.fw.bias.as_mut_slice(), g.fw.bias.as_slice()),
        (p.bw.w_ih.data_mut(), g.bw.w_ih.data()),
        (p.bw.w_hh.data_mut(), g.bw.w_hh.data()),
        (p.bw.bias.as_mut_slice(), g.bw.bias.as_slice()),
        (p.proj.w.data_mut(), g.proj.w.data()),
        (p.proj.b.as_mut_slice(), g.proj.b.as_slice()),
    ];
    for (theta, grad) in updates {
        for (t, gv) in theta.iter_mut().zip(grad) {
            *t -= lr * gv;
        }
    }
}

/// Contrastive cosine loss on two sentiment vectors:
/// `1 − cos` for same-class pairs, `max(0, cos − m)` for different-class
/// pairs. Always ≥ 0; the margin must lie strictly inside (0, 1).
pub fn pair_loss(a: &[f64], b: &[f64], y: PairLabel, m: f64) -> Result<f64> {
    check_margin(m)?;
    let c = cosine(a, b)?;
    Ok(match y {
        PairLabel::Same => 1.0 - c,
        PairLabel::Different => (c - m).max(0.0),
    })
}

fn check_margin(m: f64) -> Result<()> {
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::BadConfig(format!(
            "margin must be strictly between 0 and 1, got {m}"
        )));
    }
    Ok(())
}

/// d(loss)/d(cos) for one pair. The hinge is inactive at `cos == m`; the
/// subgradient there is 0.
fn loss_dcos(c: f64, y: PairLabel, m: f64) -> f64 {
    match y {
        PairLabel::Same => -1.0,
        PairLabel::Different => {
            if c > m {
                1.0
            } else {
                0.0
            }
        }
    }
}

/// Gradients of `cos(a, b)` with respect to `a` and `b`. Defined as zero
/// at a zero vector, where the cosine itself is pinned to 0.
fn cosine_grads(a: &[f64], b: &[f64], c: f64) -> (Vec<f64>, Vec<f64>) {
    let na = crate::numcore::norm(a);
    let nb = crate::numcore::norm(b);
    if na < 1e-12 || nb < 1e-12 {
        return (vec![0.0; a.len()], vec![0.0; b.len()]);
    }
    let da = a
        .iter()
        .zip(b)
        .map(|(&ai, &bi)| bi / (na * nb) - c * ai / (na * na))
        .collect();
    let db = b
        .iter()
        .zip(a)
        .map(|(&bi, &ai)| ai / (na * nb) - c * bi / (nb * nb))
        .collect();
    (da, db)
}

/// Total contrastive loss over a batch — a plain sum, so the effective
/// step size of one update grows with the batch size.
pub fn batch_loss(p: &SiameseParams, pairs: &[Pair], m: f64) -> Result<f64> {
    check_margin(m)?;
    if pairs.is_empty() {
        return Err(Error::BadConfig("empty pair batch".to_string()));
    }
    let mut total = 0.0;
    for pair in pairs {
        let a = p.forward(&pair.left)?;
        let b = p.forward(&pair.right)?;
        total += pair_loss(&a, &b, pair.label, m)?;
    }
    Ok(total)
}

/// Batch loss plus its gradient with respect to every shared parameter.
///
/// Both sides of every pair backpropagate into the same accumulator —
/// that is the parameter sharing that defines the twin architecture.
pub fn batch_gradients(p: &SiameseParams, pairs: &[Pair], m: f64) -> Result<(f64, SiameseGrads)> {
    check_margin(m)?;
    if pairs.is_empty() {
        return Err(Error::BadConfig("empty pair batch".to_string()));
    }
    let mut grads = SiameseGrads::zeros_like(p);
    let mut total = 0.0;
    for pair in pairs {
        let ca = p.forward_cached(&pair.left)?;
        let cb = p.forward_cached(&pair.right)?;
        let c = cosine(&ca.output, &cb.output)?;
        total += match pair.label {
            PairLabel::Same => 1.0 - c,
            PairLabel::Different => (c - m).max(0.0),
        };
        let dc = loss_dcos(c, pair.label, m);
        if dc == 0.0 {
            continue;
        }
        let (da, db) = cosine_grads(&ca.output, &cb.output, c);
        for (cache, mut ds) in [(ca, da), (cb, db)] {
            for v in &mut ds {
                *v *= dc;
            }
            backprop_one_side(p, &cache, &ds, &mut grads);
        }
    }
    Ok((total, grads))
}

/// Push a gradient on one sentence's sentiment vector back through the
/// projection, both LSTM directions, and the embedding rows it touched.
fn backprop_one_side(p: &SiameseParams, cache: &ForwardCache, ds: &[f64], grads: &mut SiameseGrads) {
    let h = p.hidden_dim();
    let (proj_grads, dz) = p.proj.backward(&cache.z, &cache.output, ds);
    grads.proj.w.data_mut()
        .iter_mut()
        .zip(proj_grads.w.data())
        .for_each(|(a, b)| *a += b);
    grads
        .proj
        .b
        .iter_mut()
        .zip(&proj_grads.b)
        .for_each(|(a, b)| *a += b);

    let (fw_grads, dxs_fw) = lstm_backward(&p.fw, &cache.bi.fw, &dz[..h]);
    let (bw_grads, dxs_bw) = lstm_backward(&p.bw, &cache.bi.bw, &dz[h..]);
    for (acc, new) in [(&mut grads.fw, fw_grads), (&mut grads.bw, bw_grads)] {
        acc.w_ih
            .data_mut()
            .iter_mut()
            .zip(new.w_ih.data())
            .for_each(|(a, b)| *a += b);
        acc.w_hh
            .data_mut()
            .iter_mut()
            .zip(new.w_hh.data())
            .for_each(|(a, b)| *a += b);
        acc.bias.iter_mut().zip(&new.bias).for_each(|(a, b)| *a += b);
    }

    let len = cache.ids.len();
    for (t, dx) in dxs_fw.iter().enumerate() {
        let row = grads.embedding.row_mut(cache.ids[t] as usize);
        row.iter_mut().zip(dx).for_each(|(a, b)| *a += b);
    }
    // the backward direction read the sequence reversed
    for (t, dx) in dxs_bw.iter().enumerate() {
        let row = grads.embedding.row_mut(cache.ids[len - 1 - t] as usize);
        row.iter_mut().zip(dx).for_each(|(a, b)| *a += b);
    }
}
