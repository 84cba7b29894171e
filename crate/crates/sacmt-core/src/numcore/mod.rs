//! Minimal numeric kernel: dense matrices, cosine similarity, a learned
//! trigram-embedding table, an LSTM cell with backpropagation through time,
//! and a dense+ReLU projection — everything the sequence encoders need,
//! with hand-derived gradients throughout.

mod gradcheck;
mod lstm;

pub use gradcheck::finite_diff_check;
pub use lstm::{
    bilstm_encode, bilstm_forward, lstm_backward, lstm_forward, lstm_step, BiLstmCache, LstmCache,
    LstmGrads, LstmParams,
};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textprep::TrigramSeq;

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Matrix with entries drawn uniformly from `[lo, hi)`.
    pub fn uniform(rows: usize, cols: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> Self {
        let data = (0..rows * cols).map(|_| rng.random_range(lo..hi)).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// `y = A·x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), x)).collect()
    }

    /// `x = Aᵀ·y`.
    pub fn matvec_t(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (r, &yr) in y.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o += a * yr;
            }
        }
        out
    }

    /// Rank-one update `A += y·xᵀ`.
    pub fn add_outer(&mut self, y: &[f64], x: &[f64]) {
        debug_assert_eq!(y.len(), self.rows);
        debug_assert_eq!(x.len(), self.cols);
        for (r, &yr) in y.iter().enumerate() {
            for (a, &xc) in self.row_mut(r).iter_mut().zip(x) {
                *a += yr * xc;
            }
        }
    }

    /// Check stored dimensions against the data length (used after
    /// deserializing untrusted files).
    pub fn validate_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols || self.data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {rows}x{cols} matrix, found {}x{} with {} entries",
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        Ok(())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Cosine similarity `a·b / (‖a‖‖b‖)`. Either norm below `1e-12` yields 0,
/// keeping the similarity total on degenerate vectors.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let na = norm(a);
    let nb = norm(b);
    if na < 1e-12 || nb < 1e-12 {
        return Ok(0.0);
    }
    Ok(dot(a, b) / (na * nb))
}

/// Learned input vectors for trigram ids `0..=vocab_size` (row 0 is the
/// unknown-trigram id).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingTable {
    pub table: Matrix,
}

impl EmbeddingTable {
    /// Fresh table with entries uniform in `[-0.1, 0.1)`, trained jointly
    /// with the rest of the network.
    pub fn init(vocab_size: usize, dim: usize, rng: &mut impl Rng) -> Self {
        EmbeddingTable {
            table: Matrix::uniform(vocab_size + 1, dim, -0.1, 0.1, rng),
        }
    }

    pub fn zeros(vocab_size: usize, dim: usize) -> Self {
        EmbeddingTable {
            table: Matrix::zeros(vocab_size + 1, dim),
        }
    }

    /// Largest valid trigram id.
    pub fn vocab_size(&self) -> usize {
        self.table.rows() - 1
    }

    pub fn dim(&self) -> usize {
        self.table.cols()
    }

    pub fn vector(&self, id: u32) -> Result<&[f64]> {
        if (id as usize) >= self.table.rows() {
            return Err(Error::ShapeMismatch(format!(
                "trigram id {id} out of range for embedding table of {} rows",
                self.table.rows()
            )));
        }
        Ok(self.table.row(id as usize))
    }

    /// Look up every id of a sequence. Empty sequences are an error: the
    /// encoders need at least one step.
    pub fn embed_sequence(&self, seq: &TrigramSeq) -> Result<Vec<Vec<f64>>> {
        if seq.ids.is_empty() {
            return Err(Error::EmptySequence);
        }
        seq.ids.iter().map(|&id| Ok(self.vector(id)?.to_vec())).collect()
    }
}

/// Dense projection from the concatenated encoder states into the
/// nonnegative sentiment space: `s = max{0, W·z + b}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionParams {
    pub w: Matrix,    // d × 2h
    pub b: Vec<f64>,  // d
}

impl ProjectionParams {
    /// Weights uniform in `[-1/√in_dim, 1/√in_dim)`, zero bias.
    pub fn init(out_dim: usize, in_dim: usize, rng: &mut impl Rng) -> Self {
        let bound = 1.0 / (in_dim as f64).sqrt();
        ProjectionParams {
            w: Matrix::uniform(out_dim, in_dim, -bound, bound, rng),
            b: vec![0.0; out_dim],
        }
    }

    pub fn zeros(out_dim: usize, in_dim: usize) -> Self {
        ProjectionParams {
            w: Matrix::zeros(out_dim, in_dim),
            b: vec![0.0; out_dim],
        }
    }

    pub fn out_dim(&self) -> usize {
        self.w.rows()
    }

    pub fn in_dim(&self) -> usize {
        self.w.cols()
    }

    /// `s = relu(W·z + b)`; every output coordinate is ≥ 0.
    pub fn forward(&self, z: &[f64]) -> Result<Vec<f64>> {
        if z.len() != self.w.cols() {
            return Err(Error::DimMismatch {
                expected: self.w.cols(),
                got: z.len(),
            });
        }
        let mut s = self.w.matvec(z);
        for (si, bi) in s.iter_mut().zip(&self.b) {
            *si = (*si + bi).max(0.0);
        }
        Ok(s)
    }

    /// Backward pass given the forward input `z`, output `s`, and output
    /// gradient `ds`. Returns parameter gradients and `dz`. The ReLU
    /// subgradient at 0 is taken as 0.
    pub fn backward(&self, z: &[f64], s: &[f64], ds: &[f64]) -> (ProjectionGrads, Vec<f64>) {
        let du: Vec<f64> = ds
            .iter()
            .zip(s)
            .map(|(&d, &si)| if si > 0.0 { d } else { 0.0 })
            .collect();
        let mut grads = ProjectionGrads {
            w: Matrix::zeros(self.w.rows(), self.w.cols()),
            b: du.clone(),
        };
        grads.w.add_outer(&du, z);
        let dz = self.w.matvec_t(&du);
        (grads, dz)
    }
}

/// Gradients matching [`ProjectionParams`] field for field.
#[derive(Debug, Clone)]
pub struct ProjectionGrads {
    pub w: Matrix,
    pub b: Vec<f64>,
}

/// Project the two final encoder states (forward first, then backward).
pub fn project(p: &ProjectionParams, fw: &[f64], bw: &[f64]) -> Result<Vec<f64>> {
    p.forward(&concat(fw, bw))
}

pub fn concat(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut z = Vec::with_capacity(a.len() + b.len());
    z.extend_from_slice(a);
    z.extend_from_slice(b);
    z
}
