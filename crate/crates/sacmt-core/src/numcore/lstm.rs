//! LSTM cell, unrolled forward pass, and backpropagation through time.
//!
//! Gate weights are packed row-wise in blocks of `h`: input gate, forget
//! gate, cell candidate, output gate (i, f, g, o).

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{EmbeddingTable, Matrix};
use crate::error::{Error, Result};
use crate::textprep::TrigramSeq;

/// Parameters of one LSTM direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LstmParams {
    /// Input weights, `4h × e`.
    pub w_ih: Matrix,
    /// Recurrent weights, `4h × h`.
    pub w_hh: Matrix,
    /// Gate biases, length `4h`.
    pub bias: Vec<f64>,
}

impl LstmParams {
    /// Weights uniform in `[-1/√h, 1/√h)`; forget-gate bias starts at 1 so
    /// early training does not erase the cell state.
    pub fn init(input_dim: usize, hidden_dim: usize, rng: &mut impl Rng) -> Self {
        let bound = 1.0 / (hidden_dim as f64).sqrt();
        let mut bias = vec![0.0; 4 * hidden_dim];
        bias[hidden_dim..2 * hidden_dim].fill(1.0);
        LstmParams {
            w_ih: Matrix::uniform(4 * hidden_dim, input_dim, -bound, bound, rng),
            w_hh: Matrix::uniform(4 * hidden_dim, hidden_dim, -bound, bound, rng),
            bias,
        }
    }

    pub fn zeros(input_dim: usize, hidden_dim: usize) -> Self {
        LstmParams {
            w_ih: Matrix::zeros(4 * hidden_dim, input_dim),
            w_hh: Matrix::zeros(4 * hidden_dim, hidden_dim),
            bias: vec![0.0; 4 * hidden_dim],
        }
    }

    pub fn input_dim(&self) -> usize {
        self.w_ih.cols()
    }

    pub fn hidden_dim(&self) -> usize {
        self.w_hh.cols()
    }

    pub fn validate_shape(&self, input_dim: usize, hidden_dim: usize) -> Result<()> {
        self.w_ih.validate_shape(4 * hidden_dim, input_dim)?;
        self.w_hh.validate_shape(4 * hidden_dim, hidden_dim)?;
        if self.bias.len() != 4 * hidden_dim {
            return Err(Error::ShapeMismatch(format!(
                "expected bias of length {}, found {}",
                4 * hidden_dim,
                self.bias.len()
            )));
        }
        Ok(())
    }
}

/// Gradients matching [`LstmParams`] field for field.
#[derive(Debug, Clone)]
pub struct LstmGrads {
    pub w_ih: Matrix,
    pub w_hh: Matrix,
    pub bias: Vec<f64>,
}

impl LstmGrads {
    pub fn zeros(input_dim: usize, hidden_dim: usize) -> Self {
        LstmGrads {
            w_ih: Matrix::zeros(4 * hidden_dim, input_dim),
            w_hh: Matrix::zeros(4 * hidden_dim, hidden_dim),
            bias: vec![0.0; 4 * hidden_dim],
        }
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Post-activation gate values of one step.
struct Gates {
    i: Vec<f64>,
    f: Vec<f64>,
    g: Vec<f64>,
    o: Vec<f64>,
}

fn step_gates(p: &LstmParams, x: &[f64], h_prev: &[f64]) -> Gates {
    let h = p.hidden_dim();
    let mut pre = p.w_ih.matvec(x);
    let rec = p.w_hh.matvec(h_prev);
    for (a, (b, c)) in pre.iter_mut().zip(rec.iter().zip(&p.bias)) {
        *a += b + c;
    }
    Gates {
        i: pre[..h].iter().map(|&v| sigmoid(v)).collect(),
        f: pre[h..2 * h].iter().map(|&v| sigmoid(v)).collect(),
        g: pre[2 * h..3 * h].iter().map(|&v| v.tanh()).collect(),
        o: pre[3 * h..].iter().map(|&v| sigmoid(v)).collect(),
    }
}

/// One LSTM step: `c = f⊙c_prev + i⊙g`, `h = o⊙tanh(c)`.
pub fn lstm_step(
    p: &LstmParams,
    x: &[f64],
    h_prev: &[f64],
    c_prev: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    for v in x.iter().chain(h_prev).chain(c_prev) {
        if !v.is_finite() {
            return Err(Error::NonFinite("lstm_step input".to_string()));
        }
    }
    let gates = step_gates(p, x, h_prev);
    let c: Vec<f64> = (0..p.hidden_dim())
        .map(|k| gates.f[k] * c_prev[k] + gates.i[k] * gates.g[k])
        .collect();
    let h: Vec<f64> = c.iter().zip(&gates.o).map(|(&ck, &ok)| ok * ck.tanh()).collect();
    Ok((h, c))
}

/// Everything the backward pass needs from an unrolled forward pass.
pub struct LstmCache {
    inputs: Vec<Vec<f64>>,
    gate_i: Vec<Vec<f64>>,
    gate_f: Vec<Vec<f64>>,
    gate_g: Vec<Vec<f64>>,
    gate_o: Vec<Vec<f64>>,
    cells: Vec<Vec<f64>>,
    hiddens: Vec<Vec<f64>>,
}

impl LstmCache {
    /// Final hidden state (the sequence encoding).
    pub fn final_hidden(&self) -> &[f64] {
        self.hiddens.last().expect("cache is never empty")
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }
}

/// Run the cell over a whole sequence from zero initial state, keeping the
/// per-step values needed by [`lstm_backward`].
pub fn lstm_forward(p: &LstmParams, xs: &[Vec<f64>]) -> Result<LstmCache> {
    if xs.is_empty() {
        return Err(Error::EmptySequence);
    }
    let h_dim = p.hidden_dim();
    let mut cache = LstmCache {
        inputs: Vec::with_capacity(xs.len()),
        gate_i: Vec::with_capacity(xs.len()),
        gate_f: Vec::with_capacity(xs.len()),
        gate_g: Vec::with_capacity(xs.len()),
        gate_o: Vec::with_capacity(xs.len()),
        cells: Vec::with_capacity(xs.len()),
        hiddens: Vec::with_capacity(xs.len()),
    };
    let zero = vec![0.0; h_dim];
    for x in xs {
        for v in x {
            if !v.is_finite() {
                return Err(Error::NonFinite("lstm_forward input".to_string()));
            }
        }
        let h_prev = cache.hiddens.last().unwrap_or(&zero);
        let c_prev = cache.cells.last().unwrap_or(&zero);
        let gates = step_gates(p, x, h_prev);
        let c: Vec<f64> = (0..h_dim)
            .map(|k| gates.f[k] * c_prev[k] + gates.i[k] * gates.g[k])
            .collect();
        let h: Vec<f64> = c.iter().zip(&gates.o).map(|(&ck, &ok)| ok * ck.tanh()).collect();
        cache.inputs.push(x.clone());
        cache.gate_i.push(gates.i);
        cache.gate_f.push(gates.f);
        cache.gate_g.push(gates.g);
        cache.gate_o.push(gates.o);
        cache.cells.push(c);
        cache.hiddens.push(h);
    }
    Ok(cache)
}

/// Backpropagation through time from a gradient on the final hidden state.
///
/// Returns parameter gradients plus the gradient on every input vector
/// (needed to train the embedding table underneath).
pub fn lstm_backward(p: &LstmParams, cache: &LstmCache, dh_final: &[f64]) -> (LstmGrads, Vec<Vec<f64>>) {
    let h_dim = p.hidden_dim();
    let steps = cache.len();
    let mut grads = LstmGrads::zeros(p.input_dim(), h_dim);
    let mut dxs = vec![vec![0.0; p.input_dim()]; steps];
    let zero = vec![0.0; h_dim];

    let mut dh = dh_final.to_vec();
    let mut dc = vec![0.0; h_dim];
    for t in (0..steps).rev() {
        let (i, f, g, o) = (
            &cache.gate_i[t],
            &cache.gate_f[t],
            &cache.gate_g[t],
            &cache.gate_o[t],
        );
        let c = &cache.cells[t];
        let c_prev = if t == 0 { &zero } else { &cache.cells[t - 1] };
        let h_prev = if t == 0 { &zero } else { &cache.hiddens[t - 1] };

        // through h = o ⊙ tanh(c)
        let mut dgates = vec![0.0; 4 * h_dim];
        for k in 0..h_dim {
            let tanh_c = c[k].tanh();
            let do_post = dh[k] * tanh_c;
            dc[k] += dh[k] * o[k] * (1.0 - tanh_c * tanh_c);
            // through c = f ⊙ c_prev + i ⊙ g, then the activations
            let di_post = dc[k] * g[k];
            let df_post = dc[k] * c_prev[k];
            let dg_post = dc[k] * i[k];
            dgates[k] = di_post * i[k] * (1.0 - i[k]);
            dgates[h_dim + k] = df_post * f[k] * (1.0 - f[k]);
            dgates[2 * h_dim + k] = dg_post * (1.0 - g[k] * g[k]);
            dgates[3 * h_dim + k] = do_post * o[k] * (1.0 - o[k]);
        }

        grads.w_ih.add_outer(&dgates, &cache.inputs[t]);
        grads.w_hh.add_outer(&dgates, h_prev);
        for (b, d) in grads.bias.iter_mut().zip(&dgates) {
            *b += d;
        }
        dxs[t] = p.w_ih.matvec_t(&dgates);
        dh = p.w_hh.matvec_t(&dgates);
        for k in 0..h_dim {
            dc[k] *= f[k];
        }
    }
    (grads, dxs)
}

/// Forward and backward unrolled passes over one embedded sequence; the
/// backward direction reads the inputs in reverse.
pub struct BiLstmCache {
    pub fw: LstmCache,
    pub bw: LstmCache,
}

/// Encode a trigram sequence with both directions (independent parameter
/// sets) and return the two final hidden states.
pub fn bilstm_encode(
    fw_params: &LstmParams,
    bw_params: &LstmParams,
    emb: &EmbeddingTable,
    seq: &TrigramSeq,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let cache = bilstm_forward(fw_params, bw_params, emb, seq)?;
    Ok((
        cache.fw.final_hidden().to_vec(),
        cache.bw.final_hidden().to_vec(),
    ))
}

/// As [`bilstm_encode`] but keeping both unrolled caches for BPTT.
pub fn bilstm_forward(
    fw_params: &LstmParams,
    bw_params: &LstmParams,
    emb: &EmbeddingTable,
    seq: &TrigramSeq,
) -> Result<BiLstmCache> {
    let xs = emb.embed_sequence(seq)?;
    let fw = lstm_forward(fw_params, &xs)?;
    let reversed: Vec<Vec<f64>> = xs.into_iter().rev().collect();
    let bw = lstm_forward(bw_params, &reversed)?;
    Ok(BiLstmCache { fw, bw })
}
