//! Training-pair construction: each anchor sentence gets one same-class
//! partner (label +1) and one different-class partner (label −1), sampled
//! uniformly from the partner corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::LabeledCorpus;
use crate::error::{Error, Result};
use crate::textprep::{TrigramSeq, TrigramVocab};

/// Whether the two sides of a pair carried the same class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairLabel {
    /// Same class, y = +1: pull together.
    Same,
    /// Different class, y = −1: push below the margin.
    Different,
}

impl PairLabel {
    pub fn value(self) -> i8 {
        match self {
            PairLabel::Same => 1,
            PairLabel::Different => -1,
        }
    }
}

/// One encoded training pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub left: TrigramSeq,
    pub right: TrigramSeq,
    pub label: PairLabel,
}

/// Build the contrastive training set: for every sentence of `left`, one
/// uniformly sampled same-class sentence of `right` (labeled `Same`) and
/// one uniformly sampled different-class sentence (labeled `Different`),
/// both encoded with `vocab`. Output length is exactly `2·|left|`, in
/// left-corpus order with the positive pair first.
///
/// `left` and `right` may be the same corpus (monolingual training); a
/// sentence never gets paired with itself, which makes a class with a
/// single member unsatisfiable.
pub fn make_pairs(
    left: &LabeledCorpus,
    right: &LabeledCorpus,
    vocab: &TrigramVocab,
    seed: u64,
) -> Result<Vec<Pair>> {
    let mut by_class: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, s) in right.iter().enumerate() {
        by_class[s.label.index()].push(i);
    }
    let right_seqs: Vec<TrigramSeq> = right
        .iter()
        .map(|s| vocab.encode(&s.text))
        .collect::<Result<_>>()?;
    let others: [Vec<usize>; 3] = [0, 1, 2].map(|c| {
        (0..right.len())
            .filter(|&i| right.sentences()[i].label.index() != c)
            .collect()
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(2 * left.len());
    for s in left.iter() {
        let class = s.label.index();
        let same = &by_class[class];
        // exclude the sentence itself when the corpora overlap
        let self_pos = same.iter().position(|&ri| {
            let r = &right.sentences()[ri];
            r.id == s.id && r.source == s.source
        });
        let same_count = same.len() - usize::from(self_pos.is_some());
        if same_count == 0 {
            return Err(Error::ClassUnsatisfiable {
                class: s.label.to_string(),
                msg: "no same-class partner other than the sentence itself".to_string(),
            });
        }
        let diff = &others[class];
        if diff.is_empty() {
            return Err(Error::ClassUnsatisfiable {
                class: s.label.to_string(),
                msg: "no different-class partner available".to_string(),
            });
        }

        let left_seq = vocab.encode(&s.text)?;
        let mut pick = rng.random_range(0..same_count);
        if let Some(skip) = self_pos {
            if pick >= skip {
                pick += 1;
            }
        }
        pairs.push(Pair {
            left: left_seq.clone(),
            right: right_seqs[same[pick]].clone(),
            label: PairLabel::Same,
        });
        let pick = rng.random_range(0..diff.len());
        pairs.push(Pair {
            left: left_seq,
            right: right_seqs[diff[pick]].clone(),
            label: PairLabel::Different,
        });
    }
    Ok(pairs)
}
