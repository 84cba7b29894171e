//! Sentiment analysis for code-mixed social media text via contrastive metric
//! learning.
//!
//! The pipeline maps sentences into a shared nonnegative sentiment space using
//! twin bidirectional LSTM encoders with one set of parameters, trained with a
//! cosine contrastive loss over same/different-sentiment sentence pairs.
//! Supporting stages: transliteration-variant clustering over skip-gram
//! vectors, character-trigram featurization, a nearest-centroid classifier,
//! and an averaged-word-vector logistic-regression baseline.

pub mod baseline;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod io;
pub mod numcore;
pub mod siamese;
pub mod skipgram;
pub mod synth;
pub mod textprep;
pub mod variants;

pub use error::{Error, Result};
