//! Text normalization, tokenization, consonant skeletons, and character
//! trigram vocabularies.
//!
//! All downstream models consume character trigrams rather than whole words,
//! so spelling variants of the same word ("khoobsurat" / "khubsurat") still
//! share most of their input units.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io;

fn url_re() -> &'static regex::Regex {
    static RE: OnceLock<regex::Regex> = OnceLock::new();
    RE.get_or_init(|| regex::Regex::new(r"(?i)https?://\S+").unwrap())
}

fn mention_re() -> &'static regex::Regex {
    static RE: OnceLock<regex::Regex> = OnceLock::new();
    RE.get_or_init(|| regex::Regex::new(r"@\S+").unwrap())
}

/// Normalize raw text: strip URLs and @-mentions, lowercase, and collapse
/// runs of whitespace to single spaces.
///
/// Returns [`Error::EmptyAfterNormalization`] when nothing survives, so
/// callers never have to deal with empty sentences downstream.
pub fn normalize(text: &str) -> Result<String> {
    let no_urls = url_re().replace_all(text, " ");
    let no_mentions = mention_re().replace_all(&no_urls, " ");
    let lowered = no_mentions.to_lowercase();
    let collapsed: Vec<&str> = lowered.split_whitespace().collect();
    if collapsed.is_empty() {
        return Err(Error::EmptyAfterNormalization);
    }
    Ok(collapsed.join(" "))
}

/// Split normalized text on whitespace. Punctuation stays attached to its
/// word; there is no further segmentation.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

/// Reduce a word to its consonant skeleton: lowercase, keep ASCII letters
/// only, and drop the vowels a/e/i/o/u ('y' counts as a consonant).
///
/// Spelling variants of a word in romanized text tend to differ in vowels,
/// so equal skeletons are a cheap candidate filter for variant detection.
pub fn consonant_skeleton(word: &str) -> String {
    word.chars()
        .flat_map(|c| c.to_lowercase())
        .filter(|c| c.is_ascii_alphabetic() && !matches!(c, 'a' | 'e' | 'i' | 'o' | 'u'))
        .collect()
}

/// Character trigrams of a single token, padded with trailing '#' so every
/// token yields at least one trigram: a token of length `L >= 3` yields
/// `L - 2` trigrams; shorter tokens yield exactly one padded trigram.
pub fn char_trigrams(token: &str) -> Vec<String> {
    let chars: Vec<char> = token.chars().collect();
    if chars.is_empty() {
        return Vec::new();
    }
    if chars.len() < 3 {
        let mut padded: String = chars.iter().collect();
        while padded.chars().count() < 3 {
            padded.push('#');
        }
        return vec![padded];
    }
    chars.windows(3).map(|w| w.iter().collect()).collect()
}

/// Trigrams of every token in a sentence, in token order.
pub fn sentence_trigrams(tokens: &[String]) -> Vec<String> {
    tokens.iter().flat_map(|t| char_trigrams(t)).collect()
}

/// A sentence encoded as trigram ids, ready for the sequence encoders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigramSeq {
    pub ids: Vec<u32>,
}

/// Maps trigram strings to dense ids. Id 0 is reserved for unseen trigrams;
/// known trigrams get ids `1..=len()` in first-occurrence order, so building
/// a vocabulary from the same corpus always yields the same ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigramVocab {
    to_id: HashMap<String, u32>,
}

/// Id for trigrams that were not in the training vocabulary.
pub const UNKNOWN_ID: u32 = 0;

const VOCAB_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct VocabFile {
    version: u32,
    trigrams: std::collections::BTreeMap<String, u32>,
}

impl TrigramVocab {
    /// Build a vocabulary from sentences, assigning ids in first-occurrence
    /// order (token by token, trigram by trigram).
    pub fn build<'a, I>(texts: I) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut to_id = HashMap::new();
        for text in texts {
            for token in tokenize(text) {
                for tri in char_trigrams(&token) {
                    let next = to_id.len() as u32 + 1;
                    to_id.entry(tri).or_insert(next);
                }
            }
        }
        TrigramVocab { to_id }
    }

    /// Number of known trigrams (excluding the unknown id).
    pub fn len(&self) -> usize {
        self.to_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_id.is_empty()
    }

    /// Id of a trigram, or [`UNKNOWN_ID`] if unseen.
    pub fn id_of(&self, trigram: &str) -> u32 {
        self.to_id.get(trigram).copied().unwrap_or(UNKNOWN_ID)
    }

    /// Encode a normalized sentence as a trigram id sequence.
    ///
    /// Unseen trigrams map to [`UNKNOWN_ID`]. A sentence with no tokens is an
    /// error: every sentence must produce at least one id.
    pub fn encode(&self, text: &str) -> Result<TrigramSeq> {
        let tokens = tokenize(text);
        if tokens.is_empty() {
            return Err(Error::EmptySequence);
        }
        let ids = sentence_trigrams(&tokens)
            .iter()
            .map(|t| self.id_of(t))
            .collect();
        Ok(TrigramSeq { ids })
    }

    /// The id assignment as a sorted map, for serialization.
    pub fn to_id_map(&self) -> std::collections::BTreeMap<String, u32> {
        self.to_id.iter().map(|(k, v)| (k.clone(), *v)).collect()
    }

    /// Rebuild a vocabulary from a serialized id assignment, checking that
    /// the ids form a bijection onto `1..=n`.
    pub fn from_id_map(map: std::collections::BTreeMap<String, u32>) -> Result<Self> {
        let n = map.len() as u32;
        let mut seen = vec![false; n as usize];
        for (tri, &id) in &map {
            if id == 0 || id > n {
                return Err(Error::BadConfig(format!(
                    "trigram {tri:?} has id {id}, outside 1..={n}"
                )));
            }
            let slot = &mut seen[(id - 1) as usize];
            if *slot {
                return Err(Error::BadConfig(format!("duplicate trigram id {id}")));
            }
            *slot = true;
        }
        Ok(TrigramVocab {
            to_id: map.into_iter().collect(),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = VocabFile {
            version: VOCAB_VERSION,
            trigrams: self.to_id_map(),
        };
        io::write_json(path, &file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file: VocabFile = io::read_json(path)?;
        if file.version != VOCAB_VERSION {
            return Err(Error::VersionMismatch {
                found: file.version,
                expected: VOCAB_VERSION,
            });
        }
        TrigramVocab::from_id_map(file.trigrams).map_err(|e| Error::ModelParse {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })
    }
}
