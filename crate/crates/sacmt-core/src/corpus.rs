//! Labeled sentiment corpora: TSV loading, emoji-based relabeling,
//! stratified splitting, and summary statistics.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io;
use crate::textprep;

/// Three-way sentiment class. The derived order (Negative < Neutral <
/// Positive) is the tie-breaking order used everywhere a deterministic
/// choice between classes is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sentiment {
    Negative,
    Neutral,
    Positive,
}

impl Sentiment {
    pub const ALL: [Sentiment; 3] = [Sentiment::Negative, Sentiment::Neutral, Sentiment::Positive];

    /// Position in [`Sentiment::ALL`]; used to index per-class arrays.
    pub fn index(self) -> usize {
        match self {
            Sentiment::Negative => 0,
            Sentiment::Neutral => 1,
            Sentiment::Positive => 2,
        }
    }
}

impl fmt::Display for Sentiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sentiment::Negative => "Negative",
            Sentiment::Neutral => "Neutral",
            Sentiment::Positive => "Positive",
        };
        f.write_str(s)
    }
}

impl FromStr for Sentiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "negative" => Ok(Sentiment::Negative),
            "neutral" => Ok(Sentiment::Neutral),
            "positive" => Ok(Sentiment::Positive),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

/// One labeled sentence. `text` is always normalized (see
/// [`textprep::normalize`]); `source` tags the dataset the sentence came
/// from so identical ids from different files stay distinguishable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub label: Sentiment,
    pub text: String,
    pub source: String,
}

/// An ordered collection of labeled sentences with unique ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCorpus {
    sentences: Vec<Sentence>,
}

impl LabeledCorpus {
    /// Wrap sentences, enforcing unique ids and non-empty text.
    pub fn new(sentences: Vec<Sentence>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &sentences {
            if s.text.trim().is_empty() {
                return Err(Error::BadConfig(format!("sentence {} has empty text", s.id)));
            }
            if !seen.insert(&s.id) {
                return Err(Error::BadConfig(format!("duplicate sentence id: {}", s.id)));
            }
        }
        Ok(LabeledCorpus { sentences })
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sentence> {
        self.sentences.iter()
    }

    /// Sentence texts in corpus order, e.g. for vocabulary building.
    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.sentences.iter().map(|s| s.text.as_str())
    }

    /// Number of sentences per class, indexed by [`Sentiment::index`].
    pub fn class_counts(&self) -> [usize; 3] {
        let mut counts = [0usize; 3];
        for s in &self.sentences {
            counts[s.label.index()] += 1;
        }
        counts
    }
}

/// Load a headerless TSV dataset: one `id<TAB>label<TAB>text` record per
/// line, labels case-insensitive. Text is normalized on the way in; the
/// sentences' `source` tag is the file stem.
pub fn load_dataset(path: &Path) -> Result<LabeledCorpus> {
    let raw = io::read_to_string(path)?;
    let source = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut sentences = Vec::new();
    let mut seen_ids = HashSet::new();
    for (idx, line) in raw.lines().enumerate() {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let mut parts = line.splitn(3, '\t');
        let (id, label_tok, text) = match (parts.next(), parts.next(), parts.next()) {
            (Some(id), Some(label), Some(text)) => (id, label, text),
            _ => {
                return Err(Error::malformed(
                    path,
                    lineno,
                    "expected id<TAB>label<TAB>text",
                ))
            }
        };
        let label = Sentiment::from_str(label_tok)
            .map_err(|e| Error::malformed(path, lineno, e.to_string()))?;
        let text = textprep::normalize(text)
            .map_err(|e| Error::malformed(path, lineno, e.to_string()))?;
        if !seen_ids.insert(id.to_string()) {
            return Err(Error::malformed(path, lineno, format!("duplicate id: {id}")));
        }
        sentences.push(Sentence {
            id: id.to_string(),
            label,
            text,
            source: source.clone(),
        });
    }
    LabeledCorpus::new(sentences)
}

/// Write a corpus back out in the TSV dataset format. Loading the result
/// reproduces the corpus (texts are already normalized).
pub fn save_dataset(corpus: &LabeledCorpus, path: &Path) -> Result<()> {
    let mut out = String::new();
    for s in corpus.iter() {
        let label = match s.label {
            Sentiment::Negative => "negative",
            Sentiment::Neutral => "neutral",
            Sentiment::Positive => "positive",
        };
        out.push_str(&format!("{}\t{}\t{}\n", s.id, label, s.text));
    }
    io::write_atomic(path, out.as_bytes())
}

/// Maps emoji strings (possibly multi-codepoint) to sentiment classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmojiMap {
    map: BTreeMap<String, Sentiment>,
}

impl EmojiMap {
    pub fn new(map: BTreeMap<String, Sentiment>) -> Self {
        EmojiMap { map }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Sentiment)> {
        self.map.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Emojis assigned to `class`, in sorted key order, concatenated.
    pub fn emojis_for(&self, class: Sentiment) -> String {
        self.map
            .iter()
            .filter(|&(_, &v)| v == class)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// Load from a JSON object `{emoji: label}`.
    pub fn load(path: &Path) -> Result<Self> {
        let raw: BTreeMap<String, String> = io::read_json(path)?;
        let mut map = BTreeMap::new();
        for (emoji, label) in raw {
            let class = Sentiment::from_str(&label)?;
            map.insert(emoji, class);
        }
        Ok(EmojiMap { map })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let raw: BTreeMap<&str, Sentiment> =
            self.map.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        io::write_json(path, &raw)
    }
}

/// Result of [`relabel_by_emoji`]: the kept sentences plus the number of
/// inputs that were dropped (no mapped emoji, conflicting classes, or
/// nothing left after emoji removal).
#[derive(Debug, Clone)]
pub struct RelabelOutcome {
    pub corpus: LabeledCorpus,
    pub dropped: usize,
}

/// Relabel sentences by the sentiment class of the emojis they contain.
///
/// A sentence is kept only if all its mapped emojis agree on one class; the
/// emojis are then stripped from the text and the class becomes the new
/// label. Everything else is dropped (counted, not an error).
pub fn relabel_by_emoji(corpus: &LabeledCorpus, map: &EmojiMap) -> Result<RelabelOutcome> {
    if map.is_empty() {
        return Err(Error::BadConfig("emoji map is empty".to_string()));
    }
    let mut kept = Vec::new();
    let mut dropped = 0usize;
    for s in corpus.iter() {
        let mut class: Option<Sentiment> = None;
        let mut conflict = false;
        for (emoji, c) in map.iter() {
            if s.text.contains(emoji) {
                match class {
                    None => class = Some(c),
                    Some(prev) if prev != c => {
                        conflict = true;
                        break;
                    }
                    Some(_) => {}
                }
            }
        }
        let Some(label) = class else {
            dropped += 1;
            continue;
        };
        if conflict {
            dropped += 1;
            continue;
        }
        let mut text = s.text.clone();
        for (emoji, _) in map.iter() {
            text = text.replace(emoji, " ");
        }
        match textprep::normalize(&text) {
            Ok(text) => kept.push(Sentence {
                id: s.id.clone(),
                label,
                text,
                source: s.source.clone(),
            }),
            // emoji-only sentence: nothing left to classify
            Err(Error::EmptyAfterNormalization) => dropped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(RelabelOutcome {
        corpus: LabeledCorpus::new(kept)?,
        dropped,
    })
}

/// Render the per-class distribution of an emoji-relabeled corpus as an
/// aligned text table: one row per class (Positive, Neutral, Negative) with
/// the class's emojis and its share of the kept sentences.
pub fn render_emoji_report(map: &EmojiMap, corpus: &LabeledCorpus, dropped: usize) -> String {
    let counts = corpus.class_counts();
    let total = corpus.len();
    let mut rows = vec![["Emojis".to_string(), "Class".to_string(), "Share".to_string()]];
    for class in [Sentiment::Positive, Sentiment::Neutral, Sentiment::Negative] {
        let share = if total == 0 {
            0
        } else {
            round_percent(counts[class.index()], total)
        };
        rows.push([
            map.emojis_for(class),
            class.to_string(),
            format!("{share}%"),
        ]);
    }
    let mut widths = [0usize; 3];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let mut line = String::new();
        for (i, (cell, w)) in row.iter().zip(widths).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                line.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!("kept {total} sentences, dropped {dropped}\n"));
    out
}

/// Stratified train/dev/test split, deterministic for a fixed seed.
///
/// Each class is shuffled and apportioned by largest remainder, so the
/// three outputs partition the input exactly. Within each output the
/// original corpus order is preserved. Every class present must have at
/// least 3 sentences (one per split).
pub fn split(
    corpus: &LabeledCorpus,
    ratios: (f64, f64, f64),
    seed: u64,
) -> Result<(LabeledCorpus, LabeledCorpus, LabeledCorpus)> {
    let (r0, r1, r2) = ratios;
    for r in [r0, r1, r2] {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::BadConfig(format!(
                "split ratios must be positive, got ({r0}, {r1}, {r2})"
            )));
        }
    }
    if ((r0 + r1 + r2) - 1.0).abs() > 1e-9 {
        return Err(Error::BadConfig(format!(
            "split ratios must sum to 1, got {}",
            r0 + r1 + r2
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; corpus.len()]; // split index per sentence
    for class in Sentiment::ALL {
        let mut members: Vec<usize> = corpus
            .iter()
            .enumerate()
            .filter(|(_, s)| s.label == class)
            .map(|(i, _)| i)
            .collect();
        if members.is_empty() {
            continue;
        }
        if members.len() < 3 {
            return Err(Error::ClassUnsatisfiable {
                class: class.to_string(),
                msg: format!("{} sentences, need at least 3 to split", members.len()),
            });
        }
        members.shuffle(&mut rng);
        let sizes = largest_remainder(members.len(), [r0, r1, r2]);
        let mut offset = 0;
        for (split_idx, size) in sizes.into_iter().enumerate() {
            for &sentence_idx in &members[offset..offset + size] {
                assignment[sentence_idx] = split_idx;
            }
            offset += size;
        }
    }

    let mut parts: [Vec<Sentence>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, s) in corpus.iter().enumerate() {
        parts[assignment[i]].push(s.clone());
    }
    let [train, dev, test] = parts;
    Ok((
        LabeledCorpus::new(train)?,
        LabeledCorpus::new(dev)?,
        LabeledCorpus::new(test)?,
    ))
}

/// Apportion `n` items over fractions summing to 1: floor each share, then
/// hand the leftovers to the largest remainders (ties to the earlier slot).
fn largest_remainder(n: usize, fractions: [f64; 3]) -> [usize; 3] {
    let mut sizes = [0usize; 3];
    let mut remainders = [(0.0f64, 0usize); 3];
    let mut assigned = 0;
    for (i, f) in fractions.iter().enumerate() {
        let exact = f * n as f64;
        sizes[i] = exact.floor() as usize;
        assigned += sizes[i];
        remainders[i] = (exact - exact.floor(), i);
    }
    remainders.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    for k in 0..(n - assigned) {
        sizes[remainders[k].1] += 1;
    }
    sizes
}

/// Count and share of one class within a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassShare {
    pub count: usize,
    /// Percentage of the corpus, rounded to the nearest integer.
    pub percent: u32,
}

/// Corpus summary: size, vocabulary sizes on both bases, and the class
/// distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub sentences: usize,
    pub distinct_tokens: usize,
    pub distinct_trigrams: usize,
    pub negative: ClassShare,
    pub neutral: ClassShare,
    pub positive: ClassShare,
}

fn round_percent(count: usize, total: usize) -> u32 {
    ((count * 200 + total) / (2 * total)) as u32
}

/// Summarize a corpus: distinct tokens, distinct character trigrams, and
/// per-class counts with integer percentages.
pub fn corpus_stats(corpus: &LabeledCorpus) -> Result<Stats> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut tokens = HashSet::new();
    let mut trigrams = HashSet::new();
    for text in corpus.texts() {
        for token in textprep::tokenize(text) {
            for tri in textprep::char_trigrams(&token) {
                trigrams.insert(tri);
            }
            tokens.insert(token);
        }
    }
    let counts = corpus.class_counts();
    let total = corpus.len();
    let share = |class: Sentiment| ClassShare {
        count: counts[class.index()],
        percent: round_percent(counts[class.index()], total),
    };
    Ok(Stats {
        sentences: total,
        distinct_tokens: tokens.len(),
        distinct_trigrams: trigrams.len(),
        negative: share(Sentiment::Negative),
        neutral: share(Sentiment::Neutral),
        positive: share(Sentiment::Positive),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(id: &str, label: Sentiment, text: &str) -> Sentence {
        Sentence {
            id: id.to_string(),
            label,
            text: text.to_string(),
            source: "test".to_string(),
        }
    }

    fn corpus(entries: &[(&str, Sentiment, &str)]) -> LabeledCorpus {
        LabeledCorpus::new(
            entries
                .iter()
                .map(|(id, label, text)| sentence(id, *label, text))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn load_parses_records_and_normalizes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.tsv");
        std::fs::write(&path, "1\tpositive\tIndia match jit gayi\n2\tNEGATIVE\tYeh bura hai\n")
            .unwrap();
        let c = load_dataset(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.sentences()[0].id, "1");
        assert_eq!(c.sentences()[0].label, Sentiment::Positive);
        assert_eq!(c.sentences()[0].text, "india match jit gayi");
        assert_eq!(c.sentences()[0].source, "data");
        assert_eq!(c.sentences()[1].label, Sentiment::Negative);
    }

    #[test]
    fn load_accepts_tabs_inside_text() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.tsv");
        std::fs::write(&path, "1\tneutral\tpart one\tpart two\n").unwrap();
        let c = load_dataset(&path).unwrap();
        assert_eq!(c.sentences()[0].text, "part one part two");
    }

    #[test]
    fn load_reports_line_numbers_and_tokens() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.tsv");
        std::fs::write(&path, "1\tpositive\tok\n2\thappy\ttext\n").unwrap();
        let err = load_dataset(&path).unwrap_err().to_string();
        assert!(err.contains(":2:"), "missing line number: {err}");
        assert!(err.contains("unknown label: happy"), "missing token: {err}");

        std::fs::write(&path, "only-one-field\n").unwrap();
        let err = load_dataset(&path).unwrap_err().to_string();
        assert!(err.contains(":1:"), "missing line number: {err}");
    }

    #[test]
    fn load_rejects_duplicate_ids_and_empty_text() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.tsv");
        std::fs::write(&path, "1\tpositive\ta\n1\tnegative\tb\n").unwrap();
        assert!(load_dataset(&path).unwrap_err().to_string().contains("duplicate id"));

        std::fs::write(&path, "1\tpositive\t@mention-only\n").unwrap();
        let err = load_dataset(&path).unwrap_err().to_string();
        assert!(err.contains("empty after normalization"), "{err}");
    }

    #[test]
    fn empty_file_is_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.tsv");
        std::fs::write(&path, "").unwrap();
        assert!(load_dataset(&path).unwrap().is_empty());
    }

    #[test]
    fn save_then_load_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let first = dir.path().join("a").join("corpus.tsv");
        std::fs::create_dir_all(first.parent().unwrap()).unwrap();
        let second = dir.path().join("b").join("corpus.tsv");
        std::fs::create_dir_all(second.parent().unwrap()).unwrap();

        let c = corpus(&[
            ("1", Sentiment::Positive, "india match jit gayi"),
            ("2", Sentiment::Neutral, "theek hai"),
            ("3", Sentiment::Negative, "bura din"),
        ]);
        save_dataset(&c, &first).unwrap();
        let loaded = load_dataset(&first).unwrap();
        save_dataset(&loaded, &second).unwrap();
        // byte-identical after one pass through normalization
        assert_eq!(
            std::fs::read(&first).unwrap(),
            std::fs::read(&second).unwrap()
        );
    }

    fn emoji_map() -> EmojiMap {
        let mut m = BTreeMap::new();
        m.insert("😄".to_string(), Sentiment::Positive);
        m.insert("😡".to_string(), Sentiment::Negative);
        m.insert("😐".to_string(), Sentiment::Neutral);
        EmojiMap::new(m)
    }

    #[test]
    fn relabel_keeps_single_class_and_strips_emoji() {
        let c = corpus(&[("1", Sentiment::Neutral, "great day 😄")]);
        let out = relabel_by_emoji(&c, &emoji_map()).unwrap();
        assert_eq!(out.dropped, 0);
        let s = &out.corpus.sentences()[0];
        assert_eq!(s.label, Sentiment::Positive);
        assert_eq!(s.text, "great day");
    }

    #[test]
    fn relabel_drops_conflicts_missing_and_empty() {
        let c = corpus(&[
            ("1", Sentiment::Neutral, "hmm 😄 😡"),   // conflict
            ("2", Sentiment::Neutral, "no emoji here"), // no mapped emoji
            ("3", Sentiment::Neutral, "😄"),            // empty once stripped
            ("4", Sentiment::Neutral, "fine 😐 😐"),   // repeated same-class is fine
        ]);
        let out = relabel_by_emoji(&c, &emoji_map()).unwrap();
        assert_eq!(out.dropped, 3);
        assert_eq!(out.corpus.len(), 1);
        assert_eq!(out.corpus.sentences()[0].id, "4");
        assert_eq!(out.corpus.sentences()[0].label, Sentiment::Neutral);
        assert_eq!(out.corpus.sentences()[0].text, "fine");
    }

    #[test]
    fn relabel_output_contains_no_mapped_emoji() {
        let c = corpus(&[
            ("1", Sentiment::Neutral, "good 😄 stuff 😄"),
            ("2", Sentiment::Neutral, "bad 😡 thing"),
        ]);
        let map = emoji_map();
        let out = relabel_by_emoji(&c, &map).unwrap();
        for s in out.corpus.iter() {
            for (emoji, _) in map.iter() {
                assert!(!s.text.contains(emoji));
            }
        }
    }

    #[test]
    fn emoji_map_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("emoji.json");
        let m = emoji_map();
        m.save(&path).unwrap();
        assert_eq!(EmojiMap::load(&path).unwrap(), m);
    }

    #[test]
    fn emoji_report_has_table_layout() {
        let c = corpus(&[
            ("1", Sentiment::Positive, "a"),
            ("2", Sentiment::Positive, "b"),
            ("3", Sentiment::Neutral, "c"),
            ("4", Sentiment::Negative, "d"),
        ]);
        let report = render_emoji_report(&emoji_map(), &c, 2);
        let lines: Vec<&str> = report.lines().collect();
        assert!(lines[0].starts_with("Emojis"));
        assert!(lines[0].contains("Class") && lines[0].contains("Share"));
        assert!(lines[1].contains("Positive") && lines[1].contains("50%"));
        assert!(lines[2].contains("Neutral") && lines[2].contains("25%"));
        assert!(lines[3].contains("Negative") && lines[3].contains("25%"));
        assert!(lines[4].contains("dropped 2"));
    }

    fn big_corpus(neg: usize, neu: usize, pos: usize) -> LabeledCorpus {
        let mut sentences = Vec::new();
        for (class, n, tag) in [
            (Sentiment::Negative, neg, "n"),
            (Sentiment::Neutral, neu, "u"),
            (Sentiment::Positive, pos, "p"),
        ] {
            for i in 0..n {
                sentences.push(sentence(&format!("{tag}{i}"), class, &format!("word{tag}{i}")));
            }
        }
        LabeledCorpus::new(sentences).unwrap()
    }

    #[test]
    fn split_partitions_exactly() {
        let c = big_corpus(40, 30, 30);
        let (train, dev, test) = split(&c, (0.8, 0.1, 0.1), 7).unwrap();
        assert_eq!(train.len(), 80);
        assert_eq!(dev.len(), 10);
        assert_eq!(test.len(), 10);
        let mut ids: Vec<&str> = train
            .iter()
            .chain(dev.iter())
            .chain(test.iter())
            .map(|s| s.id.as_str())
            .collect();
        ids.sort_unstable();
        let mut expected: Vec<&str> = c.iter().map(|s| s.id.as_str()).collect();
        expected.sort_unstable();
        assert_eq!(ids, expected);
    }

    #[test]
    fn split_is_stratified_and_deterministic() {
        let c = big_corpus(40, 30, 30);
        let (train, _, _) = split(&c, (0.8, 0.1, 0.1), 7).unwrap();
        assert_eq!(train.class_counts(), [32, 24, 24]);
        let again = split(&c, (0.8, 0.1, 0.1), 7).unwrap();
        assert_eq!(again.0, train);
        let other_seed = split(&c, (0.8, 0.1, 0.1), 8).unwrap();
        assert_ne!(other_seed.0, train); // very likely under any shuffle
    }

    #[test]
    fn split_rejects_bad_ratios_and_tiny_classes() {
        let c = big_corpus(10, 10, 10);
        assert!(split(&c, (0.5, 0.5, 0.5), 1).is_err());
        assert!(split(&c, (1.0, -0.5, 0.5), 1).is_err());
        let tiny = big_corpus(2, 10, 10);
        let err = split(&tiny, (0.8, 0.1, 0.1), 1).unwrap_err().to_string();
        assert!(err.contains("Negative"), "{err}");
    }

    #[test]
    fn stats_counts_types_not_tokens() {
        let one = corpus(&[("1", Sentiment::Positive, "aa bb")]);
        let s = corpus_stats(&one).unwrap();
        assert_eq!(s.sentences, 1);
        assert_eq!(s.distinct_tokens, 2);
        // "aa#" and "bb#"
        assert_eq!(s.distinct_trigrams, 2);
        assert_eq!(s.positive, ClassShare { count: 1, percent: 100 });

        let twice = corpus(&[
            ("1", Sentiment::Positive, "aa bb"),
            ("2", Sentiment::Positive, "aa bb"),
        ]);
        assert_eq!(corpus_stats(&twice).unwrap().distinct_tokens, 2);
    }

    #[test]
    fn stats_percentages_mirror_distribution() {
        let c = big_corpus(15, 50, 35);
        let s = corpus_stats(&c).unwrap();
        assert_eq!(s.positive.percent, 35);
        assert_eq!(s.neutral.percent, 50);
        assert_eq!(s.negative.percent, 15);
        assert!(corpus_stats(&corpus(&[("1", Sentiment::Neutral, "x")])).is_ok());
        assert!(matches!(
            corpus_stats(&LabeledCorpus::new(vec![]).unwrap()),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn stats_percent_sum_within_one_of_hundred() {
        let c = big_corpus(1, 1, 1);
        let s = corpus_stats(&c).unwrap();
        let sum = s.negative.percent + s.neutral.percent + s.positive.percent;
        assert!((99..=101).contains(&sum), "sum {sum}");
    }
}
