//! Deterministic synthetic corpora for tests, benchmarks, and demos.
//!
//! Three generators cover the pipeline's needs: a three-class corpus whose
//! classes use disjoint token inventories (so a character-level model can
//! separate them), an emoji-tagged corpus for the relabeling flow, and a
//! small corpus seeded with known spelling-variant families in shared
//! contexts for the clustering preprocessor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{EmojiMap, LabeledCorpus, Sentence, Sentiment};
use crate::error::{Error, Result};

/// Shape of the generated three-class corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthConfig {
    pub train_per_class: usize,
    pub test_per_class: usize,
    /// Distinct words per class in each of the two synthetic "languages".
    pub words_per_lang: usize,
    pub min_words: usize,
    pub max_words: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            train_per_class: 100,
            test_per_class: 30,
            words_per_lang: 10,
            min_words: 4,
            max_words: 7,
            seed: 0,
        }
    }
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        if self.train_per_class == 0 || self.test_per_class == 0 {
            return Err(Error::BadConfig(
                "per-class sentence counts must be at least 1".to_string(),
            ));
        }
        if self.words_per_lang == 0 {
            return Err(Error::BadConfig(
                "words_per_lang must be at least 1".to_string(),
            ));
        }
        if self.min_words == 0 || self.min_words > self.max_words {
            return Err(Error::BadConfig(format!(
                "sentence length range {}..={} is invalid",
                self.min_words, self.max_words
            )));
        }
        Ok(())
    }
}

/// Class-marker characters for the two synthetic languages. Every word is
/// `<marker><2-digit index>`, so each class draws on trigrams no other
/// class ever produces.
fn class_tags(c: Sentiment) -> (char, char) {
    match c {
        Sentiment::Negative => ('n', 'm'),
        Sentiment::Neutral => ('t', 'u'),
        Sentiment::Positive => ('p', 'q'),
    }
}

fn class_inventory(c: Sentiment, words_per_lang: usize) -> Vec<String> {
    let (a, b) = class_tags(c);
    (0..words_per_lang)
        .flat_map(|i| [format!("{a}{i:02}"), format!("{b}{i:02}")])
        .collect()
}

fn sample_sentence(inventory: &[String], cfg: &SynthConfig, rng: &mut ChaCha8Rng) -> String {
    let len = rng.random_range(cfg.min_words..=cfg.max_words);
    let words: Vec<&str> = (0..len)
        .map(|_| inventory[rng.random_range(0..inventory.len())].as_str())
        .collect();
    words.join(" ")
}

/// Generate a (train, test) pair of three-class corpora in which each
/// class mixes two disjoint synthetic languages. Deterministic per seed.
pub fn three_class_corpus(cfg: &SynthConfig) -> Result<(LabeledCorpus, LabeledCorpus)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut make_split = |prefix: &str, per_class: usize| -> Result<LabeledCorpus> {
        let mut sentences = Vec::with_capacity(3 * per_class);
        for class in Sentiment::ALL {
            let inventory = class_inventory(class, cfg.words_per_lang);
            for i in 0..per_class {
                sentences.push(Sentence {
                    id: format!("{prefix}-{class}-{i:03}").to_lowercase(),
                    label: class,
                    text: sample_sentence(&inventory, cfg, &mut rng),
                    source: "synthetic".to_string(),
                });
            }
        }
        LabeledCorpus::new(sentences)
    };
    let train = make_split("train", cfg.train_per_class)?;
    let test = make_split("test", cfg.test_per_class)?;
    Ok((train, test))
}

/// Emoji markers used by [`emoji_corpus`], two per class.
pub fn emoji_markers() -> EmojiMap {
    EmojiMap::new(
        [
            ("😀", Sentiment::Positive),
            ("😊", Sentiment::Positive),
            ("😐", Sentiment::Neutral),
            ("🤔", Sentiment::Neutral),
            ("😞", Sentiment::Negative),
            ("😠", Sentiment::Negative),
        ]
        .into_iter()
        .map(|(e, c)| (e.to_string(), c))
        .collect(),
    )
}

/// Generate an emoji-tagged corpus for the relabeling flow. Every sentence
/// carries the placeholder label Neutral; the emoji decides the real class.
/// `kept_per_class` sentences end in a single class emoji, `conflicting`
/// sentences mix emojis of two classes, and `plain` sentences carry none —
/// the latter two groups are exactly what relabeling should drop.
pub fn emoji_corpus(
    kept_per_class: usize,
    conflicting: usize,
    plain: usize,
    seed: u64,
) -> Result<(LabeledCorpus, EmojiMap)> {
    if kept_per_class == 0 {
        return Err(Error::BadConfig(
            "kept_per_class must be at least 1".to_string(),
        ));
    }
    let cfg = SynthConfig {
        min_words: 4,
        max_words: 6,
        seed,
        ..SynthConfig::default()
    };
    let map = emoji_markers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sentences = Vec::new();
    for class in Sentiment::ALL {
        let inventory = class_inventory(class, cfg.words_per_lang);
        let emojis: Vec<char> = map.emojis_for(class).chars().collect();
        for i in 0..kept_per_class {
            let body = sample_sentence(&inventory, &cfg, &mut rng);
            let emoji = emojis[i % emojis.len()];
            sentences.push(Sentence {
                id: format!("emoji-{class}-{i:03}").to_lowercase(),
                label: Sentiment::Neutral,
                text: format!("{body} {emoji}"),
                source: "synthetic".to_string(),
            });
        }
    }
    let neutral_inventory = class_inventory(Sentiment::Neutral, cfg.words_per_lang);
    for i in 0..conflicting {
        let body = sample_sentence(&neutral_inventory, &cfg, &mut rng);
        sentences.push(Sentence {
            id: format!("emoji-conflict-{i:03}"),
            label: Sentiment::Neutral,
            text: format!("{body} 😀 😞"),
            source: "synthetic".to_string(),
        });
    }
    for i in 0..plain {
        let body = sample_sentence(&neutral_inventory, &cfg, &mut rng);
        sentences.push(Sentence {
            id: format!("emoji-plain-{i:03}"),
            label: Sentiment::Neutral,
            text: body,
            source: "synthetic".to_string(),
        });
    }
    Ok((LabeledCorpus::new(sentences)?, map))
}

/// The four spelling-variant families planted by
/// [`transliteration_variants_corpus`], as `(variant, occurrences)` lists in
/// descending frequency: the first entry is the intended canonical form.
pub fn variant_families() -> Vec<(Vec<(&'static str, usize)>, Sentiment)> {
    vec![
        (
            vec![
                ("khoobsurat", 16),
                ("khubsurat", 10),
                ("khubsoorat", 6),
                ("khbsurt", 4),
            ],
            Sentiment::Positive,
        ),
        (
            vec![("kyunki", 16), ("kyonki", 8), ("kyunkee", 4)],
            Sentiment::Neutral,
        ),
        (
            vec![("meherbani", 16), ("meharbani", 8), ("mehrbani", 4)],
            Sentiment::Positive,
        ),
        (vec![("aapka", 16), ("apka", 8)], Sentiment::Negative),
    ]
}

/// Context frames shared by every variant; `{}` is the variant slot. The
/// frame words are chosen so that no two of them — and no frame word and
/// family member — share a consonant skeleton, keeping the planted families
/// the only clusterable groups.
const VARIANT_FRAMES: [(&str, &str); 4] = [
    ("tum bahut", "lagti"),
    ("kitni", "baat hai"),
    ("wo", "insaan tha"),
    ("yeh", "kaam nahi"),
];

/// A fixed corpus in which four known spelling-variant families occur in
/// shared context frames, the most frequent member of each family being the
/// intended canonical form. Deterministic; no randomness involved.
pub fn transliteration_variants_corpus() -> LabeledCorpus {
    let mut sentences = Vec::new();
    for (family_idx, (members, label)) in variant_families().into_iter().enumerate() {
        let mut occurrence = 0usize;
        for (variant, count) in members {
            for _ in 0..count {
                let (before, after) = VARIANT_FRAMES[occurrence % VARIANT_FRAMES.len()];
                sentences.push(Sentence {
                    id: format!("var-{family_idx}-{occurrence:03}"),
                    label,
                    text: format!("{before} {variant} {after}"),
                    source: "synthetic".to_string(),
                });
                occurrence += 1;
            }
        }
    }
    LabeledCorpus::new(sentences).expect("generated ids are unique and texts non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::relabel_by_emoji;
    use crate::textprep::{consonant_skeleton, tokenize};
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn default_corpus_has_the_advertised_shape() {
        let (train, test) = three_class_corpus(&SynthConfig::default()).unwrap();
        assert_eq!(train.len(), 300);
        assert_eq!(test.len(), 90);
        assert_eq!(train.class_counts(), [100, 100, 100]);
        assert_eq!(test.class_counts(), [30, 30, 30]);
    }

    #[test]
    fn class_inventories_are_disjoint() {
        let (train, _) = three_class_corpus(&SynthConfig::default()).unwrap();
        let mut by_class: [BTreeSet<String>; 3] = Default::default();
        for s in train.iter() {
            for t in tokenize(&s.text) {
                by_class[s.label.index()].insert(t);
            }
        }
        for a in 0..3 {
            for b in a + 1..3 {
                assert!(
                    by_class[a].is_disjoint(&by_class[b]),
                    "classes {a} and {b} share tokens"
                );
            }
        }
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let cfg = SynthConfig::default();
        let a = three_class_corpus(&cfg).unwrap();
        let b = three_class_corpus(&cfg).unwrap();
        assert_eq!(a.0.sentences(), b.0.sentences());
        assert_eq!(a.1.sentences(), b.1.sentences());
        let other = SynthConfig { seed: 1, ..cfg };
        let c = three_class_corpus(&other).unwrap();
        assert_ne!(a.0.sentences(), c.0.sentences());
    }

    #[test]
    fn degenerate_configs_are_rejected() {
        for cfg in [
            SynthConfig { train_per_class: 0, ..SynthConfig::default() },
            SynthConfig { words_per_lang: 0, ..SynthConfig::default() },
            SynthConfig { min_words: 5, max_words: 4, ..SynthConfig::default() },
            SynthConfig { min_words: 0, ..SynthConfig::default() },
        ] {
            assert!(three_class_corpus(&cfg).is_err());
        }
    }

    #[test]
    fn emoji_corpus_relabels_to_the_expected_classes() {
        let (corpus, map) = emoji_corpus(10, 3, 2, 0).unwrap();
        assert_eq!(corpus.len(), 3 * 10 + 3 + 2);
        let outcome = relabel_by_emoji(&corpus, &map).unwrap();
        assert_eq!(outcome.dropped, 5);
        assert_eq!(outcome.corpus.class_counts(), [10, 10, 10]);
        // emojis are stripped from the kept text
        for s in outcome.corpus.iter() {
            for emoji in ["😀", "😊", "😐", "🤔", "😞", "😠"] {
                assert!(!s.text.contains(emoji), "emoji left in {:?}", s.text);
            }
        }
    }

    #[test]
    fn variant_corpus_frequencies_match_the_plan() {
        let corpus = transliteration_variants_corpus();
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for s in corpus.iter() {
            for t in tokenize(&s.text) {
                *counts.entry(t).or_default() += 1;
            }
        }
        for (members, _) in variant_families() {
            for (variant, expected) in &members {
                assert_eq!(counts[*variant], *expected, "count of {variant}");
            }
            // the first member is strictly the most frequent
            let canonical = members[0].0;
            for (other, _) in &members[1..] {
                assert!(counts[canonical] > counts[*other]);
            }
        }
    }

    #[test]
    fn only_planted_families_share_consonant_skeletons() {
        let corpus = transliteration_variants_corpus();
        let family_words: BTreeSet<&str> = variant_families()
            .iter()
            .flat_map(|(members, _)| members.iter().map(|(w, _)| *w))
            .collect();
        let mut by_skeleton: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for s in corpus.iter() {
            for t in tokenize(&s.text) {
                by_skeleton
                    .entry(consonant_skeleton(&t))
                    .or_default()
                    .insert(t);
            }
        }
        for (skeleton, words) in &by_skeleton {
            if words.len() > 1 {
                assert!(
                    words.iter().all(|w| family_words.contains(w.as_str())),
                    "frame words share skeleton {skeleton}: {words:?}"
                );
            }
        }
        // and each family collapses onto one skeleton
        for (members, _) in variant_families() {
            let skeletons: BTreeSet<String> = members
                .iter()
                .map(|(w, _)| consonant_skeleton(w))
                .collect();
            assert_eq!(skeletons.len(), 1, "family {members:?} split skeletons");
        }
    }
}
