//! Spelling-variant clustering for romanized code-mixed text.
//!
//! Transliteration variants of one word ("khoobsurat", "khubsurat",
//! "khubsoorat") share their consonant skeleton and appear in similar
//! contexts. Words are grouped by skeleton, linked when their skip-gram
//! vectors are similar enough, and every cluster is rewritten to its most
//! frequent member.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::corpus::{LabeledCorpus, Sentence};
use crate::error::{Error, Result};
use crate::io;
use crate::skipgram::WordEmbeddings;
use crate::textprep::{consonant_skeleton, tokenize};
use crate::numcore::cosine;

/// Similarity used for variant detection: cosine of the two words'
/// skip-gram vectors when their consonant skeletons match, 0 otherwise
/// (also 0 when either word has no vector).
pub fn variation_similarity(v1: &str, v2: &str, emb: &WordEmbeddings) -> f64 {
    if consonant_skeleton(v1) != consonant_skeleton(v2) {
        return 0.0;
    }
    match (emb.vector(v1), emb.vector(v2)) {
        (Some(a), Some(b)) => cosine(a, b).unwrap_or(0.0),
        _ => 0.0,
    }
}

/// One variant cluster: the canonical spelling plus all members with their
/// corpus frequencies (canonical first, then by descending frequency).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub canonical: String,
    pub members: Vec<(String, usize)>,
}

/// Word → canonical-spelling rewriting, plus the cluster listing behind it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClusterMap {
    map: BTreeMap<String, String>,
    clusters: Vec<Cluster>,
}

impl ClusterMap {
    /// Canonical spelling of `word`; words outside every cluster map to
    /// themselves.
    pub fn canonical<'a>(&'a self, word: &'a str) -> &'a str {
        self.map.get(word).map(String::as_str).unwrap_or(word)
    }

    /// Number of words that get rewritten.
    pub fn rewrites(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Multi-member clusters, for reporting. Empty on maps loaded from
    /// disk, which carry only the rewriting.
    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        io::write_json(path, &self.map)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let map: BTreeMap<String, String> = io::read_json(path)?;
        for (word, canonical) in &map {
            if map.contains_key(canonical) {
                return Err(Error::ModelParse {
                    path: path.to_path_buf(),
                    msg: format!("canonical form {canonical} of {word} is itself rewritten"),
                });
            }
        }
        Ok(ClusterMap {
            map,
            clusters: Vec::new(),
        })
    }

    /// Aligned text listing of every cluster with member frequencies.
    pub fn render_report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} clusters, {} words rewritten\n",
            self.clusters.len(),
            self.map.len()
        ));
        for cluster in &self.clusters {
            let members: Vec<String> = cluster
                .members
                .iter()
                .map(|(w, f)| format!("{w}({f})"))
                .collect();
            out.push_str(&format!(
                "{} <- {}\n",
                cluster.canonical,
                members.join(" ")
            ));
        }
        out
    }
}

/// Token frequencies of a corpus in first-occurrence order.
pub fn word_frequencies(corpus: &LabeledCorpus) -> Vec<(String, usize)> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut order: Vec<String> = Vec::new();
    for text in corpus.texts() {
        for token in tokenize(text) {
            let c = counts.entry(token.clone()).or_insert(0);
            if *c == 0 {
                order.push(token);
            }
            *c += 1;
        }
    }
    order.into_iter().map(|w| {
        let c = counts[&w];
        (w, c)
    }).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

/// Group words into variant clusters.
///
/// Words are bucketed by consonant skeleton; within a bucket, pairs with
/// [`variation_similarity`] ≥ `tau` are linked and connected components
/// become clusters. Each cluster rewrites to its most frequent member
/// (ties to the lexicographically smaller word).
pub fn cluster_variants(
    words: &[(String, usize)],
    emb: &WordEmbeddings,
    tau: f64,
) -> Result<ClusterMap> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::BadConfig(format!(
            "clustering threshold must be in (0, 1], got {tau}"
        )));
    }
    for (word, freq) in words {
        if *freq == 0 {
            return Err(Error::BadConfig(format!("word {word} has frequency 0")));
        }
    }

    // bucket by skeleton, preserving first-occurrence order of buckets
    let mut bucket_of: HashMap<String, usize> = HashMap::new();
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for (i, (word, _)) in words.iter().enumerate() {
        let skel = consonant_skeleton(word);
        let next = buckets.len();
        let b = *bucket_of.entry(skel).or_insert(next);
        if b == buckets.len() {
            buckets.push(Vec::new());
        }
        buckets[b].push(i);
    }

    let mut map = BTreeMap::new();
    let mut clusters = Vec::new();
    for bucket in buckets {
        if bucket.len() < 2 {
            continue;
        }
        let mut uf = UnionFind::new(bucket.len());
        for a in 0..bucket.len() {
            for b in (a + 1)..bucket.len() {
                let (wa, wb) = (&words[bucket[a]].0, &words[bucket[b]].0);
                if variation_similarity(wa, wb, emb) >= tau {
                    uf.union(a, b);
                }
            }
        }
        let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..bucket.len() {
            components.entry(uf.find(k)).or_default().push(k);
        }
        for (_, component) in components {
            if component.len() < 2 {
                continue;
            }
            let mut members: Vec<(String, usize)> = component
                .iter()
                .map(|&k| words[bucket[k]].clone())
                .collect();
            // canonical = highest frequency, ties lexicographic
            members.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            let canonical = members[0].0.clone();
            for (word, _) in &members[1..] {
                map.insert(word.clone(), canonical.clone());
            }
            clusters.push(Cluster { canonical, members });
        }
    }
    Ok(ClusterMap { map, clusters })
}

/// Rewrite every token of every sentence to its canonical spelling.
pub fn apply_clusters(corpus: &LabeledCorpus, map: &ClusterMap) -> LabeledCorpus {
    let sentences: Vec<Sentence> = corpus
        .iter()
        .map(|s| {
            let tokens = tokenize(&s.text);
            let rewritten: Vec<&str> = tokens.iter().map(|t| map.canonical(t)).collect();
            Sentence {
                id: s.id.clone(),
                label: s.label,
                text: rewritten.join(" "),
                source: s.source.clone(),
            }
        })
        .collect();
    LabeledCorpus::new(sentences).expect("rewriting preserves ids and non-empty text")
}
