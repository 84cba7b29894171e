//! Versioned single-file model serialization.
//!
//! The file is one JSON document carrying the format version, the three
//! dimensions, the trigram vocabulary, and every parameter at full double
//! precision (floats are printed in shortest-round-trip form), so a
//! save → load → save cycle is byte-identical.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SiameseParams;
use crate::error::{Error, Result};
use crate::io;
use crate::textprep::TrigramVocab;

const MODEL_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    d: usize,
    h: usize,
    e: usize,
    vocab: BTreeMap<String, u32>,
    params: SiameseParams,
}

/// Write the model (parameters + vocabulary) to one JSON file.
pub fn save_model(p: &SiameseParams, vocab: &TrigramVocab, path: &Path) -> Result<()> {
    if p.vocab_size() != vocab.len() {
        return Err(Error::ShapeMismatch(format!(
            "embedding table covers {} trigram ids but the vocabulary has {}",
            p.vocab_size(),
            vocab.len()
        )));
    }
    let file = ModelFile {
        version: MODEL_VERSION,
        d: p.out_dim(),
        h: p.hidden_dim(),
        e: p.embed_dim(),
        vocab: vocab.to_id_map(),
        params: p.clone(),
    };
    io::write_json(path, &file)
}

/// Load a model saved by [`save_model`], validating version, vocabulary,
/// and every parameter shape. The dimensions come from the file itself.
pub fn load_model(path: &Path) -> Result<(SiameseParams, TrigramVocab)> {
    let file: ModelFile = io::read_json(path)?;
    if file.version != MODEL_VERSION {
        return Err(Error::VersionMismatch {
            found: file.version,
            expected: MODEL_VERSION,
        });
    }
    let vocab = TrigramVocab::from_id_map(file.vocab).map_err(|e| Error::ModelParse {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    let p = file.params;
    p.embedding.table.validate_shape(vocab.len() + 1, file.e)?;
    p.fw.validate_shape(file.e, file.h)?;
    p.bw.validate_shape(file.e, file.h)?;
    p.proj.w.validate_shape(file.d, 2 * file.h)?;
    if p.proj.b.len() != file.d {
        return Err(Error::ShapeMismatch(format!(
            "expected projection bias of length {}, found {}",
            file.d,
            p.proj.b.len()
        )));
    }
    Ok((p, vocab))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> (SiameseParams, TrigramVocab) {
        let vocab = TrigramVocab::build(["khoobsurat hai", "bohot accha din"]);
        let p = SiameseParams::init(vocab.len(), 4, 3, 5, 77);
        (p, vocab)
    }

    #[test]
    fn round_trip_is_byte_identical_and_preserves_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let first = dir.path().join("model.json");
        let second = dir.path().join("model2.json");
        let (p, vocab) = fixture();
        save_model(&p, &vocab, &first).unwrap();
        let (loaded, loaded_vocab) = load_model(&first).unwrap();
        assert_eq!(loaded, p);
        assert_eq!(loaded_vocab, vocab);
        save_model(&loaded, &loaded_vocab, &second).unwrap();
        assert_eq!(
            std::fs::read(&first).unwrap(),
            std::fs::read(&second).unwrap()
        );

        let seq = loaded_vocab.encode("khoobsurat din").unwrap();
        assert_eq!(p.forward(&seq).unwrap(), loaded.forward(&seq).unwrap());
    }

    #[test]
    fn dimensions_come_from_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let vocab = TrigramVocab::build(["abc"]);
        let p = SiameseParams::init(vocab.len(), 6, 2, 9, 3);
        save_model(&p, &vocab, &path).unwrap();
        let (loaded, _) = load_model(&path).unwrap();
        assert_eq!(loaded.out_dim(), 9);
        assert_eq!(loaded.hidden_dim(), 2);
        assert_eq!(loaded.embed_dim(), 6);
    }

    #[test]
    fn version_mismatch_is_its_own_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let (p, vocab) = fixture();
        save_model(&p, &vocab, &path).unwrap();
        let text = std::fs::read_to_string(&path)
            .unwrap()
            .replacen("\"version\": 1", "\"version\": 2", 1);
        std::fs::write(&path, text).unwrap();
        assert!(matches!(
            load_model(&path),
            Err(Error::VersionMismatch { found: 2, expected: 1 })
        ));
    }

    #[test]
    fn truncated_file_fails_to_parse() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let (p, vocab) = fixture();
        save_model(&p, &vocab, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        assert!(matches!(load_model(&path), Err(Error::Json { .. })));
    }

    #[test]
    fn tampered_shape_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let (p, vocab) = fixture();
        save_model(&p, &vocab, &path).unwrap();
        let text = std::fs::read_to_string(&path)
            .unwrap()
            .replacen("\"d\": 5", "\"d\": 6", 1);
        std::fs::write(&path, text).unwrap();
        assert!(matches!(load_model(&path), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn mismatched_vocab_is_rejected_at_save_time() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let vocab = TrigramVocab::build(["abcdef"]);
        let p = SiameseParams::init(1, 4, 3, 5, 1); // too few embedding rows
        assert!(save_model(&p, &vocab, &path).is_err());
    }
}
