//! End-to-end checks of the `sacmt` binary: exit codes, the train → eval
//! round trip, config-file merging, and output-file atomicity.

use std::path::Path;
use std::process::{Command, Output};

use sacmt_core::classify::Metrics;
use sacmt_core::corpus::save_dataset;
use sacmt_core::synth::{three_class_corpus, SynthConfig};
use tempfile::TempDir;

fn sacmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sacmt"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stdout not JSON ({e}): {text}"))
}

/// Small three-class corpus on disk; returns (train, test) paths.
fn write_fixture(dir: &Path) -> (String, String) {
    let cfg = SynthConfig {
        train_per_class: 8,
        test_per_class: 4,
        seed: 42,
        ..SynthConfig::default()
    };
    let (train, test) = three_class_corpus(&cfg).unwrap();
    let train_path = dir.join("train.tsv");
    let test_path = dir.join("test.tsv");
    save_dataset(&train, &train_path).unwrap();
    save_dataset(&test, &test_path).unwrap();
    (
        train_path.to_string_lossy().into_owned(),
        test_path.to_string_lossy().into_owned(),
    )
}

#[test]
fn no_arguments_is_a_usage_error() {
    let out = sacmt(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = sacmt(&["stats", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_file_fails_with_an_error_line() {
    let out = sacmt(&["stats", "--input", "/definitely/not/here.tsv"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "stderr was: {err}");
}

#[test]
fn missing_required_flag_names_the_flag() {
    let out = sacmt(&["embed"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--model"));
}

#[test]
fn train_then_eval_produces_metrics() {
    let dir = TempDir::new().unwrap();
    let (train, test) = write_fixture(dir.path());
    let model = dir.path().join("model.json");
    let metrics_path = dir.path().join("metrics.json");
    let table_path = dir.path().join("table.txt");

    let out = sacmt(&[
        "train",
        "--left",
        &train,
        "--out",
        model.to_str().unwrap(),
        "--no-preprocess",
        "--d",
        "8",
        "--h",
        "4",
        "--e",
        "8",
        "--epochs",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "train failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = stdout_json(&out);
    assert_eq!(summary["command"], "train");
    assert!(summary["pairs"].as_u64().unwrap() > 0);

    let out = sacmt(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--anchors",
        &train,
        "--test",
        &test,
        "--out",
        metrics_path.to_str().unwrap(),
        "--table-out",
        table_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "eval failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let metrics: Metrics =
        serde_json::from_str(&std::fs::read_to_string(&metrics_path).unwrap()).unwrap();
    assert!((0.0..=1.0).contains(&metrics.accuracy));
    let table = std::fs::read_to_string(&table_path).unwrap();
    assert!(table.starts_with("Models  Accuracy  Precision  Recall  F-score"));
}

#[test]
fn clustering_words_with_distinct_skeletons_is_the_identity() {
    use sacmt_core::corpus::{Sentence, Sentiment};
    let dir = TempDir::new().unwrap();
    // Every word has a different consonant skeleton, so no pair can merge
    // no matter how similar their embeddings are.
    let texts = [
        "sun moon star rock",
        "tree fish bird walk",
        "sun tree moon fish",
        "star bird rock walk",
    ];
    let corpus = sacmt_core::corpus::LabeledCorpus::new(
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| Sentence {
                id: format!("s{i}"),
                label: Sentiment::Neutral,
                text: t.to_string(),
                source: "test".to_string(),
            })
            .collect(),
    )
    .unwrap();
    let input = dir.path().join("distinct.tsv");
    save_dataset(&corpus, &input).unwrap();

    let out = sacmt(&[
        "cluster",
        "--input",
        input.to_str().unwrap(),
        "--out",
        dir.path().join("clusters.json").to_str().unwrap(),
        "--dim",
        "8",
        "--seed",
        "1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "cluster failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = stdout_json(&out);
    assert_eq!(summary["identity"], true);
    assert_eq!(summary["rewritten_words"], 0);
}

#[test]
fn config_file_supplies_flags_and_the_command_line_overrides_it() {
    let dir = TempDir::new().unwrap();
    let (train, test) = write_fixture(dir.path());
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(
        &cfg_path,
        format!(r#"{{"input": "{train}", "out": "{}"}}"#, dir.path().join("unused.json").display()),
    )
    .unwrap();

    let from_cfg = sacmt(&["stats", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(from_cfg.status.code(), Some(0));
    assert_eq!(stdout_json(&from_cfg)["sentences"], 24);

    let overridden = sacmt(&[
        "stats",
        "--config",
        cfg_path.to_str().unwrap(),
        "--input",
        &test,
    ]);
    assert_eq!(overridden.status.code(), Some(0));
    assert_eq!(stdout_json(&overridden)["sentences"], 12);
}

#[test]
fn a_failed_run_leaves_an_existing_output_file_untouched() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("model.json");
    std::fs::write(&out_path, "precious bytes").unwrap();

    let out = sacmt(&[
        "train",
        "--left",
        "/definitely/not/here.tsv",
        "--out",
        out_path.to_str().unwrap(),
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), "precious bytes");
}
