//! Write the synthetic demo datasets to disk so the CLI can be exercised
//! without real data:
//!
//! ```text
//! cargo run -p sacmt-core --example gen_synthetic -- [out_dir] [seed]
//! ```
//!
//! Produces `train.tsv`, `test.tsv`, `emoji.tsv`, `emoji_map.json`, and
//! `variants.tsv` under `out_dir` (default `synthetic-data`).

use std::path::Path;

use sacmt_core::corpus::save_dataset;
use sacmt_core::synth::{
    emoji_corpus, three_class_corpus, transliteration_variants_corpus, SynthConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    let out_dir = args.get(1).map(String::as_str).unwrap_or("synthetic-data");
    let seed: u64 = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(0);
    let dir = Path::new(out_dir);
    std::fs::create_dir_all(dir)?;

    let cfg = SynthConfig { seed, ..SynthConfig::default() };
    let (train, test) = three_class_corpus(&cfg)?;
    save_dataset(&train, &dir.join("train.tsv"))?;
    save_dataset(&test, &dir.join("test.tsv"))?;

    let (emoji, map) = emoji_corpus(40, 5, 5, seed)?;
    save_dataset(&emoji, &dir.join("emoji.tsv"))?;
    map.save(&dir.join("emoji_map.json"))?;

    save_dataset(&transliteration_variants_corpus(), &dir.join("variants.tsv"))?;

    println!(
        "wrote train.tsv ({}), test.tsv ({}), emoji.tsv ({}), variants.tsv to {}",
        train.len(),
        test.len(),
        emoji.len(),
        dir.display()
    );
    Ok(())
}
