//! Optional JSON config file backing the command-line flags.
//!
//! The file is a flat object keyed by long flag name (`{"margin": 0.4,
//! "left": "train.tsv"}`). Values given on the command line always win;
//! the config fills in whatever was omitted.

use std::path::Path;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

#[derive(Debug, Default)]
pub struct ConfigFile {
    values: Map<String, Value>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(ConfigFile::default());
        };
        let raw = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let values: Map<String, Value> = serde_json::from_str(&raw)
            .with_context(|| format!("config file {} must be a JSON object", path.display()))?;
        Ok(ConfigFile { values })
    }

    /// Typed lookup by long flag name (without the leading dashes).
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .with_context(|| format!("config key {key:?} has the wrong type")),
        }
    }

    /// Boolean switch: true if the command line set it or the config says so.
    pub fn switch(&self, cli: bool, key: &str) -> Result<bool> {
        Ok(cli || self.get::<bool>(key)?.unwrap_or(false))
    }
}

/// Command-line value if present, else the config file's.
pub fn pick<T: DeserializeOwned>(cli: Option<T>, cfg: &ConfigFile, key: &str) -> Result<Option<T>> {
    match cli {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

/// Like [`pick`] but with a default for fully omitted settings.
pub fn pick_or<T: DeserializeOwned>(
    cli: Option<T>,
    cfg: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T> {
    Ok(pick(cli, cfg, key)?.unwrap_or(default))
}

/// Reject a missing setting that has no sensible default.
pub fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.with_context(|| format!("--{flag} is required (on the command line or in the config file)"))
}
