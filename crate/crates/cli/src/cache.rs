//! On-disk result cache: one JSON run record per key, written atomically.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "DTVOL_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileOutput {
    pub path: PathBuf,
    pub contents: String,
}

/// Everything a command emits: its standard output and any files.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Outputs {
    pub stdout: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<FileOutput>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub params: Value,
    pub version: String,
    pub outputs: Outputs,
    pub wall_time_s: f64,
}

/// SHA-256 of the canonical `(command, params, version)` JSON. Object keys
/// are sorted by `serde_json`, so equal parameter sets give equal keys.
pub fn cache_key(command: &str, params: &Value) -> String {
    let canonical = json!({
        "command": command,
        "params": params,
        "version": dtvol_core::VERSION,
    })
    .to_string();
    format!("{:x}", Sha256::digest(canonical.as_bytes()))
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    #[cfg(test)]
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: Some(dir.into()),
        }
    }

    /// `$DTVOL_CACHE_DIR`, else `$XDG_CACHE_HOME/dtvol`, else `~/.cache/dtvol`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| Path::new(&d).join("dtvol")))
            .or_else(|| {
                std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("dtvol"))
            });
        Cache { dir }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, key: &str) -> Option<RunRecord> {
        let path = self.path(key)?;
        let text = std::fs::read_to_string(&path).ok()?;
        match serde_json::from_str(&text) {
            Ok(rec) => Some(rec),
            Err(e) => {
                eprintln!(
                    "warning: ignoring unreadable cache entry {}: {e}",
                    path.display()
                );
                None
            }
        }
    }

    /// Writes to a temporary file in the cache directory and renames it into
    /// place, so concurrent writers never expose a partial record.
    pub fn put(&self, key: &str, record: &RunRecord) -> Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, record)?;
        tmp.persist(&path)
            .with_context(|| format!("writing cache entry {}", path.display()))?;
        Ok(())
    }

    /// Returns the cached outputs for `(command, params)` or computes and
    /// stores them.
    pub fn run<F>(&self, command: &str, params: Value, compute: F) -> Result<Outputs>
    where
        F: FnOnce() -> Result<Outputs>,
    {
        let key = cache_key(command, &params);
        if let Some(rec) = self.get(&key) {
            return Ok(rec.outputs);
        }
        let start = Instant::now();
        let outputs = compute()?;
        let record = RunRecord {
            command: command.to_string(),
            params,
            version: dtvol_core::VERSION.to_string(),
            outputs: outputs.clone(),
            wall_time_s: start.elapsed().as_secs_f64(),
        };
        if let Err(e) = self.put(&key, &record) {
            eprintln!("warning: result not cached: {e:#}");
        }
        Ok(outputs)
    }
}
