//! Run manifests and resume checkpoints. Both are deterministic: no wall
//! clock, so a rerun with the same seed produces identical bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Append-only progress record for a resumable stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobState {
    pub job_id: String,
    pub stage: String,
    pub config_fingerprint: String,
    /// Record ids in completion order (completion order equals input order).
    pub completed: Vec<String>,
    pub counters: BTreeMap<String, u64>,
}

impl JobState {
    pub fn new(stage: &str, config_fingerprint: &str, input_id: &str) -> JobState {
        JobState {
            job_id: core_model::content_id("job", &[stage, config_fingerprint, input_id]),
            stage: stage.to_string(),
            config_fingerprint: config_fingerprint.to_string(),
            completed: Vec::new(),
            counters: BTreeMap::new(),
        }
    }

    pub fn path(out_dir: &Path, stage: &str) -> PathBuf {
        out_dir.join(format!("{stage}-checkpoint.json"))
    }

    pub fn save(&self, out_dir: &Path) -> Result<()> {
        let path = Self::path(out_dir, &self.stage);
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(self)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn load(out_dir: &Path, stage: &str) -> Result<Option<JobState>> {
        let path = Self::path(out_dir, stage);
        if !path.exists() {
            return Ok(None);
        }
        let raw = std::fs::read_to_string(&path)
            .with_context(|| format!("reading checkpoint {}", path.display()))?;
        Ok(Some(
            serde_json::from_str(&raw).context("parsing checkpoint")?,
        ))
    }

    /// Resume precondition: the effective configuration must be unchanged.
    pub fn check_fingerprint(&self, fingerprint: &str) -> Result<()> {
        if self.config_fingerprint != fingerprint {
            bail!(
                "refusing to resume stage {}: config fingerprint changed ({} -> {}); \
                 rerun without --resume or restore the original configuration",
                self.stage,
                &self.config_fingerprint[..12.min(self.config_fingerprint.len())],
                &fingerprint[..12.min(fingerprint.len())],
            );
        }
        Ok(())
    }
}

/// Per-stage run manifest: effective config, counts, and provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub stage: String,
    pub job_id: String,
    pub config_fingerprint: String,
    pub seed: u64,
    pub version: String,
    pub backend_fingerprints: BTreeMap<String, String>,
    pub counts: BTreeMap<String, u64>,
    pub effective_config: serde_json::Value,
}

impl RunManifest {
    pub fn save(&self, out_dir: &Path) -> Result<()> {
        let path = out_dir.join(format!("{}-manifest.json", self.stage));
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(self)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// Count complete (newline-terminated, parseable as JSON) lines and truncate
/// any partial trailing line left by a crash mid-write.
pub fn reconcile_jsonl(path: &Path) -> Result<usize> {
    if !path.exists() {
        return Ok(0);
    }
    let raw = std::fs::read(path)?;
    let mut good_end = 0usize;
    let mut count = 0usize;
    let mut start = 0usize;
    for (i, &byte) in raw.iter().enumerate() {
        if byte == b'\n' {
            let line = &raw[start..i];
            let parses = !line.is_empty()
                && std::str::from_utf8(line)
                    .ok()
                    .map(|s| serde_json::from_str::<serde_json::Value>(s).is_ok())
                    .unwrap_or(false);
            if parses {
                count += 1;
                good_end = i + 1;
            } else if line.is_empty() {
                good_end = i + 1;
            } else {
                break;
            }
            start = i + 1;
        }
    }
    if good_end < raw.len() {
        tracing::warn!(
            path = %path.display(),
            dropped_bytes = raw.len() - good_end,
            "truncating partial trailing record"
        );
        let file = std::fs::OpenOptions::new().write(true).open(path)?;
        file.set_len(good_end as u64)?;
    }
    Ok(count)
}
