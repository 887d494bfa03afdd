//! On-disk response cache keyed by a cryptographic hash of the canonicalized
//! request. Values are written atomically (temp file + rename); identical keys
//! always carry identical values, so last-write-wins is safe.

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use async_trait::async_trait;
use sha2::{Digest, Sha256};

use crate::backend::ChatBackend;
use crate::error::GatewayError;
use crate::request::{ChatRequest, EmbeddingVector};

pub struct CachedBackend {
    inner: Arc<dyn ChatBackend>,
    dir: PathBuf,
    write_counter: AtomicU64,
}

impl CachedBackend {
    pub fn new(
        inner: Arc<dyn ChatBackend>,
        dir: impl Into<PathBuf>,
    ) -> Result<CachedBackend, GatewayError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|e| GatewayError::Cache(e.to_string()))?;
        Ok(CachedBackend {
            inner,
            dir,
            write_counter: AtomicU64::new(0),
        })
    }

    fn chat_key(&self, req: &ChatRequest) -> String {
        let canonical = serde_json::json!({
            "kind": "chat",
            "model": req.model_name,
            "temperature": req.temperature,
            "max_output_tokens": req.max_output_tokens,
            "messages": req.messages,
        });
        hash_hex(canonical.to_string().as_bytes())
    }

    fn embed_key(&self, texts: &[String]) -> String {
        let canonical = serde_json::json!({ "kind": "embed", "texts": texts });
        hash_hex(canonical.to_string().as_bytes())
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(key)
    }

    fn read(&self, key: &str) -> Option<String> {
        std::fs::read_to_string(self.path_for(key)).ok()
    }

    fn write(&self, key: &str, value: &str) -> Result<(), GatewayError> {
        let unique = self.write_counter.fetch_add(1, Ordering::Relaxed);
        let tmp = self
            .dir
            .join(format!(".{key}.{}.{unique}.tmp", std::process::id()));
        std::fs::write(&tmp, value).map_err(|e| GatewayError::Cache(e.to_string()))?;
        std::fs::rename(&tmp, self.path_for(key))
            .map_err(|e| GatewayError::Cache(e.to_string()))?;
        Ok(())
    }
}

fn hash_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[async_trait]
impl ChatBackend for CachedBackend {
    async fn complete(&self, req: &ChatRequest) -> Result<String, GatewayError> {
        let key = self.chat_key(req);
        if let Some(hit) = self.read(&key) {
            return Ok(hit);
        }
        let fresh = self.inner.complete(req).await?;
        self.write(&key, &fresh)?;
        Ok(fresh)
    }

    async fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>, GatewayError> {
        if texts.is_empty() {
            return Err(GatewayError::EmptyInput);
        }
        let key = self.embed_key(texts);
        if let Some(hit) = self.read(&key) {
            let vectors: Vec<EmbeddingVector> = serde_json::from_str(&hit)
                .map_err(|e| GatewayError::Cache(format!("corrupt cache entry {key}: {e}")))?;
            return Ok(vectors);
        }
        let fresh = self.inner.embed(texts).await?;
        let encoded = serde_json::to_string(&fresh).expect("vectors serialize");
        self.write(&key, &encoded)?;
        Ok(fresh)
    }

    fn fingerprint(&self) -> String {
        format!("cached({})", self.inner.fingerprint())
    }

    fn model_name(&self) -> String {
        self.inner.model_name()
    }
}
