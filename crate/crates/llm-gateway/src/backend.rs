use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use async_trait::async_trait;

use crate::error::GatewayError;
use crate::request::{ChatRequest, EmbeddingVector};

/// A chat-completion and embedding provider. Implementations must be safe for
/// concurrent use from many tasks.
#[async_trait]
pub trait ChatBackend: Send + Sync {
    /// Produce a completion for the request. Returned text is non-empty.
    async fn complete(&self, req: &ChatRequest) -> Result<String, GatewayError>;

    /// Embed each text; one vector per input, uniform dimension.
    async fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>, GatewayError>;

    /// Human-readable description of the backend and its parameters, recorded
    /// in dialogue provenance.
    fn fingerprint(&self) -> String;

    /// Model identifier placed into requests routed to this backend.
    fn model_name(&self) -> String;
}

/// Transparent wrapper that counts forwarded calls; used by tests and by the
/// pipeline to report API usage.
pub struct CountingBackend {
    inner: Arc<dyn ChatBackend>,
    chat_calls: AtomicU64,
    embed_calls: AtomicU64,
}

impl CountingBackend {
    pub fn new(inner: Arc<dyn ChatBackend>) -> CountingBackend {
        CountingBackend {
            inner,
            chat_calls: AtomicU64::new(0),
            embed_calls: AtomicU64::new(0),
        }
    }

    pub fn chat_calls(&self) -> u64 {
        self.chat_calls.load(Ordering::Relaxed)
    }

    pub fn embed_calls(&self) -> u64 {
        self.embed_calls.load(Ordering::Relaxed)
    }
}

#[async_trait]
impl ChatBackend for CountingBackend {
    async fn complete(&self, req: &ChatRequest) -> Result<String, GatewayError> {
        self.chat_calls.fetch_add(1, Ordering::Relaxed);
        self.inner.complete(req).await
    }

    async fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>, GatewayError> {
        self.embed_calls.fetch_add(1, Ordering::Relaxed);
        self.inner.embed(texts).await
    }

    fn fingerprint(&self) -> String {
        self.inner.fingerprint()
    }

    fn model_name(&self) -> String {
        self.inner.model_name()
    }
}
