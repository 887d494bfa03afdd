//! Sliding-window rate limiter: over any 60-second window at most `rpm`
//! requests are forwarded. Excess callers wait; nothing is dropped. The window
//! state is the only shared synchronization point, and all timing goes through
//! `tokio::time` so tests can drive it with a paused clock.

use std::collections::VecDeque;
use std::sync::Arc;
use std::time::Duration;

use async_trait::async_trait;
use tokio::time::Instant;

use crate::backend::ChatBackend;
use crate::error::GatewayError;
use crate::request::{ChatRequest, EmbeddingVector};

const WINDOW: Duration = Duration::from_secs(60);

pub struct RateLimitedBackend {
    inner: Arc<dyn ChatBackend>,
    rpm: usize,
    stamps: tokio::sync::Mutex<VecDeque<Instant>>,
}

impl RateLimitedBackend {
    pub fn new(
        inner: Arc<dyn ChatBackend>,
        requests_per_minute: usize,
    ) -> Result<RateLimitedBackend, GatewayError> {
        if requests_per_minute == 0 {
            return Err(GatewayError::InvalidRequest(
                "requests_per_minute must be at least 1".into(),
            ));
        }
        Ok(RateLimitedBackend {
            inner,
            rpm: requests_per_minute,
            stamps: tokio::sync::Mutex::new(VecDeque::new()),
        })
    }

    pub fn requests_per_minute(&self) -> usize {
        self.rpm
    }

    /// Block until a slot is free, then claim it.
    async fn acquire(&self) {
        loop {
            let wait = {
                let mut stamps = self.stamps.lock().await;
                let now = Instant::now();
                while let Some(&front) = stamps.front() {
                    if now.duration_since(front) >= WINDOW {
                        stamps.pop_front();
                    } else {
                        break;
                    }
                }
                if stamps.len() < self.rpm {
                    stamps.push_back(now);
                    return;
                }
                let front = *stamps.front().expect("non-empty when at capacity");
                (front + WINDOW).saturating_duration_since(now)
            };
            tokio::time::sleep(wait.max(Duration::from_millis(1))).await;
        }
    }
}

#[async_trait]
impl ChatBackend for RateLimitedBackend {
    async fn complete(&self, req: &ChatRequest) -> Result<String, GatewayError> {
        self.acquire().await;
        self.inner.complete(req).await
    }

    async fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>, GatewayError> {
        self.acquire().await;
        self.inner.embed(texts).await
    }

    fn fingerprint(&self) -> String {
        format!(
            "rate_limited(rpm={},{})",
            self.rpm,
            self.inner.fingerprint()
        )
    }

    fn model_name(&self) -> String {
        self.inner.model_name()
    }
}
