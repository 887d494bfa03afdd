//! Declarative backend configuration. Wrapper kinds compose, e.g. a cache over
//! a rate limit over a live backend.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::backend::ChatBackend;
use crate::cache::CachedBackend;
use crate::error::GatewayError;
use crate::live::LiveBackend;
use crate::mock::MockBackend;
use crate::rate_limit::RateLimitedBackend;
use crate::retry::RetryPolicy;

fn default_embedding_dim() -> usize {
    16
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BackendKind {
    Mock {
        seed: u64,
        #[serde(default)]
        latency_ms: u64,
        #[serde(default = "default_embedding_dim")]
        embedding_dim: usize,
    },
    LiveHttp {
        base_url: String,
        chat_model: String,
        embedding_model: String,
        /// Environment variable naming the API key; `None` sends no auth.
        #[serde(default)]
        api_key_env: Option<String>,
        #[serde(default)]
        max_attempts: Option<u32>,
    },
    Cached {
        dir: PathBuf,
        inner: Box<BackendKind>,
    },
    RateLimited {
        requests_per_minute: usize,
        inner: Box<BackendKind>,
    },
}

/// Instantiate the configured backend stack.
pub fn build_backend(kind: &BackendKind) -> Result<Arc<dyn ChatBackend>, GatewayError> {
    match kind {
        BackendKind::Mock {
            seed,
            latency_ms,
            embedding_dim,
        } => {
            let mut mock = MockBackend::new(*seed).with_embedding_dim(*embedding_dim);
            if *latency_ms > 0 {
                mock = mock.with_latency(Duration::from_millis(*latency_ms));
            }
            Ok(Arc::new(mock))
        }
        BackendKind::LiveHttp {
            base_url,
            chat_model,
            embedding_model,
            api_key_env,
            max_attempts,
        } => {
            let policy = RetryPolicy {
                max_attempts: max_attempts.unwrap_or(RetryPolicy::default().max_attempts),
                ..Default::default()
            };
            Ok(Arc::new(LiveBackend::new(
                base_url.clone(),
                chat_model.clone(),
                embedding_model.clone(),
                api_key_env.as_deref(),
                policy,
            )?))
        }
        BackendKind::Cached { dir, inner } => {
            let inner = build_backend(inner)?;
            Ok(Arc::new(CachedBackend::new(inner, dir.clone())?))
        }
        BackendKind::RateLimited {
            requests_per_minute,
            inner,
        } => {
            let inner = build_backend(inner)?;
            Ok(Arc::new(RateLimitedBackend::new(
                inner,
                *requests_per_minute,
            )?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip_through_serde() {
        let kind = BackendKind::Cached {
            dir: PathBuf::from("/tmp/cache"),
            inner: Box::new(BackendKind::RateLimited {
                requests_per_minute: 30,
                inner: Box::new(BackendKind::LiveHttp {
                    base_url: "http://localhost:1234/v1".into(),
                    chat_model: "m".into(),
                    embedding_model: "e".into(),
                    api_key_env: None,
                    max_attempts: None,
                }),
            }),
        };
        let json = serde_json::to_string(&kind).unwrap();
        let back: BackendKind = serde_json::from_str(&json).unwrap();
        assert_eq!(kind, back);
    }

    #[test]
    fn composed_stack_builds_and_fingerprints() {
        let dir = tempfile::tempdir().unwrap();
        let kind = BackendKind::Cached {
            dir: dir.path().to_path_buf(),
            inner: Box::new(BackendKind::RateLimited {
                requests_per_minute: 10,
                inner: Box::new(BackendKind::Mock {
                    seed: 3,
                    latency_ms: 0,
                    embedding_dim: 16,
                }),
            }),
        };
        let backend = build_backend(&kind).unwrap();
        assert_eq!(
            backend.fingerprint(),
            "cached(rate_limited(rpm=10,mock(seed=3)))"
        );
    }

    #[test]
    fn live_without_credentials_is_a_configuration_error() {
        let var = "TEST_GATEWAY_KEY_THAT_DOES_NOT_EXIST";
        std::env::remove_var(var);
        let kind = BackendKind::LiveHttp {
            base_url: "http://localhost:9/v1".into(),
            chat_model: "m".into(),
            embedding_model: "e".into(),
            api_key_env: Some(var.into()),
            max_attempts: None,
        };
        match build_backend(&kind) {
            Err(GatewayError::MissingCredentials { var: v }) => assert_eq!(v, var),
            Err(other) => panic!("expected MissingCredentials, got {other:?}"),
            Ok(_) => panic!("expected MissingCredentials, got a backend"),
        }
    }
}
