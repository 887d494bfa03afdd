//! Build the two logical backend slots (user model and assistant model) plus
//! the shared judge/embedding backend from configuration. Live backends get a
//! rate limiter and, when configured, an on-disk cache.

use std::sync::Arc;

use anyhow::Result;
use llm_gateway::{build_backend, BackendKind, ChatBackend};

use crate::config::{BackendChoice, Config};

pub struct Backends {
    pub user: Arc<dyn ChatBackend>,
    pub assistant: Arc<dyn ChatBackend>,
    /// Judge and embedding calls go through the assistant slot's provider.
    pub aux: Arc<dyn ChatBackend>,
}

fn mock_kind(config: &Config, seed_offset: u64) -> BackendKind {
    BackendKind::Mock {
        seed: config.seed.wrapping_add(seed_offset),
        latency_ms: config.mock.latency_ms,
        embedding_dim: config.mock.embedding_dim,
    }
}

fn live_kind(config: &Config, chat_model: &str) -> BackendKind {
    let live = BackendKind::LiveHttp {
        base_url: config.live.base_url.clone(),
        chat_model: chat_model.to_string(),
        embedding_model: config.live.embedding_model.clone(),
        api_key_env: Some(config.live.api_key_env.clone()),
        max_attempts: Some(config.live.max_attempts),
    };
    let limited = BackendKind::RateLimited {
        requests_per_minute: config.live.requests_per_minute,
        inner: Box::new(live),
    };
    match &config.live.cache_dir {
        Some(dir) => BackendKind::Cached {
            dir: dir.clone(),
            inner: Box::new(limited),
        },
        None => limited,
    }
}

pub fn build(config: &Config) -> Result<Backends> {
    match config.backend {
        BackendChoice::Mock => {
            // distinct seeds keep the two agents from echoing each other
            let user = build_backend(&mock_kind(config, 1))?;
            let assistant = build_backend(&mock_kind(config, 2))?;
            let aux = assistant.clone();
            Ok(Backends {
                user,
                assistant,
                aux,
            })
        }
        BackendChoice::Live => {
            let user_model = config
                .live
                .user_chat_model
                .clone()
                .unwrap_or_else(|| config.live.chat_model.clone());
            let user = build_backend(&live_kind(config, &user_model))?;
            let assistant = build_backend(&live_kind(config, &config.live.chat_model))?;
            let aux = assistant.clone();
            Ok(Backends {
                user,
                assistant,
                aux,
            })
        }
    }
}
