//! Uniform abstraction over chat-completion and embedding providers.
//!
//! The pipeline talks to every model through [`ChatBackend`]. Implementations:
//! a deterministic [`MockBackend`] for offline runs and tests, a [`LiveBackend`]
//! speaking an OpenAI-compatible HTTP API, and composable wrappers for on-disk
//! response caching ([`CachedBackend`]), sliding-window rate limiting
//! ([`RateLimitedBackend`]), and call counting ([`CountingBackend`]).

mod backend;
mod cache;
mod error;
mod kind;
mod live;
mod mock;
mod rate_limit;
mod request;
mod retry;

pub use backend::{ChatBackend, CountingBackend};
pub use cache::CachedBackend;
pub use error::GatewayError;
pub use kind::{build_backend, BackendKind};
pub use live::LiveBackend;
pub use mock::{mock_completion, mock_embedding, MockBackend};
pub use rate_limit::RateLimitedBackend;
pub use request::{ChatMessage, ChatRequest, EmbeddingVector, MessageRole};
pub use retry::RetryPolicy;
