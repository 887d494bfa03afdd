//! Live backend speaking an OpenAI-compatible chat-completions and embeddings
//! HTTP API. Base URL and model names are configurable; the API key comes from
//! an environment variable resolved at construction time.

use async_trait::async_trait;
use serde::Deserialize;

use crate::backend::ChatBackend;
use crate::error::GatewayError;
use crate::request::{ChatRequest, EmbeddingVector, MessageRole};
use crate::retry::RetryPolicy;

pub struct LiveBackend {
    http: reqwest::Client,
    base_url: String,
    chat_model: String,
    embedding_model: String,
    api_key: Option<String>,
    policy: RetryPolicy,
}

impl LiveBackend {
    /// `api_key_env`: name of the environment variable holding the key, or
    /// `None` for unauthenticated endpoints (local stubs, proxies).
    pub fn new(
        base_url: impl Into<String>,
        chat_model: impl Into<String>,
        embedding_model: impl Into<String>,
        api_key_env: Option<&str>,
        policy: RetryPolicy,
    ) -> Result<LiveBackend, GatewayError> {
        let api_key = match api_key_env {
            Some(var) => {
                Some(
                    std::env::var(var).map_err(|_| GatewayError::MissingCredentials {
                        var: var.to_string(),
                    })?,
                )
            }
            None => None,
        };
        Ok(LiveBackend {
            http: reqwest::Client::new(),
            base_url: base_url.into().trim_end_matches('/').to_string(),
            chat_model: chat_model.into(),
            embedding_model: embedding_model.into(),
            api_key,
            policy,
        })
    }

    fn post(&self, path: &str, body: serde_json::Value) -> reqwest::RequestBuilder {
        let mut builder = self
            .http
            .post(format!("{}{path}", self.base_url))
            .json(&body);
        if let Some(key) = &self.api_key {
            builder = builder.bearer_auth(key);
        }
        builder
    }

    async fn send(&self, path: &str, body: &serde_json::Value) -> Result<String, GatewayError> {
        let response = self
            .post(path, body.clone())
            .send()
            .await
            .map_err(|e| GatewayError::Transport(e.to_string()))?;
        let status = response.status();
        let text = response
            .text()
            .await
            .map_err(|e| GatewayError::Transport(e.to_string()))?;
        if !status.is_success() {
            return Err(GatewayError::Http {
                status: status.as_u16(),
                body: truncate(&text, 400),
            });
        }
        Ok(text)
    }

    /// One logical request: transient failures retried per the policy,
    /// 4xx-class errors surfaced immediately.
    async fn send_with_retries(
        &self,
        path: &str,
        body: &serde_json::Value,
    ) -> Result<String, GatewayError> {
        let mut last = None;
        for attempt in 1..=self.policy.max_attempts {
            match self.send(path, body).await {
                Ok(text) => return Ok(text),
                Err(err) if err.is_retryable() => {
                    tracing::debug!(attempt, error = %err, "retryable backend failure");
                    last = Some(err);
                    if attempt < self.policy.max_attempts {
                        let delay = {
                            let mut rng = rand::rng();
                            self.policy.delay_before_retry(attempt, &mut rng)
                        };
                        tokio::time::sleep(delay).await;
                    }
                }
                Err(err) => return Err(err),
            }
        }
        Err(GatewayError::RetriesExhausted {
            attempts: self.policy.max_attempts,
            last: last.map(|e| e.to_string()).unwrap_or_default(),
        })
    }
}

fn truncate(s: &str, max: usize) -> String {
    if s.len() <= max {
        s.to_string()
    } else {
        let mut end = max;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{}…", &s[..end])
    }
}

fn role_str(role: MessageRole) -> &'static str {
    match role {
        MessageRole::System => "system",
        MessageRole::User => "user",
        MessageRole::Assistant => "assistant",
    }
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: ChoiceMessage,
}

#[derive(Deserialize)]
struct ChoiceMessage {
    content: Option<String>,
}

#[derive(Deserialize)]
struct EmbeddingResponse {
    data: Vec<EmbeddingDatum>,
}

#[derive(Deserialize)]
struct EmbeddingDatum {
    embedding: Vec<f64>,
}

#[async_trait]
impl ChatBackend for LiveBackend {
    async fn complete(&self, req: &ChatRequest) -> Result<String, GatewayError> {
        let model = if req.model_name.is_empty() {
            self.chat_model.clone()
        } else {
            req.model_name.clone()
        };
        let body = serde_json::json!({
            "model": model,
            "temperature": req.temperature,
            "max_tokens": req.max_output_tokens,
            "messages": req.messages.iter().map(|m| {
                serde_json::json!({ "role": role_str(m.role), "content": m.content })
            }).collect::<Vec<_>>(),
        });

        let text = self.send_with_retries("/chat/completions", &body).await?;
        let parsed: ChatResponse = serde_json::from_str(&text)
            .map_err(|e| GatewayError::BadResponse(format!("chat response: {e}")))?;
        let content = parsed
            .choices
            .first()
            .and_then(|c| c.message.content.clone())
            .unwrap_or_default();
        if content.trim().is_empty() {
            return Err(GatewayError::BadResponse("empty completion".into()));
        }
        Ok(content)
    }

    async fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>, GatewayError> {
        if texts.is_empty() {
            return Err(GatewayError::EmptyInput);
        }
        let body = serde_json::json!({ "model": self.embedding_model, "input": texts });
        let text = self.send_with_retries("/embeddings", &body).await?;
        let parsed: EmbeddingResponse = serde_json::from_str(&text)
            .map_err(|e| GatewayError::BadResponse(format!("embedding response: {e}")))?;
        if parsed.data.len() != texts.len() {
            return Err(GatewayError::BadResponse(format!(
                "expected {} embeddings, got {}",
                texts.len(),
                parsed.data.len()
            )));
        }
        let dim = parsed.data.first().map(|d| d.embedding.len()).unwrap_or(0);
        parsed
            .data
            .into_iter()
            .map(|d| {
                if d.embedding.len() != dim {
                    return Err(GatewayError::BadResponse("ragged embedding batch".into()));
                }
                EmbeddingVector::new(d.embedding)
            })
            .collect()
    }

    fn fingerprint(&self) -> String {
        format!(
            "live_http(base={},chat={},embed={})",
            self.base_url, self.chat_model, self.embedding_model
        )
    }

    fn model_name(&self) -> String {
        self.chat_model.clone()
    }
}
