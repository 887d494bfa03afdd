use serde::{Deserialize, Serialize};

use crate::error::GatewayError;

/// Message roles accepted by chat-completion providers. Only requests carry a
/// system role; stored dialogues never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MessageRole {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: MessageRole,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: impl Into<String>) -> ChatMessage {
        ChatMessage {
            role: MessageRole::System,
            content: content.into(),
        }
    }

    pub fn user(content: impl Into<String>) -> ChatMessage {
        ChatMessage {
            role: MessageRole::User,
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> ChatMessage {
        ChatMessage {
            role: MessageRole::Assistant,
            content: content.into(),
        }
    }
}

/// One chat-completion request. Construction enforces the request invariants:
/// at least one message and a non-assistant final message.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
    pub max_output_tokens: u32,
    pub model_name: String,
}

impl ChatRequest {
    pub fn new(
        messages: Vec<ChatMessage>,
        temperature: f64,
        max_output_tokens: u32,
        model_name: impl Into<String>,
    ) -> Result<ChatRequest, GatewayError> {
        if messages.is_empty() {
            return Err(GatewayError::InvalidRequest(
                "messages must be non-empty".into(),
            ));
        }
        if messages.last().map(|m| m.role) == Some(MessageRole::Assistant) {
            return Err(GatewayError::InvalidRequest(
                "last message must not be an assistant message".into(),
            ));
        }
        if !(temperature >= 0.0 && temperature.is_finite()) {
            return Err(GatewayError::InvalidRequest(format!(
                "temperature must be a finite non-negative number, got {temperature}"
            )));
        }
        if max_output_tokens == 0 {
            return Err(GatewayError::InvalidRequest(
                "max_output_tokens must be positive".into(),
            ));
        }
        Ok(ChatRequest {
            messages,
            temperature,
            max_output_tokens,
            model_name: model_name.into(),
        })
    }

    /// The final message, which drives mock generation and logging.
    pub fn last_message(&self) -> &ChatMessage {
        self.messages
            .last()
            .expect("requests are non-empty by construction")
    }
}

/// A fixed-length embedding. All values finite; dimension uniform per batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingVector {
    pub values: Vec<f64>,
}

impl EmbeddingVector {
    pub fn new(values: Vec<f64>) -> Result<EmbeddingVector, GatewayError> {
        if values.is_empty() {
            return Err(GatewayError::BadResponse("empty embedding".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(GatewayError::BadResponse(
                "non-finite embedding value".into(),
            ));
        }
        Ok(EmbeddingVector { values })
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn cosine_similarity(&self, other: &EmbeddingVector) -> f64 {
        let dot: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum();
        dot / (self.norm() * other.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_messages() {
        assert!(ChatRequest::new(vec![], 1.0, 64, "m").is_err());
    }

    #[test]
    fn rejects_trailing_assistant() {
        let messages = vec![ChatMessage::user("hi"), ChatMessage::assistant("yo")];
        assert!(ChatRequest::new(messages, 1.0, 64, "m").is_err());
    }

    #[test]
    fn rejects_bad_decoding_params() {
        assert!(ChatRequest::new(vec![ChatMessage::user("x")], -1.0, 64, "m").is_err());
        assert!(ChatRequest::new(vec![ChatMessage::user("x")], f64::NAN, 64, "m").is_err());
        assert!(ChatRequest::new(vec![ChatMessage::user("x")], 1.0, 0, "m").is_err());
    }

    #[test]
    fn cosine_of_identical_unit_vectors_is_one() {
        let v = EmbeddingVector::new(vec![0.6, 0.8]).unwrap();
        assert!((v.cosine_similarity(&v) - 1.0).abs() < 1e-12);
    }
}
