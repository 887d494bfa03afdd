use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("item {item_id} lacks an answer for model {model}")]
    MissingAnswer { item_id: String, model: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Gateway(#[from] llm_gateway::GatewayError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input at line {line}: {reason}")]
    MalformedInput { line: usize, reason: String },
}
