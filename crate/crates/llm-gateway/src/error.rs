use thiserror::Error;

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("embedding input must be non-empty")]
    EmptyInput,
    #[error("backend credentials missing: environment variable {var} is not set")]
    MissingCredentials { var: String },
    #[error("backend request failed after {attempts} attempts: {last}")]
    RetriesExhausted { attempts: u32, last: String },
    #[error("http {status}: {body}")]
    Http { status: u16, body: String },
    #[error("transport: {0}")]
    Transport(String),
    #[error("bad response: {0}")]
    BadResponse(String),
    #[error("cache i/o: {0}")]
    Cache(String),
    #[error("scripted mock ran out of responses")]
    ScriptExhausted,
}

impl GatewayError {
    /// Transient failures are worth retrying; 4xx-class and structural errors
    /// are not.
    pub fn is_retryable(&self) -> bool {
        match self {
            GatewayError::Transport(_) => true,
            GatewayError::Http { status, .. } => *status >= 500,
            _ => false,
        }
    }
}
