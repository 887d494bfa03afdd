use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("invalid history: {0}")]
    InvalidHistory(String),
    #[error(transparent)]
    Gateway(#[from] llm_gateway::GatewayError),
}
