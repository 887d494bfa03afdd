use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("fan-out {n} outside allowed range {min}..={max}")]
    FanoutOutOfRange { n: usize, min: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("backend produced {got} distinct items of {wanted} wanted after retries")]
    Shortfall { wanted: usize, got: usize },
    #[error("sample of {requested} exceeds deduplicated pool of {available}")]
    SampleTooLarge { requested: usize, available: usize },
    #[error(transparent)]
    Gateway(#[from] llm_gateway::GatewayError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input at line {line}: {reason}")]
    MalformedInput { line: usize, reason: String },
}
