use thiserror::Error;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("token list is empty")]
    EmptyTokens,
    #[error("threshold must lie strictly between 0 and 1, got {0}")]
    InvalidThreshold(f64),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("need at least {needed} records, found {found}")]
    TooFewRecords { needed: usize, found: usize },
    #[error("every utterance fell below the minimum token count")]
    AllUtterancesSkipped,
    #[error("embedding batch has inconsistent dimensions")]
    RaggedEmbeddings,
    #[error("embedding with near-zero norm")]
    DegenerateEmbedding,
    #[error(transparent)]
    Gateway(#[from] llm_gateway::GatewayError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input at line {line}: {reason}")]
    MalformedInput { line: usize, reason: String },
}
