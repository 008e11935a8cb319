use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse group descriptor {input:?}: {reason}")]
    Descriptor { input: String, reason: String },
    #[error("cannot construct group: {0}")]
    Construction(String),
    #[error("no prime q = 1 mod {exponent} with q > 2*sqrt({order}) below 2^31")]
    NoSuitablePrime { exponent: u64, order: u64 },
    #[error("class matrix splitting did not reach one-dimensional eigenspaces: {0}")]
    Splitting(String),
    #[error("degree recovery failed: {0}")]
    DegreeRecovery(String),
    #[error("dimension mismatch: expected {expected} points, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
