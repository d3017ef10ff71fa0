use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("eigenvalue clusters unresolvable at gap {gap:e}; retry with a new random element")]
    EigenClusters { gap: f64 },

    #[error("eigenvalue iteration failed to converge")]
    EigenConvergence,

    #[error("integer recognition failed for {0}")]
    IntegerRecognition(String),

    #[error("check `{name}` failed with residual {residual:e}")]
    AxiomFailure { name: String, residual: f64 },

    #[error("not a Hopf algebra: the antipode system is inconsistent")]
    NoAntipode,

    #[error("group order {0} exceeds the desk-scale bound 64")]
    OrderBound(usize),

    #[error("random retries exhausted: {0}")]
    RetriesExhausted(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
