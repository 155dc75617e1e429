use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension d={0} out of range (need 2 <= d <= {max})", max = crate::MAX_DIM)]
    BadDimension(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("basis mismatch: expected {expected:?}, got {got:?}")]
    BasisMismatch { expected: crate::algebra::Basis, got: crate::algebra::Basis },

    #[error("{op} takes {expected} argument(s), got {got}")]
    Arity { op: &'static str, expected: usize, got: usize },

    #[error("state of {amplitudes} amplitudes exceeds budget of {budget}")]
    Budget { amplitudes: u128, budget: usize },

    #[error("degenerate patch: {0}")]
    DegeneratePatch(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("invalid string operator: {0}")]
    InvalidString(String),

    #[error("operator support index {index} out of range for {edges} edges")]
    Support { index: usize, edges: usize },

    #[error("state shape mismatch: {0}")]
    Shape(String),

    #[error("projection onto the logical space vanished: {0}")]
    ZeroProjection(String),

    #[error("procedure error: {0}")]
    Procedure(String),

    #[error("logical leakage {leakage:.3e} exceeds tolerance {tol:.1e}")]
    Leakage { leakage: f64, tol: f64 },

    #[error("malformed diagram: {0}")]
    Diagram(String),

    #[error("rewrite pattern does not match: {0}")]
    NoMatch(String),

    #[error("unknown gate kind: {0}")]
    UnknownGate(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
