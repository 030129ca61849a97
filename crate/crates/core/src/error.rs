use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operation undefined on the zero function")]
    ZeroFunction,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid curve model: {0}")]
    InvalidModel(String),
    #[error("invalid vector field: {0}")]
    InvalidVectorField(String),
    #[error("parameter not in field: {0}")]
    NotInField(String),
    #[error("counting budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not an isolated singularity")]
    NotIsolated,
    #[error("precision exhausted at {0}")]
    PrecisionExhausted(String),
    #[error("blow-up depth exceeded {0}")]
    DepthExceeded(usize),
    #[error("odd self-intersection {0} on a non-integral exceptional curve")]
    OddSelfIntersection(i64),
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("incompatible p-closure types: {0}")]
    IncompatibleClosure(String),
    #[error("unclassified singularity with orders ({0},{1})")]
    Unclassified(u32, u32),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
