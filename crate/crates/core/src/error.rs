use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
}

pub type Result<T> = std::result::Result<T, RelError>;
