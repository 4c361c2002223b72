use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("lattice rank {0} is not supported (hull computations need rank <= 3)")]
    UnsupportedRank(usize),
    #[error("polytope is not a full-dimensional lattice polygon")]
    NotFullDimPolygon,
    #[error("generators do not span the ambient space")]
    NotFullRank,
    #[error("cycle has no nonzero weight")]
    ZeroCycle,
    #[error("cannot evaluate at y = 1")]
    YEqualsOne,
    #[error("no generic displacement vector found after {0} attempts")]
    DegenerateDisplacement(usize),
    #[error("measure has no value for cone {0}")]
    MissingMeasureValue(String),
    #[error("non-integral result: {0}")]
    NonIntegralResult(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
