use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial is not homogeneous of degree {expected}")]
    WrongDegree { expected: usize },
    #[error("curve is not smooth: {0}")]
    NotSmooth(String),
    #[error("product bundle {0} lies outside the supported range")]
    TargetOverflow(String),
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("inconsistent graded dimensions: {0}")]
    InconsistentDims(String),
    #[error("columns do not span a subspace of the acting space: {0}")]
    NotASubspace(String),
    #[error("degree {0} lies outside the module window")]
    OutOfWindow(i64),
    #[error("table has no nonzero entry in the quadratic strand")]
    NoNonzero,
    #[error("unsupported conormal bundle: {0}")]
    UnsupportedConormal(String),
    #[error("degree window too small: need {needed}, have {have}")]
    DegreeWindowTooSmall { needed: usize, have: usize },
    #[error("induced map is ill-defined: {0}")]
    IllDefined(String),
    #[error("invalid divisor witness: {0}")]
    InvalidWitness(String),
    #[error("no splitting divisor of degree at most {0} in the point pool")]
    NotFound(usize),
    #[error("curve model does not support this operation: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
