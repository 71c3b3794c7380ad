use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("bad braid letter: {0}")]
    BadLetter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("minimal polynomial violated: product of (R - lambda) is not zero")]
    MinPolyViolated,
    #[error("eigenvalue {0} is not a unit monomial")]
    NonUnitEigenvalue(String),
    #[error("index convention validation failed: {0}")]
    ConventionValidationFailed(String),
    #[error("unsupported N = {0}")]
    UnsupportedN(usize),
    #[error("twist equations have no nonzero solution")]
    NoSolution,
    #[error("closed form mismatch for {what}: computed {computed}, expected {expected}")]
    ClosedFormMismatch { what: String, computed: String, expected: String },
    #[error("R is not in the span of the supplied basis")]
    NotDecomposable,
    #[error("partial closure is not a scalar multiple of the identity")]
    NotScalar,
    #[error("nonzero radical part in a closed invariant: {0}")]
    RadicalResidue(String),
    #[error("strand cap exceeded: {strands} strands > cap {cap}")]
    StrandCap { strands: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
