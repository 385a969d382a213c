use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("ambient rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("relation {0} has a nonzero constant term; the quotient would not be local")]
    UnitRelation(String),
    #[error("ideal is not primary to the maximal ideal")]
    NotMPrimary,
    #[error("ideal has no attached parameter ideal Q")]
    MissingReduction,
    #[error("Q is not contained in the ideal: generator {0} fails membership")]
    ReductionNotContained(String),
    #[error("Q is not a parameter ideal: {0}")]
    NotParameterIdeal(String),
    #[error("{what} not reached within the bound {bound}")]
    BoundExceeded { what: &'static str, bound: usize },
    #[error("the zero module is not allowed here")]
    ZeroModule,
    #[error("ring dimension check failed: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
