use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("missing value for parameter {0}")]
    MissingParameter(String),
    #[error("denominator evaluates to zero")]
    NumericDenominatorZero,
    #[error("nested projectors need odd N >= 3, got {0}")]
    EvenN(usize),
    #[error("generalized projector parameter {0} is zero")]
    ZeroParameter(String),
    #[error("generalized projector parameter {0} has u + 1/u = 0")]
    SingularParameter(String),
    #[error("invalid parameter set: {0}")]
    InvalidParamSet(String),
    #[error("state space {dim} exceeds the cap {cap}")]
    OrderOverflow { dim: u128, cap: u128 },
    #[error("eigensolver failed on block {0}")]
    EigensolverFailure(String),
    #[error("eigenvalue {0} matches no parameter linear form")]
    UnresolvedEigenvalue(String),
    #[error("order {0} is not prime")]
    NonPrimeOrder(usize),
    #[error("unsupported N = {0}")]
    UnsupportedN(usize),
    #[error("lambda is inadmissible: {0}")]
    InadmissibleLambda(String),
    #[error("matrix is singular: {0}")]
    SingularMatrix(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
