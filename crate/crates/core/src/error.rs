use thiserror::Error;

use crate::poly::Dims;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: Dims, right: Dims },
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at point {point}")]
    DenominatorVanishes { point: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("tilt points do not span the required derivatives of order {order}")]
    InsufficientTilts { order: u32 },
    #[error("operator has non-constant coefficients or a premultiplier")]
    NonConstantCoefficient,
    #[error("operator {index} ({detail}) is not Noetherian for the ideal")]
    VerificationFailed { index: usize, detail: String },
    #[error("generator sets are not equivalent; witness operator {witness}")]
    NotEquivalent { witness: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
