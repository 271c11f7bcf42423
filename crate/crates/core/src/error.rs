use thiserror::Error;

use crate::fields::Polynomial;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("band entry would land on row {row} < 0")]
    NegativeIndexLeak { row: i64 },
    #[error("operation requires a prime field")]
    WrongField,
    #[error("operator has off-diagonal bands")]
    NotEventuallyDiagonal,
    #[error("eigenvalue {0} listed twice")]
    DuplicateLambda(String),
    #[error("field has {available} elements, {needed} distinct scalars needed")]
    FieldTooSmall { needed: u64, available: u64 },
    #[error("invalid idempotent family: {0}")]
    InvalidFamily(String),
    #[error("family is not summable: basis vector {0} meets infinitely many members")]
    NotSummable(usize),
    #[error("operator is not idempotent")]
    NotIdempotent,
    #[error("members {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("unsupported family combination: {0}")]
    UnsupportedFamily(String),
    #[error("result leaves the banded operator class: {0}")]
    OutsideRepresentation(String),
    #[error("window of dimension {window} too small, need at least {needed}")]
    TruncationTooSmall { window: usize, needed: usize },
    #[error("construction needs an infinite field")]
    FiniteFieldUnsupported,
    #[error("decomposition failed verification: clause {0}")]
    VerifyFailed(String),
    #[error("map is not a unital algebra homomorphism: {0}")]
    NotAlgebraHom(String),
    #[error("basis does not span a unital subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("{0} does not split into distinct linear factors")]
    DoesNotSplitSimply(Polynomial),
    #[error("radical over a prime field is only computed for commutative algebras")]
    UnsupportedCharCase,
    #[error("structure constants are not a unital associative algebra: {0}")]
    NotAssociative(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
