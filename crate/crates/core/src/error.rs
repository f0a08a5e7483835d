use thiserror::Error;

use crate::scalar::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("jet truncation mismatch: order {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("operation requires characteristic != 2")]
    CharacteristicTwo,

    #[error("segment index out of range: D_{{{i},{j}}} on a word of length {len}")]
    SegmentOutOfRange { i: usize, j: usize, len: usize },
    #[error("letter index {letter} out of range for a space of dimension {dim}")]
    LetterOutOfRange { letter: usize, dim: usize },
    #[error("element is not homogeneous of length {0}")]
    NotHomogeneous(usize),
    #[error("gram matrix is not alternating: {0}")]
    NotAlternating(String),
    #[error("invalid symplectic space: {0}")]
    InvalidSpace(String),
    #[error("space mismatch between operands")]
    SpaceMismatch,

    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix ring mismatch")]
    RingMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("linear map does not preserve the form: <phi e_{i}, phi e_{j}> differs")]
    NotFormPreserving { i: usize, j: usize },
    #[error("expected a degree-0 element (all necklaces of length 2)")]
    NotDegreeZero,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("operation needs dim V = 2 with <x, y> = 1")]
    NotPlanar,
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
