use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("entry ({row}, {col}) has degree {found}, expected {expected}")]
    DegreeMismatch { row: usize, col: usize, expected: i64, found: i64 },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("matrix is not skew-symmetric: {0}")]
    NotSkew(String),

    #[error("even size required")]
    EvenSizeRequired,

    #[error("odd size required")]
    OddSizeRequired,

    #[error("not a complex: d_{index} composed with d_{next} is nonzero", next = index + 1)]
    NotAComplex { index: i64 },

    #[error("characteristic 2 is not supported by this operation")]
    CharacteristicTwo,

    #[error("this operation requires characteristic 2")]
    CharacteristicNotTwo,

    #[error("the unit ideal defines the empty scheme")]
    EmptyScheme,

    #[error("zero module")]
    ZeroModule,

    #[error("module is not of finite length")]
    NotFiniteLength,

    #[error("not a Gorenstein codimension-3 ideal: {0}")]
    NotGorenstein(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
