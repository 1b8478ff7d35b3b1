use thiserror::Error;

/// Everything that can go wrong in the library. The CLI maps each variant to a
/// stable machine-readable `code` via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cyclic order at position {position} is {value}; every order must be >= 1")]
    NonPositiveOrder { position: usize, value: i64 },

    #[error("group of {requested} points exceeds the size cap of {cap}")]
    SizeCapExceeded { requested: u128, cap: usize },

    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("residue {value} at position {position} is not reduced modulo {modulus}")]
    UnreducedResidue {
        position: usize,
        value: i64,
        modulus: usize,
    },

    #[error("exponent {exponent} exceeds the cap of {cap}")]
    ExponentCapExceeded { exponent: i64, cap: u64 },

    #[error("|z|^k is not representable in double precision (|z| = {modulus}, k = {exponent})")]
    OverflowToInfinity { modulus: f64, exponent: i64 },

    #[error("character base must be a nonzero finite complex number")]
    ZeroBase,

    #[error("prefix depth {depth} is smaller than the required depth {required}")]
    DepthTooSmall { depth: usize, required: usize },

    #[error("sequence group base must be >= 2, got {0}")]
    InvalidBase(i64),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("invalid Haar weight {0}; the point mass must be positive and finite")]
    InvalidWeight(f64),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPositiveOrder { .. } => "NonPositiveOrder",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UnreducedResidue { .. } => "UnreducedResidue",
            Error::ExponentCapExceeded { .. } => "ExponentCapExceeded",
            Error::OverflowToInfinity { .. } => "OverflowToInfinity",
            Error::ZeroBase => "ZeroBase",
            Error::DepthTooSmall { .. } => "DepthTooSmall",
            Error::InvalidBase(_) => "InvalidBase",
            Error::NonFinite(_) => "NonFinite",
            Error::InvalidWeight(_) => "InvalidWeight",
        }
    }

    pub(crate) fn shape(expected: impl ToString, actual: impl ToString) -> Self {
        Error::ShapeMismatch {
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
