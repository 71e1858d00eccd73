use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. `kind()` gives the stable,
/// machine-readable code the CLI prints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a positive integer")]
    ZeroNatural,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("elements live on different divisor chains ({0} vs {1})")]
    ChainMismatch(String, String),
    #[error("radix {0} is invalid (must be at least 2)")]
    BadRadix(usize),
    #[error("depth {requested} exceeds chain depth {available}")]
    DepthExceeded { requested: usize, available: usize },
    #[error("digit {digit} at position {position} is out of range for radix {radix}")]
    RadixMismatch {
        digit: usize,
        position: usize,
        radix: usize,
    },
    #[error("index {index} is out of range for level {level} (size {size})")]
    IndexOutOfRange { index: usize, level: usize, size: usize },
    #[error("words {0} and {1} have different lengths")]
    Unbalanced(String, String),
    #[error("unbalanced generator d[{0},{1}] requires a homogeneous chain")]
    UnbalancedOnGeneralChain(String, String),
    #[error("operation requires a homogeneous chain, got {0}")]
    NotHomogeneous(String),
    #[error("size {0} does not divide the chain degree {1}")]
    SizeNotDivisor(u64, String),
    #[error("element has a nonzero component outside degree zero")]
    NotDegreeZero,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("rank {rank} is below the required rank {required}")]
    RankDeficient { rank: usize, required: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("{0}")]
    Parse(String),
    #[error("generator {0} is not available in the {1} algebra")]
    KindMismatch(String, String),
    #[error("internal validation failed: {0}")]
    Validation(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroNatural => "ZERO_NATURAL",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::FieldMismatch(..) => "FIELD_MISMATCH",
            Error::ChainMismatch(..) => "CHAIN_MISMATCH",
            Error::BadRadix(_) => "BAD_RADIX",
            Error::DepthExceeded { .. } => "DEPTH_EXCEEDED",
            Error::RadixMismatch { .. } => "RADIX_MISMATCH",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::Unbalanced(..) => "UNBALANCED",
            Error::UnbalancedOnGeneralChain(..) => "UNBALANCED_ON_GENERAL_CHAIN",
            Error::NotHomogeneous(_) => "NOT_HOMOGENEOUS",
            Error::SizeNotDivisor(..) => "SIZE_NOT_DIVISOR",
            Error::NotDegreeZero => "NOT_DEGREE_ZERO",
            Error::Overflow(_) => "OVERFLOW",
            Error::ZeroVector => "ZERO_VECTOR",
            Error::RankDeficient { .. } => "RANK_DEFICIENT",
            Error::ShapeMismatch(_) => "SHAPE_MISMATCH",
            Error::InvalidParameter(_) => "INVALID_PARAMETER",
            Error::Syntax { .. } => "SYNTAX",
            Error::Parse(_) => "PARSE",
            Error::KindMismatch(..) => "KIND_MISMATCH",
            Error::Validation(_) => "VALIDATION",
        }
    }
}
