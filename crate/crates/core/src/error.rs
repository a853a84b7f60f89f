use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("modulus is not a primitive polynomial over F_{p}")]
    ModulusNotPrimitive { p: u64 },
    #[error("field order {order} exceeds the table cap {cap}")]
    TableCapExceeded { order: u64, cap: u64 },
    #[error("{m} does not divide the extension degree {n}")]
    NotADivisor { m: usize, n: usize },
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("operation needs a nonzero proper subspace, got dimension {dim} of {n}")]
    DegenerateSubspace { dim: usize, n: usize },
    #[error("coordinate vector has length {found}, expected {expected}")]
    BadCoordinates { expected: usize, found: usize },
    #[error("flag must contain at least one subspace")]
    EmptyFlag,
    #[error("subspace {index} is not strictly contained in subspace {next}", next = index + 1)]
    NotNested { index: usize },
    #[error("flag subspaces must be nonzero and proper (dimension {dim} of {n})")]
    NotProper { dim: usize, n: usize },
    #[error("invalid type vector: {0}")]
    InvalidType(String),
    #[error("type vectors differ: {left:?} vs {right:?}")]
    TypeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("zero set must be a nonempty set of positions in 1..={r}")]
    BadZeroSet { r: usize },
    #[error("invalid best friend vector: {0}")]
    InvalidBestFriendVector(String),
    #[error("best friend vector {bfv:?} is not realizable over F_q^{n}: {reason}")]
    NotRealizable { bfv: Vec<usize>, n: usize, reason: String },
    #[error("n = {n} is below the sufficient degree {required} for the general construction")]
    BelowSufficientDegree { n: usize, required: usize },
    #[error("enumeration of {size} items exceeds the cap {cap}")]
    EnumerationCapExceeded { size: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
