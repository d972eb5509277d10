use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tuple needs at least 3 entries, got {0}")]
    TupleTooShort(usize),
    #[error("entry {0} is not a positive integer")]
    NonPositiveEntry(usize),
    #[error("index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration is not supported for n = {0}")]
    UnsupportedDimension(usize),
    #[error("n = {0} needs an explicit entry bound")]
    MissingBound(usize),
    #[error("expected cotype {expected}, tuple has cotype {actual}")]
    WrongCotype { expected: usize, actual: usize },
    #[error("index {0} is not the offending index of the tuple")]
    WrongIndex(usize),
    #[error("expected a tuple of length {expected}, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("amplitude must be negative, got {0}")]
    NonNegativeAmplitude(String),
    #[error("stabilizer order must be at least 2, got {0}")]
    OrderTooSmall(u64),
    #[error("entry too large for explicit enumeration: {0}")]
    TooLarge(String),
    #[error("unsupported singularity configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("curve {name:?} is not contractible: self-intersection {self_int}, arithmetic genus {p_a}")]
    NotContractible { name: String, self_int: i64, p_a: i64 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid presentation: {0}")]
    MalformedRelation(String),
    #[error("derivation has {images} images but the ring has {vars} variables")]
    VariableMismatch { images: usize, vars: usize },
    #[error("derivation does not preserve the defining ideal")]
    IllDefinedDerivation,
    #[error("no witness of this kind: {0}")]
    NoWitness(String),
}
