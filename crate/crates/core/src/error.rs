use thiserror::Error;

use crate::structures::AxiomReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("jet orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("division by h needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("division by h needs order at least 1")]
    OrderZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("duplicate entry at {0:?}")]
    DuplicateEntry(Vec<usize>),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid space: {0}")]
    Space(String),
    #[error("kind {kind} is missing roles {missing:?}")]
    MissingRoles { kind: String, missing: Vec<String> },
    #[error("kind {kind} does not accept roles {extra:?}")]
    UnexpectedRoles { kind: String, extra: Vec<String> },
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("unknown role {0:?}")]
    UnknownRole(String),
    #[error("operation {0} is not available for this input")]
    Unsupported(String),
    #[error("base structure fails its axioms ({} failures)", .0.failures.len())]
    InvalidBase(AxiomReport),
    #[error("layer 0 fails its axioms ({} failures)", .0.failures.len())]
    InvalidLayerZero(AxiomReport),
    #[error("layer 0 is not commutative: {0}")]
    NotCommutative(String),
    #[error("carrier operations must vanish")]
    NontrivialCarrier,
    #[error("derivations do not commute")]
    NonCommuting,
    #[error("map is not a derivation of role {0}")]
    NotDerivation(String),
    #[error("derivation does not preserve the base and carrier blocks")]
    BlockMixing,
    #[error("exponent pair {0:?} makes q1^i1 q2^i2 equal to 1")]
    Degenerate((u32, u32)),
    #[error("hypothesis failed: {name}")]
    Hypothesis { name: String, report: AxiomReport },
    #[error("internal consistency failure: {name}")]
    Consistency { name: String, report: AxiomReport },
    #[error("{0}")]
    Invalid(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Io(String),
    #[error("{field}: {source}")]
    Field { field: String, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
