use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{f} exceeds the supported bound 2^20")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("operands belong to different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(u64, u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("no embedding of GF({sub}) into GF({ext})")]
    NoEmbedding { sub: u64, ext: u64 },
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("duality cannot act on a bare vector point")]
    DualityOnVector,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("orbit exceeded memory budget after {partial} points")]
    OrbitBudget { partial: u64 },
    #[error("permutation degree {0} too large for the chain budget")]
    DegreeTooLarge(u64),
    #[error("parameter violation: {0}")]
    Params(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("search budget exhausted after {tries} samples (seed {seed})")]
    SearchExhausted { tries: u64, seed: u64 },
    #[error("strategy precondition unmet: {0}")]
    Strategy(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
