use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symplectic for the given form")]
    NotSymplectic,

    #[error("matrix is not invertible modulo {modulus}")]
    NotInvertible { modulus: u64 },

    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),

    #[error("invalid modulus {0}: must satisfy 2 <= n < 2^31")]
    InvalidModulus(u64),

    #[error("cap of {cap} exceeded (partial size {partial})")]
    CapExceeded { cap: usize, partial: usize },

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: String, cap: usize },

    #[error("budget of {0} attempts exhausted")]
    BudgetExceeded(usize),

    #[error("no witness found within budget of {0} attempts")]
    NotFound(usize),

    #[error("determinant is not 1")]
    DeterminantNotOne,

    #[error("embedding requires {entry} divisible by {divisor}")]
    NonIntegralEmbedding { entry: String, divisor: String },

    #[error("no positive multiple up to {0} satisfies the congruence pattern")]
    NoFiniteScaling(u64),

    #[error("boundary not reducible to standard position: {0}")]
    UnsupportedBoundary(String),

    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not contained in the group")]
    NotSubgroup,

    #[error("quotient index {index} exceeds cap {cap}")]
    IndexTooLarge { index: usize, cap: usize },

    #[error("no generators available for this pattern")]
    MissingGenerators,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("pathological cone: parallelepiped has {points} points (cap {cap})")]
    EnumerationCap { points: String, cap: usize },

    #[error("report has no steps")]
    EmptyReport,

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
