use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid Cartan type: {0}")]
    InvalidType(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not a root of the datum")]
    NotARoot,

    #[error("not a root subsystem: {0}")]
    NotASubsystem(String),

    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    TooLarge { order: u128, limit: u128 },

    #[error("class is not in the closed fundamental alcove")]
    NotNormalized,

    #[error("element order {order} is divisible by the characteristic {p}")]
    OrderDivisibleByP { order: u64, p: u64 },

    #[error("datum mismatch: {0}")]
    DatumMismatch(String),

    #[error("verification failed: {identity}: {detail}")]
    Verification { identity: String, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn verification(identity: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            identity: identity.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
