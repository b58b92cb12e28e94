use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group descriptors differ: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("invalid group descriptor: {0}")]
    InvalidGroup(String),

    #[error("weight {coords:?} does not belong to {group}")]
    InvalidWeight { coords: Vec<i64>, group: String },

    #[error("invalid character point: {0}")]
    InvalidCharacterPoint(String),

    #[error("operation requires a torus (free character lattice), got {0}")]
    NotATorus(String),

    #[error("series rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("series truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("series is not a unit (degree-0 component vanishes)")]
    NotAUnit,

    #[error("substituted series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("polynomial in h has degree {degree}, relation allows at most {max}")]
    UnreducedInput { degree: usize, max: usize },

    #[error("elements live in different bundle rings")]
    RelationMismatch,

    #[error("invalid projective-space model: {0}")]
    InvalidModel(String),

    #[error("character point has infinite image")]
    InfiniteImage,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
