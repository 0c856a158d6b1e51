use thiserror::Error;

use crate::catalog::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("coalition vector has {got} entries, game has {expected} classes")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coalition vector entry {index} is {value}, class size is {size}")]
    CoordinateOutOfRange { index: usize, value: usize, size: usize },

    #[error("{what}: size {size} exceeds brute-force bound {bound}")]
    Capacity { what: &'static str, size: usize, bound: usize },

    #[error("invalid game specification: {}", format_violations(.0))]
    InvalidSpec(Vec<Violation>),

    #[error("invalid weighted game: {0}")]
    InvalidWeightedGame(String),

    #[error("expected an integer count, got {0}")]
    NotIntegral(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
