use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sequence too short: need {needed} terms, have {actual}")]
    Length { needed: usize, actual: usize },

    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(&'static str),

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("{what} refused: n = {n} exceeds cap {cap}")]
    CapExceeded { what: &'static str, n: u64, cap: u64 },

    #[error("missing value: {0}")]
    Missing(String),

    #[error("root solver did not converge for {unconverged} of {total} roots after {iterations} iterations")]
    NonConvergence {
        unconverged: usize,
        total: usize,
        iterations: usize,
    },

    #[error("unexpected spectrum structure: {0}")]
    Structure(String),

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
