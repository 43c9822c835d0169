use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("permutation sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("{what} requested for {size}, capacity is {cap}")]
    Capacity { what: &'static str, size: usize, cap: usize },
    #[error("Gram matrix is singular for d={d}, n={n}")]
    Degenerate { d: u64, n: usize },
    #[error("not a single swap-symmetric cycle: {0}")]
    NotSymmetricCycle(String),
}
