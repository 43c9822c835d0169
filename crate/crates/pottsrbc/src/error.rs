use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RbcError {
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("invalid parameter `{field}`: {reason}")]
    Param { field: &'static str, reason: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("no crossing inside [{lo}, {hi}]")]
    OutOfRange { lo: f64, hi: f64 },
}
