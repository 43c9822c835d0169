use iesb_core::SpecError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DenseError {
    #[error("{what} needs {need} qubits, cap is {cap}")]
    Capacity { what: &'static str, need: usize, cap: usize },
    #[error("duplicate qubit label {0}")]
    DuplicateLabel(String),
    #[error("no qubit labelled {0}")]
    MissingQubit(String),
    #[error("site {site} out of range for L = {l}")]
    SiteOutOfRange { site: usize, l: usize },
    #[error("probe {0} is incompatible with the register")]
    IncompatibleProbe(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
}
