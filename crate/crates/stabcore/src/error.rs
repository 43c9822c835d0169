use iesb_core::SpecError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StabError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("gate family {0} is not Clifford")]
    NonClifford(String),
    #[error("{observable} needs initial_system = {needed}")]
    WrongInitialization { observable: &'static str, needed: &'static str },
    #[error("partition regions overlap: e_s = {e_s}, gap = {gap}, p_s = {p_s}, L = {l}")]
    PartitionOverlap { e_s: usize, gap: usize, p_s: usize, l: usize },
    #[error("tableau invariant violated: {0}")]
    Invariant(String),
}
