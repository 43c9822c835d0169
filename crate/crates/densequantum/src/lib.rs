//! Dense state-vector simulation of small probe experiments: Choi states,
//! probe dilations, entropies and conditional replica tensors.
//!
//! Qubit k of a register is bit k of the amplitude index. Entropies are in
//! bits.

pub mod circuit;
pub mod error;
pub mod export;
pub mod gates;
pub mod ie;
pub mod kernel;
pub mod register;
pub mod replica;
pub mod state;

pub use circuit::{
    apply_probe, initial_state, qubits_needed, run_circuit_dense, run_circuit_with, DenseExperiment, ProbeInit,
    ProbeKind,
};
pub use error::DenseError;
pub use gates::{clifford_unitary, gate_matrix, haar_unitary};
pub use ie::{all_site_partitions, check_ie_entropies, sample_site_partitions, IeReport, IeSuite, SitePartition};
pub use kernel::{replica_kernel_factorization_check, OneStep};
pub use register::{Label, Register, Role};
pub use replica::{
    check_replica_generators, conditional_replica_tensor, replica_tensor, CircuitClass, Conditioning,
    GeneratorReport, ReplicaTensor,
};
pub use state::{bell_pairs, purity, renyi_entropy, renyi_from_spectrum, DenseState};
