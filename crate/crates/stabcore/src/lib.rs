//! Stabilizer simulation of the brickwork noisy-transduction experiment.
//!
//! The full tableau holds the pure state of system, reference, apparatus and
//! environment. Entropies of system sites together with the whole apparatus
//! or the whole environment are also tracked incrementally by
//! [`ConditionedSpan`], which is what the per-layer observables use.
//! Entropies are integers in bits.

pub mod error;
pub mod experiment;
pub mod gf2;
pub mod observables;
pub mod span;
pub mod tableau;
pub use tableau::ColumnOps;

pub use error::StabError;
pub use experiment::{new_experiment, random_clifford2, StabExperiment};
pub use observables::{
    coherent_information, ie_defect, order_parameter_o, run_trajectory, Conditioning, EntropySource,
    LayerSample, Observable, RecordOptions, TrajectoryRecord,
};
pub use span::ConditionedSpan;
pub use tableau::StabTableau;
