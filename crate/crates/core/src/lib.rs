//! Pieces shared by the simulators: the circuit description, counter-based
//! seeding, the two-qubit Clifford group table and the layer schedule that
//! both the dense and the stabilizer engines execute.

pub mod clifford;
pub mod crossing;
pub mod labels;
pub mod schedule;
pub mod seed;
pub mod spec;

pub use clifford::{Clifford2, CliffordTable, Elementary, PauliRow};
pub use labels::{Label, Role};
pub use schedule::{Brick, GateDraw, GateSlot, LayerPlan, Schedule, Species};
pub use seed::SeedPath;
pub use spec::{
    ApparatusInit, CircuitSpec, EnvInit, GateFamily, InitialSystem, PartitionSpec, SpecError,
};
