//! Monte Carlo of the random-bond-cluster model on the brickwork lattice in
//! its Edwards-Sokal form, with h-state Potts spins on the bricks and bonds
//! on the transduction slots.
//!
//! Bonds are stored as "present", which is η = 0 in the transduction
//! convention; [`bond_from_eta`] converts.

pub mod critical;
pub mod error;
pub mod lattice;
pub mod measure;
pub mod sw;
pub mod weights;

pub use critical::{locate_critical, CriticalEstimate, CriticalScan};
pub use error::RbcError;
pub use lattice::{bond_from_eta, build_lattice, Boundary, BoundaryTag, Edge, RbcLattice, Slot, Vertex};
pub use measure::{measure, Accumulator, Observation};
pub use sw::{clusters_of, sw_sweep, Chain, Clusters, RbcParams};
pub use weights::{nu_from_p, nu_from_p_exact, nu_prime_from_p, nu_prime_from_p_exact, self_dual_nu};
