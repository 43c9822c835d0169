//! Names of the qubits of an experiment register.

use crate::schedule::Species;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Role {
    /// Final-time system qubit.
    S,
    /// Reference qubit purifying the initial system.
    SRef,
    A,
    /// Copy qubit purifying a Bell-initialized apparatus.
    Ac,
    E,
    /// Purifier of a maximally mixed apparatus.
    Ea,
    /// Purifier of a maximally mixed environment.
    Ee,
}

impl Role {
    pub fn is_apparatus_side(self) -> bool {
        matches!(self, Role::A | Role::Ac)
    }

    pub fn is_environment_side(self) -> bool {
        matches!(self, Role::E | Role::Ea | Role::Ee)
    }

    pub fn is_system_side(self) -> bool {
        matches!(self, Role::S | Role::SRef)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Label {
    pub role: Role,
    /// Site and species for S and S′; a serial number elsewhere.
    pub site: usize,
    pub species: Option<Species>,
}

impl Label {
    pub fn system(site: usize, species: Species) -> Self {
        Label { role: Role::S, site, species: Some(species) }
    }

    pub fn reference(site: usize, species: Species) -> Self {
        Label { role: Role::SRef, site, species: Some(species) }
    }

    pub fn aux(role: Role, serial: usize) -> Self {
        Label { role, site: serial, species: None }
    }
}

