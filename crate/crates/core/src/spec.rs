//! Description of one brickwork noisy-transduction experiment.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("invalid spec field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> SpecError {
    SpecError::Invalid { field, reason: reason.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateFamily {
    Clifford2Uniform,
    /// Haar two-qubit unitaries; only the dense engine can run these.
    Haar2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialSystem {
    PureZero,
    MixedViaReference,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApparatusInit {
    PureZero,
    BellWithCopy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvInit {
    PureZero,
    MaximallyMixed,
}

/// Region sizes in sites. `E_S` starts after `offset` sites, `P_S` takes
/// the last sites, and the gap is the stretch right after `E_S`. With a
/// nonzero offset the ring has a second gap across the periodic wrap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionSpec {
    pub e_s: usize,
    pub p_s: usize,
    pub gap: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub offset: usize,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl PartitionSpec {
    /// Default geometry used by the phenomenology runs: L/8, L/8 and the rest.
    pub fn scaled(l: usize) -> Self {
        let e = (l / 8).max(1);
        let gap = l / 8;
        PartitionSpec { e_s: e, gap, p_s: l - e - gap, offset: 0 }
    }

    pub fn e_sites(&self) -> Range<usize> {
        self.offset..self.offset + self.e_s
    }

    pub fn fits(&self, l: usize) -> bool {
        self.offset + self.e_s + self.gap + self.p_s <= l
    }

    pub fn p_sites(&self, l: usize) -> Range<usize> {
        l - self.p_s..l
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitSpec {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub p: f64,
    pub gate_family: GateFamily,
    pub initial_system: InitialSystem,
    pub apparatus_init: ApparatusInit,
    pub env_init: EnvInit,
    pub master_seed: u64,
    pub partition: PartitionSpec,
}

impl CircuitSpec {
    pub fn clifford(l: usize, t: usize, p: f64, seed: u64) -> Self {
        CircuitSpec {
            l,
            t,
            p,
            gate_family: GateFamily::Clifford2Uniform,
            initial_system: InitialSystem::PureZero,
            apparatus_init: ApparatusInit::PureZero,
            env_init: EnvInit::PureZero,
            master_seed: seed,
            partition: PartitionSpec::scaled(l),
        }
    }

    pub fn with_initial(mut self, init: InitialSystem) -> Self {
        self.initial_system = init;
        self
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.l % 2 != 0 {
            return Err(invalid("L", format!("must be even, got {}", self.l)));
        }
        self.validate_any_l()
    }

    /// Same checks without the parity requirement on L. Odd chains keep the
    /// brick pattern but one site sits out of each layer.
    pub fn validate_any_l(&self) -> Result<(), SpecError> {
        if self.l < 2 {
            return Err(invalid("L", format!("must be >= 2, got {}", self.l)));
        }
        if !(0.0..=1.0).contains(&self.p) || !self.p.is_finite() {
            return Err(invalid("p", format!("must lie in [0, 1], got {}", self.p)));
        }
        let pt = &self.partition;
        if !pt.fits(self.l) {
            return Err(invalid(
                "partition",
                format!("offset + e_s + gap + p_s = {} exceeds L = {}", pt.offset + pt.e_s + pt.gap + pt.p_s, self.l),
            ));
        }
        Ok(())
    }

    /// Whether exchanging apparatus and environment (with the a/b swap) maps
    /// the experiment onto itself.
    pub fn is_exchange_symmetric(&self) -> bool {
        matches!(
            (self.apparatus_init, self.env_init),
            (ApparatusInit::PureZero, EnvInit::PureZero)
                | (ApparatusInit::BellWithCopy, EnvInit::MaximallyMixed)
        )
    }

    /// Stable hex digest of all fields.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("spec serializes");
        let digest = Sha256::digest(json.as_bytes());
        hex::encode(&digest[..8])
    }
}
