//! Sweep configuration, read from TOML.
//!
//! ```toml
//! engine = "stab"            # stab | dense | potts
//! L = [8, 16, 32]
//! t_per_l = 2                # or T = [16, 32]
//! p = [0.1, 0.2, 0.3]        # stab and dense; potts takes nu = [...]
//! realizations = 200
//! master_seed = 1
//! observables = ["O", "C"]   # optional, engine defaults otherwise
//! layer_stride = 0           # 0 samples the final layer only
//! output_dir = "runs/o-scan" # relative to the output root
//!
//! [circuit]                  # optional, stab and dense
//! apparatus_init = "pure_zero"
//! env_init = "pure_zero"
//! gate_family = "clifford2_uniform"
//! partition = "scaled"       # scaled | quarter | ring | { e_s = 1, gap = 1, p_s = 6, offset = 0 }
//!
//! [potts]                    # optional, potts
//! h = 2
//! sweeps = 2000
//! thermalization = 200
//! ```

use crate::error::LabError;
use iesb_core::{ApparatusInit, EnvInit, GateFamily, PartitionSpec};
use serde::{Deserialize, Serialize};
use stabcore::Observable;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Stab,
    Dense,
    Potts,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Stab => "stab",
            Engine::Dense => "dense",
            Engine::Potts => "potts",
        }
    }
}

/// Potts-chain observables, in CSV naming.
pub const POTTS_OBSERVABLES: [&str; 6] = ["largest_cluster", "connectivity", "magnetization", "m2", "m4", "binder"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PartitionScheme {
    Named(NamedPartition),
    Fixed(PartitionSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedPartition {
    /// E_S = max(L/8, 1), gap L/8, P_S the rest.
    Scaled,
    /// E_S = L/4, gap L/4 − 1, P_S = L/2 + 1.
    Quarter,
    /// P_S = L/2 + 1, E_S = max(L/8, 1), and the remaining sites split into
    /// gaps on both sides of E_S.
    Ring,
}

impl PartitionScheme {
    pub fn for_size(&self, l: usize) -> PartitionSpec {
        match self {
            PartitionScheme::Named(NamedPartition::Scaled) => PartitionSpec::scaled(l),
            PartitionScheme::Named(NamedPartition::Quarter) => {
                let e = (l / 4).max(1);
                let p = l / 2 + 1;
                PartitionSpec { e_s: e, gap: l.saturating_sub(e + p), p_s: p.min(l - e), offset: 0 }
            }
            PartitionScheme::Named(NamedPartition::Ring) => {
                let p = l / 2 + 1;
                let e = (l / 8).max(1).min(l - p);
                let rest = l - p - e;
                PartitionSpec { e_s: e, gap: rest - rest / 2, p_s: p, offset: rest / 2 }
            }
            PartitionScheme::Fixed(p) => *p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitOptions {
    #[serde(default = "default_gate_family")]
    pub gate_family: GateFamily,
    #[serde(default = "default_apparatus")]
    pub apparatus_init: ApparatusInit,
    #[serde(default = "default_env")]
    pub env_init: EnvInit,
    #[serde(default = "default_partition")]
    pub partition: PartitionScheme,
}

fn default_gate_family() -> GateFamily {
    GateFamily::Clifford2Uniform
}
fn default_apparatus() -> ApparatusInit {
    ApparatusInit::PureZero
}
fn default_env() -> EnvInit {
    EnvInit::PureZero
}
fn default_partition() -> PartitionScheme {
    PartitionScheme::Named(NamedPartition::Scaled)
}

impl Default for CircuitOptions {
    fn default() -> Self {
        CircuitOptions {
            gate_family: default_gate_family(),
            apparatus_init: default_apparatus(),
            env_init: default_env(),
            partition: default_partition(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PottsOptions {
    #[serde(default = "default_h")]
    pub h: u32,
    #[serde(default = "default_sweeps")]
    pub sweeps: usize,
    #[serde(default = "default_thermalization")]
    pub thermalization: usize,
}

fn default_h() -> u32 {
    2
}
fn default_sweeps() -> usize {
    1000
}
fn default_thermalization() -> usize {
    100
}

impl Default for PottsOptions {
    fn default() -> Self {
        PottsOptions { h: default_h(), sweeps: default_sweeps(), thermalization: default_thermalization() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub engine: Engine,
    #[serde(rename = "L")]
    pub sizes: Vec<usize>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_per_l: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nu: Vec<f64>,
    pub realizations: usize,
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observables: Vec<String>,
    #[serde(default)]
    pub layer_stride: usize,
    #[serde(default = "default_output")]
    pub output_dir: String,
    #[serde(default)]
    pub circuit: CircuitOptions,
    #[serde(default)]
    pub potts: PottsOptions,
}

fn default_output() -> String {
    "iesb-out".into()
}

/// One swept point: size, depth and the swept probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub l: usize,
    pub t: usize,
    /// Index into the p or ν list.
    pub index: usize,
    pub x: f64,
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, LabError> {
        let de = toml::Deserializer::parse(text).map_err(|e| LabError::config("<document>", e.to_string()))?;
        let cfg: SweepConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let key = e.path().to_string();
            let inner = e.into_inner();
            let reason = inner.message().to_string();
            // unknown keys are reported at their parent; name the key itself
            let key = match reason.strip_prefix("unknown field `").and_then(|r| r.split('`').next()) {
                Some(field) if key == "." => field.to_string(),
                Some(field) if !key.ends_with(field) => format!("{key}.{field}"),
                _ => key,
            };
            LabError::config(key, reason)
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Same as [`SweepConfig::from_toml_str`] for a file.
    pub fn parse_config(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if self.realizations < 1 {
            return Err(LabError::config("realizations", "must be >= 1"));
        }
        if self.sizes.is_empty() {
            return Err(LabError::config("L", "needs at least one size"));
        }
        match (&self.times, self.t_per_l) {
            (Some(_), Some(_)) => return Err(LabError::config("T", "give either T or t_per_l, not both")),
            (None, None) => return Err(LabError::config("T", "give T or t_per_l")),
            (Some(ts), None) if ts.is_empty() => return Err(LabError::config("T", "needs at least one depth")),
            _ => {}
        }
        if self.engine == Engine::Potts && self.sizes.iter().any(|&l| self.depths(l).contains(&0)) {
            let key = if self.times.is_some() { "T" } else { "t_per_l" };
            return Err(LabError::config(key, "potts lattices need T >= 1"));
        }
        let (xs, key, other, other_key) = match self.engine {
            Engine::Potts => (&self.nu, "nu", &self.p, "p"),
            _ => (&self.p, "p", &self.nu, "nu"),
        };
        if xs.is_empty() {
            return Err(LabError::config(key, format!("{} sweeps need {key} values", self.engine.name())));
        }
        if !other.is_empty() {
            return Err(LabError::config(other_key, format!("not used by the {} engine", self.engine.name())));
        }
        for &x in xs {
            if !(0.0..=1.0).contains(&x) {
                return Err(LabError::config(key, format!("{x} outside [0, 1]")));
            }
        }
        for &l in &self.sizes {
            if l < 2 || (l % 2 != 0 && self.engine != Engine::Dense) {
                return Err(LabError::config("L", format!("{l} is not an even size >= 2")));
            }
            if self.engine != Engine::Potts {
                let pt = self.circuit.partition.for_size(l);
                if !pt.fits(l) {
                    return Err(LabError::config("circuit.partition", format!("does not fit L = {l}")));
                }
            }
        }
        if self.engine == Engine::Stab && self.circuit.gate_family != GateFamily::Clifford2Uniform {
            return Err(LabError::config("circuit.gate_family", "the stab engine runs Clifford gates only"));
        }
        if self.engine == Engine::Potts && self.potts.h < 1 {
            return Err(LabError::config("potts.h", "must be >= 1"));
        }
        for o in &self.observables {
            let known = match self.engine {
                Engine::Potts => POTTS_OBSERVABLES.contains(&o.as_str()),
                _ => Observable::from_name(o).is_some(),
            };
            if !known {
                return Err(LabError::config("observables", format!("unknown observable `{o}`")));
            }
            if self.engine == Engine::Potts && self.potts.h == 1 && o == "binder" {
                return Err(LabError::config("observables", "binder needs potts.h >= 2"));
            }
        }
        Ok(())
    }

    /// Depths for size `l`.
    pub fn depths(&self, l: usize) -> Vec<usize> {
        match (&self.times, self.t_per_l) {
            (Some(ts), _) => ts.clone(),
            (None, Some(k)) => vec![k * l],
            (None, None) => vec![],
        }
    }

    pub fn xs(&self) -> &[f64] {
        match self.engine {
            Engine::Potts => &self.nu,
            _ => &self.p,
        }
    }

    /// Every point in sweep order: sizes, then depths, then p or ν.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for &l in &self.sizes {
            for t in self.depths(l) {
                for (index, &x) in self.xs().iter().enumerate() {
                    out.push(Point { l, t, index, x });
                }
            }
        }
        out
    }

    /// Selected observables in CSV naming.
    pub fn observable_names(&self) -> Vec<String> {
        if !self.observables.is_empty() {
            return self.observables.clone();
        }
        match self.engine {
            // the Binder ratio is undefined for percolation
            Engine::Potts => POTTS_OBSERVABLES
                .iter()
                .filter(|&&s| self.potts.h >= 2 || s != "binder")
                .map(|s| s.to_string())
                .collect(),
            _ => Observable::ALL.iter().map(|o| o.name().to_string()).collect(),
        }
    }

    /// Stable digest of the canonical serialized form.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(&Sha256::digest(self.to_toml_string().as_bytes())[..8])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "engine = \"stab\"\nL = [8]\nt_per_l = 2\np = [0.1]\nrealizations = 1\nmaster_seed = 3\n";

    #[test]
    fn minimal_config_gets_defaults() {
        let c = SweepConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!(c.output_dir, "iesb-out");
        assert_eq!(c.layer_stride, 0);
        assert_eq!(c.circuit, CircuitOptions::default());
        assert_eq!(c.observable_names().len(), Observable::ALL.len());
        assert_eq!(c.points().len(), 1);
        assert_eq!(c.points()[0].t, 16);
    }

    #[test]
    fn round_trip_is_identity() {
        let mut c = SweepConfig::from_toml_str(MINIMAL).unwrap();
        c.circuit.partition = PartitionScheme::Fixed(PartitionSpec { e_s: 1, gap: 2, p_s: 5, offset: 0 });
        c.observables = vec!["O".into()];
        let back = SweepConfig::from_toml_str(&c.to_toml_string()).unwrap();
        assert_eq!(back, c);
        let q = SweepConfig { circuit: CircuitOptions { partition: PartitionScheme::Named(NamedPartition::Quarter), ..c.circuit.clone() }, ..c };
        assert_eq!(SweepConfig::from_toml_str(&q.to_toml_string()).unwrap(), q);
    }

    #[test]
    fn range_error_names_p() {
        let text = MINIMAL.replace("p = [0.1]", "p = [1.5]");
        match SweepConfig::from_toml_str(&text) {
            Err(LabError::Config { key, .. }) => assert_eq!(key, "p"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_named() {
        match SweepConfig::from_toml_str(&format!("{MINIMAL}bogus = 1\n")) {
            Err(LabError::Config { key, .. }) => assert_eq!(key, "bogus"),
            other => panic!("{other:?}"),
        }
        match SweepConfig::from_toml_str(&format!("{MINIMAL}[circuit]\nflavor = 1\n")) {
            Err(LabError::Config { key, .. }) => assert_eq!(key, "circuit.flavor"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn type_error_is_named() {
        match SweepConfig::from_toml_str(&MINIMAL.replace("realizations = 1", "realizations = \"many\"")) {
            Err(LabError::Config { key, .. }) => assert_eq!(key, "realizations"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn engine_specific_checks() {
        let potts = "engine = \"potts\"\nL = [8]\nT = [8]\nnu = [0.5]\nrealizations = 1\nmaster_seed = 1\n";
        assert!(SweepConfig::from_toml_str(potts).is_ok());
        assert!(matches!(
            SweepConfig::from_toml_str(&potts.replace("nu", "p")),
            Err(LabError::Config { key, .. }) if key == "nu"
        ));
        assert!(matches!(
            SweepConfig::from_toml_str(&MINIMAL.replace("L = [8]", "L = [7]")),
            Err(LabError::Config { key, .. }) if key == "L"
        ));
        assert!(matches!(
            SweepConfig::from_toml_str(&format!("{MINIMAL}observables = [\"Z\"]\n")),
            Err(LabError::Config { key, .. }) if key == "observables"
        ));
    }

    #[test]
    fn quarter_partition_keeps_majority_probe_region() {
        for l in [8, 16, 32, 64] {
            let p = PartitionScheme::Named(NamedPartition::Quarter).for_size(l);
            assert_eq!(p.e_s + p.gap + p.p_s, l);
            assert!(2 * p.p_s > l);
        }
    }

    #[test]
    fn ring_partition_separates_both_sides_of_the_environment() {
        for (l, e, gap, offset) in [(8, 1, 1, 1), (16, 2, 3, 2), (32, 4, 6, 5)] {
            let p = PartitionScheme::Named(NamedPartition::Ring).for_size(l);
            assert_eq!((p.e_s, p.gap, p.offset, p.p_s), (e, gap, offset, l / 2 + 1));
            assert_eq!(p.offset + p.e_s + p.gap + p.p_s, l);
        }
    }
}
