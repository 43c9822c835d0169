use crate::error::StabError;
use crate::experiment::{new_experiment, StabExperiment};
use iesb_core::{CircuitSpec, InitialSystem};
use serde::{Deserialize, Serialize};

/// Register joined to a set of system sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditioning {
    None = 0,
    Apparatus = 1,
    Environment = 2,
}

/// Entropy in bits of some system sites (both species) together with a
/// conditioning register.
pub trait EntropySource {
    fn entropy_bits(&self, sites: &[usize], cond: Conditioning) -> f64;
}

impl EntropySource for StabExperiment {
    fn entropy_bits(&self, sites: &[usize], cond: Conditioning) -> f64 {
        self.entropy(sites, cond) as f64
    }
}

impl<F: Fn(&[usize], Conditioning) -> f64> EntropySource for F {
    fn entropy_bits(&self, sites: &[usize], cond: Conditioning) -> f64 {
        self(sites, cond)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Observable {
    /// I(P_S : E_S | 𝒜).
    #[serde(rename = "O")]
    O,
    /// S(S ∪ 𝒜) − S(𝒜).
    #[serde(rename = "C")]
    C,
    #[serde(rename = "S_A")]
    SApparatus,
    #[serde(rename = "S_E")]
    SEnvironment,
    /// [S(P_S ∪ 𝒜) − S(𝒜)] − [S(P_S ∪ 𝔼) − S(𝔼)].
    #[serde(rename = "ie_defect")]
    IeDefect,
}

impl Observable {
    pub const ALL: [Observable; 5] =
        [Observable::O, Observable::C, Observable::SApparatus, Observable::SEnvironment, Observable::IeDefect];

    pub fn name(self) -> &'static str {
        match self {
            Observable::O => "O",
            Observable::C => "C",
            Observable::SApparatus => "S_A",
            Observable::SEnvironment => "S_E",
            Observable::IeDefect => "ie_defect",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.name() == s)
    }

    /// The initialization this observable is defined for, if restricted.
    pub fn required_initial(self) -> Option<InitialSystem> {
        match self {
            Observable::O => Some(InitialSystem::PureZero),
            Observable::C => Some(InitialSystem::MixedViaReference),
            _ => None,
        }
    }

    /// The regions entering the observable, in site units.
    pub fn regions(self, spec: &CircuitSpec) -> String {
        let pt = &spec.partition;
        let e = pt.e_sites();
        let p = pt.p_sites(spec.l);
        match self {
            Observable::O => format!("P_S=[{},{}) E_S=[{},{}) | A", p.start, p.end, e.start, e.end),
            Observable::C => format!("S=[0,{}) | A", spec.l),
            Observable::SApparatus => "A".into(),
            Observable::SEnvironment => "E".into(),
            Observable::IeDefect => format!("P_S=[{},{}) | A vs E", p.start, p.end),
        }
    }

    pub fn evaluate(self, src: &impl EntropySource, spec: &CircuitSpec) -> Result<f64, StabError> {
        match self {
            Observable::O => order_parameter_o(src, spec),
            Observable::C => coherent_information(src, spec),
            Observable::SApparatus => Ok(src.entropy_bits(&[], Conditioning::Apparatus)),
            Observable::SEnvironment => Ok(src.entropy_bits(&[], Conditioning::Environment)),
            Observable::IeDefect => Ok(ie_defect(src, spec)),
        }
    }
}

fn check_initial(obs: Observable, spec: &CircuitSpec) -> Result<(), StabError> {
    match obs.required_initial() {
        Some(init) if init != spec.initial_system => Err(StabError::WrongInitialization {
            observable: obs.name(),
            needed: match init {
                InitialSystem::PureZero => "pure_zero",
                InitialSystem::MixedViaReference => "mixed_via_reference",
            },
        }),
        _ => Ok(()),
    }
}

/// O = S(P_S∪𝒜) + S(E_S∪𝒜) − S(P_S∪E_S∪𝒜) − S(𝒜).
pub fn order_parameter_o(src: &impl EntropySource, spec: &CircuitSpec) -> Result<f64, StabError> {
    check_initial(Observable::O, spec)?;
    let pt = spec.partition;
    if !pt.fits(spec.l) {
        return Err(StabError::PartitionOverlap { e_s: pt.e_s, gap: pt.gap, p_s: pt.p_s, l: spec.l });
    }
    let p: Vec<usize> = pt.p_sites(spec.l).collect();
    let e: Vec<usize> = pt.e_sites().collect();
    let pe: Vec<usize> = e.iter().chain(&p).copied().collect();
    let a = Conditioning::Apparatus;
    Ok(src.entropy_bits(&p, a) + src.entropy_bits(&e, a) - src.entropy_bits(&pe, a) - src.entropy_bits(&[], a))
}

/// S(S∪𝒜) − S(𝒜) for a system that started maximally mixed.
pub fn coherent_information(src: &impl EntropySource, spec: &CircuitSpec) -> Result<f64, StabError> {
    check_initial(Observable::C, spec)?;
    let all: Vec<usize> = (0..spec.l).collect();
    let a = Conditioning::Apparatus;
    Ok(src.entropy_bits(&all, a) - src.entropy_bits(&[], a))
}

pub fn ie_defect(src: &impl EntropySource, spec: &CircuitSpec) -> f64 {
    let p: Vec<usize> = spec.partition.p_sites(spec.l).collect();
    let (a, e) = (Conditioning::Apparatus, Conditioning::Environment);
    (src.entropy_bits(&p, a) - src.entropy_bits(&[], a)) - (src.entropy_bits(&p, e) - src.entropy_bits(&[], e))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordOptions {
    pub observables: Vec<Observable>,
    /// Layers t with t % stride == 0 are sampled; the last layer always is.
    pub stride: usize,
}

impl RecordOptions {
    /// Every observable defined for the spec's initialization, every layer.
    pub fn for_spec(spec: &CircuitSpec) -> Self {
        RecordOptions {
            observables: Observable::ALL
                .into_iter()
                .filter(|o| o.required_initial().is_none_or(|i| i == spec.initial_system))
                .collect(),
            stride: 1,
        }
    }

    pub fn samples_layer(&self, t: usize, last: usize) -> bool {
        t == last || (self.stride > 0 && t % self.stride == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub observable: Observable,
    pub value: i64,
    pub regions: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerSample {
    /// Layers completed when the sample was taken.
    pub layer: usize,
    pub values: Vec<Sample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub spec_hash: String,
    pub spec: CircuitSpec,
    pub samples: Vec<LayerSample>,
}

impl TrajectoryRecord {
    pub fn value(&self, layer: usize, obs: Observable) -> Option<i64> {
        self.samples
            .iter()
            .find(|s| s.layer == layer)
            .and_then(|s| s.values.iter().find(|v| v.observable == obs))
            .map(|v| v.value)
    }
}

fn sample(exp: &StabExperiment, spec: &CircuitSpec, opts: &RecordOptions) -> Result<LayerSample, StabError> {
    let values = opts
        .observables
        .iter()
        .map(|&o| {
            let v = o.evaluate(exp, spec)?;
            Ok(Sample { observable: o, value: v as i64, regions: o.regions(spec) })
        })
        .collect::<Result<_, StabError>>()?;
    Ok(LayerSample { layer: exp.layers_done(), values })
}

/// Runs the experiment and samples the observables at the configured layers,
/// starting from the initial state.
pub fn run_trajectory(spec: &CircuitSpec, opts: &RecordOptions) -> Result<TrajectoryRecord, StabError> {
    for &o in &opts.observables {
        check_initial(o, spec)?;
    }
    let mut exp = new_experiment(spec)?;
    let mut samples = Vec::new();
    if opts.samples_layer(0, spec.t) {
        samples.push(sample(&exp, spec, opts)?);
    }
    while exp.step()? {
        if opts.samples_layer(exp.layers_done(), spec.t) {
            samples.push(sample(&exp, spec, opts)?);
        }
    }
    Ok(TrajectoryRecord { spec_hash: spec.hash(), spec: spec.clone(), samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for o in Observable::ALL {
            assert_eq!(Observable::from_name(o.name()), Some(o));
            let json = serde_json::to_string(&o).unwrap();
            assert_eq!(json, format!("\"{}\"", o.name()));
        }
        assert_eq!(Observable::from_name("nope"), None);
    }

    #[test]
    fn observables_check_initialization() {
        let pure = CircuitSpec::clifford(4, 1, 0.5, 0);
        let src = |_: &[usize], _: Conditioning| 0.0;
        assert!(matches!(coherent_information(&src, &pure), Err(StabError::WrongInitialization { .. })));
        let mixed = pure.clone().with_initial(InitialSystem::MixedViaReference);
        assert!(matches!(order_parameter_o(&src, &mixed), Err(StabError::WrongInitialization { .. })));
        let opts = RecordOptions { observables: vec![Observable::O], stride: 1 };
        assert!(run_trajectory(&mixed, &opts).is_err());
    }

    #[test]
    fn overlapping_partition_is_rejected() {
        let mut spec = CircuitSpec::clifford(4, 1, 0.5, 0);
        spec.partition = iesb_core::PartitionSpec { e_s: 2, gap: 1, p_s: 3, offset: 0 };
        let src = |_: &[usize], _: Conditioning| 0.0;
        assert!(matches!(order_parameter_o(&src, &spec), Err(StabError::PartitionOverlap { .. })));
    }

    #[test]
    fn stride_always_keeps_last_layer() {
        let o = RecordOptions { observables: vec![], stride: 4 };
        let picked: Vec<usize> = (0..=10).filter(|&t| o.samples_layer(t, 10)).collect();
        assert_eq!(picked, vec![0, 4, 8, 10]);
    }
}
