//! Entropy relations between conditioning on the apparatus and on the
//! environment.

use crate::circuit::{qubits_needed, run_circuit_with, ProbeKind};
use crate::error::DenseError;
use crate::register::Role;
use crate::state::{renyi_from_spectrum, DenseState};
use iesb_core::seed::TAG_REALIZATION;
use iesb_core::{
    ApparatusInit, CircuitSpec, EnvInit, GateFamily, InitialSystem, PartitionSpec, Schedule, SeedPath,
};
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

/// System and reference sites of a partition; each site brings both
/// species.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SitePartition {
    pub system: Vec<usize>,
    pub reference: Vec<usize>,
}

impl SitePartition {
    pub fn qubits(&self, state: &DenseState) -> Vec<usize> {
        let r = state.register();
        let mut q = r.site_qubits(Role::S, &self.system);
        q.extend(r.site_qubits(Role::SRef, &self.reference));
        q
    }

    pub fn complement(&self, state: &DenseState) -> SitePartition {
        let l = state.register().system_sites();
        let refs = if state.register().has_reference() { l } else { 0 };
        SitePartition {
            system: (0..l).filter(|x| !self.system.contains(x)).collect(),
            reference: (0..refs).filter(|x| !self.reference.contains(x)).collect(),
        }
    }
}

fn subset(bits: usize, len: usize) -> Vec<usize> {
    (0..len).filter(|&i| bits >> i & 1 == 1).collect()
}

/// Every site partition of the register.
pub fn all_site_partitions(state: &DenseState) -> Vec<SitePartition> {
    let l = state.register().system_sites();
    let refs = if state.register().has_reference() { l } else { 0 };
    (0..1usize << (l + refs))
        .map(|m| SitePartition { system: subset(m & ((1 << l) - 1), l), reference: subset(m >> l, refs) })
        .collect()
}

/// `count` distinct site partitions drawn without replacement.
pub fn sample_site_partitions(state: &DenseState, count: usize, seed: u64) -> Vec<SitePartition> {
    let all = all_site_partitions(state);
    if count >= all.len() {
        return all;
    }
    let mut rng = SeedPath::root(seed).rng();
    let mut idx = sample(&mut rng, all.len(), count).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct IeReport {
    /// max |S(P;𝒜) − S(P;𝔼)|.
    pub exchange: f64,
    /// max |S(P;𝒜) − S(Pᶜ;𝒜)|.
    pub complement: f64,
    /// min S(P|𝒜) over the von Neumann evaluations, +∞ if none.
    pub min_conditional: f64,
    pub evaluations: usize,
}

impl IeReport {
    pub fn max_deviation(&self) -> f64 {
        self.exchange.max(self.complement).max((-self.min_conditional).max(0.0))
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Compares apparatus- and environment-conditioned entropies on every
/// partition and Rényi index.
pub fn check_ie_entropies(state: &DenseState, n_list: &[u32], partitions: &[SitePartition]) -> IeReport {
    let app = state.register().apparatus();
    let env = state.register().environment();
    let s_app = state.spectrum(&app);
    let mut rep = IeReport { min_conditional: f64::INFINITY, ..Default::default() };
    for p in partitions {
        let pq = p.qubits(state);
        let cq = p.complement(state).qubits(state);
        let pa = state.spectrum(&union(&pq, &app));
        let pe = state.spectrum(&union(&pq, &env));
        let ca = state.spectrum(&union(&cq, &app));
        for &n in n_list {
            let (a, e, c) = (renyi_from_spectrum(&pa, n), renyi_from_spectrum(&pe, n), renyi_from_spectrum(&ca, n));
            rep.exchange = rep.exchange.max((a - e).abs());
            rep.complement = rep.complement.max((a - c).abs());
            if n == 1 {
                rep.min_conditional = rep.min_conditional.min(a - renyi_from_spectrum(&s_app, 1));
            }
            rep.evaluations += 1;
        }
    }
    rep
}

/// Random small experiments for the exchange checks.
#[derive(Clone, Debug)]
pub struct IeSuite {
    pub realizations: usize,
    pub sizes: Vec<usize>,
    pub t_max: usize,
    pub n_list: Vec<u32>,
    pub partitions_per_realization: usize,
    /// Realizations whose register would exceed this are redrawn.
    pub qubit_budget: usize,
    pub kind: ProbeKind,
    pub seed: u64,
}

impl IeSuite {
    pub fn new(kind: ProbeKind, seed: u64) -> Self {
        IeSuite {
            realizations: 100,
            sizes: vec![2, 3],
            t_max: 4,
            n_list: vec![1, 2, 3],
            partitions_per_realization: 16,
            qubit_budget: 16,
            kind,
            seed,
        }
    }

    /// Spec of realization `r`; p, T, the reference and the probe
    /// initializations are drawn, and redrawn until at least one probe
    /// fires and the register fits.
    pub fn spec(&self, r: usize) -> CircuitSpec {
        let l = self.sizes[r % self.sizes.len()];
        for attempt in 0u64.. {
            let path = SeedPath::root(self.seed).path(&[TAG_REALIZATION, r as u64, attempt]);
            let mut rng = path.rng();
            let t = rng.random_range(1..=self.t_max);
            let p: f64 = rng.random();
            let mut spec = CircuitSpec::clifford(l, t, p, path.child(1).key());
            spec.gate_family = GateFamily::Haar2;
            spec.partition = PartitionSpec { e_s: 0, gap: 0, p_s: l, offset: 0 };
            if rng.random::<bool>() {
                spec.initial_system = InitialSystem::MixedViaReference;
            }
            if rng.random::<bool>() {
                spec.apparatus_init = ApparatusInit::BellWithCopy;
                spec.env_init = EnvInit::MaximallyMixed;
            }
            let schedule = Schedule::new(&spec);
            if schedule.probe_count() > 0 && qubits_needed(&spec, &schedule, self.kind) <= self.qubit_budget {
                return spec;
            }
        }
        unreachable!()
    }

    pub fn run_one(&self, r: usize) -> Result<(CircuitSpec, IeReport), DenseError> {
        let spec = self.spec(r);
        let state = run_circuit_with(&spec, self.kind)?;
        let parts = sample_site_partitions(&state, self.partitions_per_realization, spec.master_seed);
        Ok((spec, check_ie_entropies(&state, &self.n_list, &parts)))
    }

    pub fn run(&self) -> Result<Vec<(CircuitSpec, IeReport)>, DenseError> {
        (0..self.realizations).map(|r| self.run_one(r)).collect()
    }
}
