//! Probe dilations and the brickwork experiment on a dense state.

use crate::error::DenseError;
use crate::gates::gate_matrix;
use crate::register::{Label, Role};
use crate::state::{DenseState, QUBIT_CAP};
use iesb_core::{ApparatusInit, CircuitSpec, EnvInit, InitialSystem, LayerPlan, Schedule, Species};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// Two CNOTs copying each system qubit of the site into A and E.
    ProjectiveMeasurement,
    /// Each system qubit swapped into a maximally mixed apparatus qubit,
    /// purified by E_a.
    Transduction,
    /// As `Transduction` but the apparatus starts Bell-paired with A_c.
    TransductionWithCopy,
    /// Each system qubit swapped into an environment qubit Bell-paired
    /// with A_c.
    ErasureDual,
    /// s_a goes to the environment and s_b to the apparatus.
    NoisyTransduction,
}

impl ProbeKind {
    /// Fresh qubits allocated per probed site.
    pub fn qubits_per_site(self, apparatus: ApparatusInit, env: EnvInit) -> usize {
        match self {
            ProbeKind::NoisyTransduction => {
                2 + usize::from(apparatus == ApparatusInit::BellWithCopy)
                    + usize::from(env == EnvInit::MaximallyMixed)
            }
            _ => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeInit {
    pub apparatus: ApparatusInit,
    pub env: EnvInit,
}

impl ProbeInit {
    pub fn of(spec: &CircuitSpec) -> Self {
        ProbeInit { apparatus: spec.apparatus_init, env: spec.env_init }
    }
}

fn fresh(state: &mut DenseState, role: Role) -> Label {
    Label::aux(role, state.register().next_serial(role))
}

fn fresh_apparatus(state: &mut DenseState, init: ApparatusInit) -> Result<usize, DenseError> {
    let a = fresh(state, Role::A);
    match init {
        ApparatusInit::PureZero => state.push_zero(a),
        ApparatusInit::BellWithCopy => {
            let c = fresh(state, Role::Ac);
            Ok(state.push_bell(a, c)?.0)
        }
    }
}

fn fresh_env(state: &mut DenseState, init: EnvInit) -> Result<usize, DenseError> {
    let e = fresh(state, Role::E);
    match init {
        EnvInit::PureZero => state.push_zero(e),
        EnvInit::MaximallyMixed => {
            let p = fresh(state, Role::Ee);
            Ok(state.push_bell(e, p)?.0)
        }
    }
}

/// Applies one probe at `site`, allocating its apparatus and environment.
pub fn apply_probe(
    state: &mut DenseState,
    kind: ProbeKind,
    site: usize,
    init: ProbeInit,
) -> Result<(), DenseError> {
    let l = state.register().system_sites();
    if site >= l {
        return Err(DenseError::SiteOutOfRange { site, l });
    }
    let present: Vec<Species> = [Species::A, Species::B]
        .into_iter()
        .filter(|&sp| state.register().position(&Label::system(site, sp)).is_some())
        .collect();
    if kind == ProbeKind::NoisyTransduction && present.len() != 2 {
        return Err(DenseError::IncompatibleProbe(format!("{kind:?} needs both species at site {site}")));
    }
    if present.is_empty() {
        return Err(DenseError::IncompatibleProbe(format!("{kind:?}: no system qubit at site {site}")));
    }
    match kind {
        ProbeKind::NoisyTransduction => {
            let a = fresh_apparatus(state, init.apparatus)?;
            let e = fresh_env(state, init.env)?;
            let sa = state.system_qubit(site, Species::A)?;
            state.swap(sa, e);
            let sb = state.system_qubit(site, Species::B)?;
            state.swap(sb, a);
        }
        _ => {
            for sp in present {
                match kind {
                    ProbeKind::ProjectiveMeasurement => {
                        let a = fresh_apparatus(state, ApparatusInit::PureZero)?;
                        let e = fresh_env(state, EnvInit::PureZero)?;
                        let s = state.system_qubit(site, sp)?;
                        state.cnot(s, a);
                        state.cnot(s, e);
                    }
                    ProbeKind::Transduction => {
                        let (a, ea) = (fresh(state, Role::A), fresh(state, Role::Ea));
                        let (a, _) = state.push_bell(a, ea)?;
                        let s = state.system_qubit(site, sp)?;
                        state.swap(s, a);
                    }
                    ProbeKind::TransductionWithCopy => {
                        let a = fresh_apparatus(state, ApparatusInit::BellWithCopy)?;
                        let s = state.system_qubit(site, sp)?;
                        state.swap(s, a);
                    }
                    ProbeKind::ErasureDual => {
                        let (e, c) = (fresh(state, Role::E), fresh(state, Role::Ac));
                        let (e, _) = state.push_bell(e, c)?;
                        let s = state.system_qubit(site, sp)?;
                        state.swap(s, e);
                    }
                    ProbeKind::NoisyTransduction => unreachable!(),
                }
            }
        }
    }
    Ok(())
}

/// Initial system register: S only, or S Bell-paired with S′.
pub fn initial_state(l: usize, init: InitialSystem) -> Result<DenseState, DenseError> {
    let mut s = DenseState::vacuum();
    for x in 0..l {
        for sp in [Species::A, Species::B] {
            match init {
                InitialSystem::PureZero => {
                    s.push_zero(Label::system(x, sp))?;
                }
                InitialSystem::MixedViaReference => {
                    s.push_bell(Label::system(x, sp), Label::reference(x, sp))?;
                }
            }
        }
    }
    Ok(s)
}

/// Total register size the experiment will reach.
pub fn qubits_needed(spec: &CircuitSpec, schedule: &Schedule, kind: ProbeKind) -> usize {
    let per_site = 2 + 2 * usize::from(spec.initial_system == InitialSystem::MixedViaReference);
    spec.l * per_site + schedule.probe_count() * kind.qubits_per_site(spec.apparatus_init, spec.env_init)
}

/// A brickwork experiment advanced one layer at a time.
pub struct DenseExperiment {
    pub spec: CircuitSpec,
    pub kind: ProbeKind,
    pub schedule: Schedule,
    pub state: DenseState,
    pub layers_done: usize,
}

impl DenseExperiment {
    pub fn new(spec: &CircuitSpec, kind: ProbeKind) -> Result<Self, DenseError> {
        spec.validate_any_l()?;
        let schedule = Schedule::new(spec);
        let need = qubits_needed(spec, &schedule, kind);
        if need > QUBIT_CAP {
            return Err(DenseError::Capacity { what: "dense experiment", need, cap: QUBIT_CAP });
        }
        Ok(DenseExperiment {
            spec: spec.clone(),
            kind,
            state: initial_state(spec.l, spec.initial_system)?,
            schedule,
            layers_done: 0,
        })
    }

    pub fn apply_layer(state: &mut DenseState, plan: &LayerPlan, kind: ProbeKind, init: ProbeInit) -> Result<(), DenseError> {
        for brick in &plan.bricks {
            let par = gate_matrix(brick.parallel);
            let cross = gate_matrix(brick.cross);
            for (k, slot) in brick.slots().iter().enumerate() {
                let q0 = state.system_qubit(slot.q0.0, slot.q0.1)?;
                let q1 = state.system_qubit(slot.q1.0, slot.q1.1)?;
                state.apply_2q(q0, q1, if k < 2 { &par } else { &cross });
            }
        }
        for &x in &plan.probes {
            apply_probe(state, kind, x, init)?;
        }
        Ok(())
    }

    /// Runs the next layer; returns false when all T layers are done.
    pub fn step(&mut self) -> Result<bool, DenseError> {
        let Some(plan) = self.schedule.layers.get(self.layers_done) else {
            return Ok(false);
        };
        Self::apply_layer(&mut self.state, plan, self.kind, ProbeInit::of(&self.spec))?;
        self.layers_done += 1;
        Ok(true)
    }

    pub fn run(mut self) -> Result<DenseState, DenseError> {
        while self.step()? {}
        Ok(self.state)
    }
}

/// The noisy-transduction experiment described by `spec`.
pub fn run_circuit_dense(spec: &CircuitSpec) -> Result<DenseState, DenseError> {
    run_circuit_with(spec, ProbeKind::NoisyTransduction)
}

pub fn run_circuit_with(spec: &CircuitSpec, kind: ProbeKind) -> Result<DenseState, DenseError> {
    DenseExperiment::new(spec, kind)?.run()
}
