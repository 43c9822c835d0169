use crate::error::StabError;
use crate::observables::Conditioning;
use crate::span::ConditionedSpan;
use crate::tableau::{ColumnOps, StabTableau};
use iesb_core::{
    ApparatusInit, CircuitSpec, Clifford2, CliffordTable, EnvInit, GateDraw, GateFamily, InitialSystem, Label,
    LayerPlan, Role, Schedule, SeedPath, Species,
};

/// Registers up to this size are checked for tableau invariants after every
/// layer in debug builds.
const DEBUG_CHECK_QUBITS: usize = 256;

/// Uniform element of the two-qubit Clifford group.
pub fn random_clifford2(seed: SeedPath) -> &'static Clifford2 {
    let t = CliffordTable::get();
    t.element(seed.below(t.len() as u64) as usize)
}

fn slot(site: usize, sp: Species) -> usize {
    2 * site + sp.index()
}

fn clifford(draw: GateDraw) -> Result<&'static Clifford2, StabError> {
    match draw {
        GateDraw::Clifford(i) => Ok(CliffordTable::get().element(i as usize)),
        GateDraw::Haar(_) => Err(StabError::NonClifford("haar2".into())),
    }
}

/// A stabilizer run of the noisy-transduction brickwork experiment.
#[derive(Clone, Debug)]
pub struct StabExperiment {
    spec: CircuitSpec,
    schedule: Schedule,
    tableau: StabTableau,
    /// Conditioned on nothing, on the apparatus, on the environment.
    spans: [ConditionedSpan; 3],
    layers_done: usize,
}

/// System qubits in |0⟩ or Bell-paired with the reference; apparatus and
/// environment qubits appear as probes fire.
pub fn new_experiment(spec: &CircuitSpec) -> Result<StabExperiment, StabError> {
    spec.validate()?;
    if spec.gate_family != GateFamily::Clifford2Uniform {
        return Err(StabError::NonClifford(format!("{:?}", spec.gate_family)));
    }
    let mut tableau = StabTableau::new();
    let mixed = spec.initial_system == InitialSystem::MixedViaReference;
    for x in 0..spec.l {
        for sp in [Species::A, Species::B] {
            if mixed {
                tableau.push_bell(Label::system(x, sp), Label::reference(x, sp));
            } else {
                tableau.push_zero(Label::system(x, sp));
            }
        }
    }
    let span = ConditionedSpan::new(2 * spec.l, mixed);
    Ok(StabExperiment {
        spec: spec.clone(),
        schedule: Schedule::new(spec),
        tableau,
        spans: [span.clone(), span.clone(), span],
        layers_done: 0,
    })
}

impl StabExperiment {
    pub fn spec(&self) -> &CircuitSpec {
        &self.spec
    }

    pub fn tableau(&self) -> &StabTableau {
        &self.tableau
    }

    pub fn layers_done(&self) -> usize {
        self.layers_done
    }

    pub fn span(&self, cond: Conditioning) -> &ConditionedSpan {
        &self.spans[cond as usize]
    }

    fn gate(&mut self, s0: (usize, Species), s1: (usize, Species), g: &Clifford2) {
        let (q0, q1) = (self.tableau.system_qubit(s0.0, s0.1), self.tableau.system_qubit(s1.0, s1.1));
        self.tableau.apply_clifford2(q0, q1, g);
        let (a, b) = (slot(s0.0, s0.1), slot(s1.0, s1.1));
        for span in &mut self.spans {
            span.apply_clifford2(a, b, g);
        }
    }

    fn fresh(&mut self, role: Role, partner: Role, bell: bool) -> usize {
        let l = Label::aux(role, self.tableau.next_serial(role));
        if bell {
            let p = Label::aux(partner, self.tableau.next_serial(partner));
            self.tableau.push_bell(l, p).0
        } else {
            self.tableau.push_zero(l)
        }
    }

    /// s_a goes to the environment and s_b to the apparatus, each replaced
    /// by a fresh qubit.
    pub fn probe(&mut self, x: usize) {
        let a_bell = self.spec.apparatus_init == ApparatusInit::BellWithCopy;
        let e_bell = self.spec.env_init == EnvInit::MaximallyMixed;
        let a = self.fresh(Role::A, Role::Ac, a_bell);
        let e = self.fresh(Role::E, Role::Ee, e_bell);
        let sa = self.tableau.system_qubit(x, Species::A);
        self.tableau.swap(sa, e);
        let sb = self.tableau.system_qubit(x, Species::B);
        self.tableau.swap(sb, a);

        let (qa, qb) = (slot(x, Species::A), slot(x, Species::B));
        for (k, span) in self.spans.iter_mut().enumerate() {
            let in_y = |r: Role| match k {
                1 => r.is_apparatus_side(),
                2 => r.is_environment_side(),
                _ => false,
            };
            for (q, role) in [(qa, Role::E), (qb, Role::A)] {
                if in_y(role) {
                    span.retire_into(q);
                } else {
                    span.retire_outside(q);
                }
            }
            for (q, partner, bell) in [(qa, Role::Ee, e_bell), (qb, Role::Ac, a_bell)] {
                match (bell, in_y(partner)) {
                    (false, _) => span.add_zero(q),
                    (true, true) => span.add_inside_bell(q),
                    (true, false) => span.add_outside_bell(q),
                }
            }
        }
    }

    fn apply_layer(&mut self, plan: &LayerPlan) -> Result<(), StabError> {
        for brick in &plan.bricks {
            let (par, cross) = (clifford(brick.parallel)?, clifford(brick.cross)?);
            for (k, s) in brick.slots().iter().enumerate() {
                self.gate(s.q0, s.q1, if k < 2 { par } else { cross });
            }
        }
        for &x in &plan.probes {
            self.probe(x);
        }
        Ok(())
    }

    /// Runs the next layer; returns false when all T layers are done.
    pub fn step(&mut self) -> Result<bool, StabError> {
        let Some(plan) = self.schedule.layers.get(self.layers_done).cloned() else {
            return Ok(false);
        };
        self.apply_layer(&plan)?;
        self.layers_done += 1;
        if cfg!(debug_assertions) && self.tableau.num_qubits() <= DEBUG_CHECK_QUBITS {
            self.tableau.check_invariants()?;
        }
        Ok(true)
    }

    pub fn run(&mut self) -> Result<(), StabError> {
        while self.step()? {}
        Ok(())
    }

    /// Qubits of the given sites (both species) plus the conditioning
    /// register, as tableau columns.
    pub fn region_qubits(&self, sites: &[usize], cond: Conditioning) -> Vec<usize> {
        let mut q: Vec<usize> = sites
            .iter()
            .flat_map(|&x| [Species::A, Species::B].map(|sp| self.tableau.system_qubit(x, sp)))
            .collect();
        q.extend(match cond {
            Conditioning::None => vec![],
            Conditioning::Apparatus => self.tableau.roles(Role::is_apparatus_side),
            Conditioning::Environment => self.tableau.roles(Role::is_environment_side),
        });
        q
    }

    /// Entropy of sites ∪ conditioning register from the tracked spans.
    pub fn entropy(&self, sites: &[usize], cond: Conditioning) -> usize {
        let slots: Vec<usize> = sites.iter().flat_map(|&x| [2 * x, 2 * x + 1]).collect();
        self.spans[cond as usize].entropy(&slots)
    }

    /// The same entropy from a rank computation on the full tableau.
    pub fn entropy_full(&self, sites: &[usize], cond: Conditioning) -> usize {
        self.tableau.entropy_region(&self.region_qubits(sites, cond))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_start_has_zero_entropy_everywhere() {
        let e = new_experiment(&CircuitSpec::clifford(4, 0, 0.0, 1)).unwrap();
        assert_eq!(e.tableau().num_qubits(), 8);
        for r in [vec![0], vec![1, 2], vec![0, 1, 2, 3]] {
            assert_eq!(e.entropy_full(&r, Conditioning::None), 0);
        }
    }

    #[test]
    fn reference_start_carries_two_bits_per_site() {
        let spec = CircuitSpec::clifford(4, 0, 0.0, 1).with_initial(InitialSystem::MixedViaReference);
        let e = new_experiment(&spec).unwrap();
        assert_eq!(e.entropy_full(&[0, 1, 2, 3], Conditioning::None), 8);
        assert_eq!(e.entropy(&[0, 1, 2, 3], Conditioning::None), 8);
    }

    #[test]
    fn no_probes_without_p() {
        let mut e = new_experiment(&CircuitSpec::clifford(4, 5, 0.0, 2)).unwrap();
        e.run().unwrap();
        assert_eq!(e.tableau().num_qubits(), 8);
    }

    #[test]
    fn probes_on_a_product_state_add_no_apparatus_entropy() {
        let mut e = new_experiment(&CircuitSpec::clifford(4, 1, 1.0, 2)).unwrap();
        for x in 0..4 {
            e.probe(x);
        }
        assert_eq!(e.tableau().num_qubits(), 8 + 2 * 4);
        assert_eq!(e.entropy(&[], Conditioning::Apparatus), 0);
        assert_eq!(e.entropy_full(&[], Conditioning::Apparatus), 0);
        e.run().unwrap();
        assert_eq!(e.tableau().num_qubits(), 8 + 2 * 8);
    }

    #[test]
    fn rejects_haar_and_odd_chains() {
        let mut s = CircuitSpec::clifford(4, 1, 0.5, 0);
        s.gate_family = GateFamily::Haar2;
        assert!(matches!(new_experiment(&s), Err(StabError::NonClifford(_))));
        assert!(new_experiment(&CircuitSpec::clifford(3, 1, 0.5, 0)).is_err());
    }
}
