//! Conditional replica tensors and their replica-permutation symmetries.
//!
//! A single copy of the conditioned space is S (sorted by site, species)
//! followed by S′; bit j of a copy index is qubit j of that list. Copy i of
//! an n-replica index s sits in digit i (base D, least significant first).
//! X_p maps |s_1 … s_n⟩ to |s_{p(1)} … s_{p(n)}⟩.

use crate::circuit::{run_circuit_with, ProbeKind};
use crate::error::DenseError;
use crate::register::{Label, Role};
use crate::state::DenseState;
use iesb_core::{CircuitSpec, Species};
use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use serde::Serialize;

/// Largest replicated space, in qubits.
pub const REPLICA_QUBIT_CAP: usize = 12;
const RANK_FLOOR: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conditioning {
    Apparatus,
    Environment,
}

#[derive(Clone, Debug)]
pub struct ReplicaTensor {
    pub n: usize,
    /// Labels of one copy, bit j ↔ labels[j].
    pub labels: Vec<Label>,
    pub normalized: bool,
    matrix: DMatrix<C>,
}

/// S qubits by (site, species), then S′ the same way.
pub fn conditioned_qubits(state: &DenseState) -> Vec<usize> {
    let r = state.register();
    let l = r.system_sites();
    let sites: Vec<usize> = (0..l).collect();
    let mut q = r.site_qubits(Role::S, &sites);
    q.extend(r.site_qubits(Role::SRef, &sites));
    q
}

/// Σ̃ for the noisy-transduction experiment of `spec`.
pub fn conditional_replica_tensor(spec: &CircuitSpec, n: usize) -> Result<ReplicaTensor, DenseError> {
    let state = run_circuit_with(spec, ProbeKind::NoisyTransduction)?;
    replica_tensor(&state, n, Conditioning::Apparatus)
}

/// tr_{𝒜∪𝔼}[(|ψ⟩⟨ψ|)^{⊗n} X₊₁] with the shift on the conditioning side.
pub fn replica_tensor(state: &DenseState, n: usize, cond: Conditioning) -> Result<ReplicaTensor, DenseError> {
    assert!(n >= 1);
    let k = conditioned_qubits(state);
    if n * k.len() > REPLICA_QUBIT_CAP {
        return Err(DenseError::Capacity { what: "replica tensor", need: n * k.len(), cap: REPLICA_QUBIT_CAP });
    }
    let c = match cond {
        Conditioning::Apparatus => state.register().apparatus(),
        Conditioning::Environment => state.register().environment(),
    };
    let d = 1usize << k.len();
    let mut region = k.clone();
    region.extend_from_slice(&c);
    // rows k + D·a, columns everything traced without a shift
    let psi = state.split_matrix(&region);
    let cols = psi.ncols();
    let a_dim = 1usize << c.len();
    // Rotate the conditioning side onto the support of its reduced state;
    // Σ̃ is unchanged by a unitary acting identically on every copy.
    let phi = DMatrix::<C>::from_fn(a_dim, d * cols, |a, j| psi[(j / cols + d * a, j % cols)]);
    let svd = phi.clone().svd(true, false);
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i].powi(2) > RANK_FLOOR).collect();
    let r = keep.len();
    let v = DMatrix::<C>::from_fn(a_dim, r, |a, j| u[(a, keep[j])]);
    let phi_r = v.adjoint() * &phi;
    let psi_r = DMatrix::<C>::from_fn(d * r, cols, |row, col| phi_r[(row / d, (row % d) * cols + col)]);
    let rho = &psi_r * psi_r.adjoint();
    let block = |a: usize, b: usize| rho.view((d * a, d * b), (d, d)).into_owned();

    let dn = d.pow(n as u32);
    let mut sigma = DMatrix::<C>::zeros(dn, dn);
    if n == 1 {
        for a in 0..r {
            sigma += block(a, a);
        }
    } else {
        for a1 in 0..r {
            let mut cur: Vec<DMatrix<C>> = (0..r).map(|a2| block(a1, a2)).collect();
            for _ in 2..n {
                cur = (0..r)
                    .map(|next| {
                        let mut acc = DMatrix::<C>::zeros(cur[0].nrows() * d, cur[0].ncols() * d);
                        for (a, t) in cur.iter().enumerate() {
                            acc += block(a, next).kronecker(t);
                        }
                        acc
                    })
                    .collect();
            }
            for (a, t) in cur.iter().enumerate() {
                sigma += block(a, a1).kronecker(t);
            }
        }
    }
    let labels = k.iter().map(|&q| state.register().label(q)).collect();
    Ok(ReplicaTensor { n, labels, normalized: false, matrix: sigma })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CircuitClass {
    Generic,
    /// Invariant under SWAP(𝒜, 𝔼) itself.
    ApparatusEnvironmentExchange,
    /// Invariant under SWAP(𝒜, 𝔼) up to the a/b species swap on the system.
    LocalUnitaryExchange,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct GeneratorReport {
    /// ‖X₊₁ Σ̃ X₋₁ − Σ̃‖
    pub rotation: f64,
    /// ‖X_r Σ̃† X_r − Σ̃‖
    pub hermitian_reflection: f64,
    /// ‖X_r Σ̃ X_r − Σ̃‖, not a symmetry in general.
    pub reflection_only: f64,
    /// ‖Σ̃† − Σ̃‖, not a symmetry in general.
    pub hermiticity_only: f64,
    /// ‖X_r X₊₁ Σ̃ X_r − Σ̃‖
    pub exchange: f64,
    /// ‖W X_r X₊₁ Σ̃ X_r − Σ̃‖ with W the species swap on every copy.
    pub exchange_lu_ket: f64,
    /// ‖W X_r X₊₁ Σ̃ X_r W† − Σ̃‖
    pub exchange_lu_both: f64,
}

impl GeneratorReport {
    pub fn passes(&self, class: CircuitClass, tol: f64) -> bool {
        let dihedral = self.rotation < tol && self.hermitian_reflection < tol;
        match class {
            CircuitClass::Generic => dihedral,
            CircuitClass::ApparatusEnvironmentExchange => dihedral && self.exchange < tol,
            CircuitClass::LocalUnitaryExchange => {
                dihedral && self.exchange_lu_ket.min(self.exchange_lu_both) < tol
            }
        }
    }
}

impl ReplicaTensor {
    pub fn matrix(&self) -> &DMatrix<C> {
        &self.matrix
    }

    pub fn copy_dim(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> C {
        self.matrix.trace()
    }

    /// Σ = Σ̃ / tr Σ̃.
    pub fn normalize(&self) -> ReplicaTensor {
        let t = self.trace();
        ReplicaTensor { n: self.n, labels: self.labels.clone(), normalized: true, matrix: self.matrix.map(|z| z / t) }
    }

    fn digits(&self, s: usize) -> Vec<usize> {
        let d = self.copy_dim();
        (0..self.n).map(|i| s / d.pow(i as u32) % d).collect()
    }

    fn compose(&self, digits: &[usize]) -> usize {
        let d = self.copy_dim();
        digits.iter().rev().fold(0, |acc, &x| acc * d + x)
    }

    /// Index map f with X_p e_s = e_{f(s)}.
    pub fn perm_map(&self, p: &[usize]) -> Vec<usize> {
        (0..self.dim())
            .map(|s| {
                let ds = self.digits(s);
                self.compose(&p.iter().map(|&j| ds[j]).collect::<Vec<_>>())
            })
            .collect()
    }

    pub fn shift(&self, k: isize) -> Vec<usize> {
        let n = self.n as isize;
        let p: Vec<usize> = (0..n).map(|i| (i + k).rem_euclid(n) as usize).collect();
        self.perm_map(&p)
    }

    pub fn reflection(&self) -> Vec<usize> {
        let p: Vec<usize> = (0..self.n).rev().collect();
        self.perm_map(&p)
    }

    /// The a/b species swap applied to every copy.
    pub fn species_swap(&self) -> Vec<usize> {
        let partner: Vec<usize> = self
            .labels
            .iter()
            .map(|l| {
                let want = Label { species: l.species.map(Species::other), ..*l };
                self.labels.iter().position(|m| *m == want).expect("both species present")
            })
            .collect();
        let d = self.copy_dim();
        let one: Vec<usize> = (0..d)
            .map(|k| partner.iter().enumerate().fold(0, |acc, (j, &pj)| acc | (k >> j & 1) << pj))
            .collect();
        (0..self.dim()).map(|s| self.compose(&self.digits(s).iter().map(|&x| one[x]).collect::<Vec<_>>())).collect()
    }

    /// ‖Y − Σ̃‖ where Y[r,c] = Σ̃[rows[r], cols[c]], or its conjugate
    /// transpose counterpart conj(Σ̃[cols[c], rows[r]]) when `adjoint`.
    pub fn residual(&self, rows: &[usize], cols: &[usize], adjoint: bool) -> f64 {
        let m = &self.matrix;
        let mut acc = 0.0;
        for c in 0..self.dim() {
            for r in 0..self.dim() {
                let y = if adjoint { m[(cols[c], rows[r])].conj() } else { m[(rows[r], cols[c])] };
                acc += (y - m[(r, c)]).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// min_c ‖Σ̃ − c X_k‖ / ‖Σ̃‖.
    pub fn shift_fit(&self, k: isize) -> f64 {
        let f = self.shift(k);
        let dim = self.dim() as f64;
        let c: C = (0..self.dim()).map(|s| self.matrix[(f[s], s)]).sum::<C>() / dim;
        let mut acc = 0.0;
        for s in 0..self.dim() {
            for r in 0..self.dim() {
                let target = if r == f[s] { c } else { C::new(0.0, 0.0) };
                acc += (self.matrix[(r, s)] - target).norm_sqr();
            }
        }
        acc.sqrt() / self.matrix.norm()
    }

    /// S^{(n)}(P;𝒜) from log tr[Σ̃ X₊₁^P]; `bits` index the copy labels.
    pub fn renyi_of(&self, bits: &[usize]) -> f64 {
        assert!(self.n >= 2, "linear replica expectation needs n >= 2");
        let mask = bits.iter().fold(0usize, |m, &b| m | 1 << b);
        let mut t = C::new(0.0, 0.0);
        for s in 0..self.dim() {
            let ds = self.digits(s);
            let moved: Vec<usize> =
                (0..self.n).map(|i| (ds[i] & !mask) | (ds[(i + 1) % self.n] & mask)).collect();
            t += self.matrix[(s, self.compose(&moved))];
        }
        t.re.log2() / (1.0 - self.n as f64)
    }

    pub fn generator_report(&self) -> GeneratorReport {
        let id: Vec<usize> = (0..self.dim()).collect();
        let minus = self.shift(-1);
        let refl = self.reflection();
        let e_rows: Vec<usize> = refl.iter().map(|&x| minus[x]).collect();
        let has_species = self.labels.iter().all(|l| {
            let want = Label { species: l.species.map(Species::other), ..*l };
            self.labels.contains(&want)
        });
        let (ket, both) = if has_species {
            let w = self.species_swap();
            let ket_rows: Vec<usize> = w.iter().map(|&x| e_rows[x]).collect();
            let both_cols: Vec<usize> = w.iter().map(|&x| refl[x]).collect();
            (self.residual(&ket_rows, &refl, false), self.residual(&ket_rows, &both_cols, false))
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        GeneratorReport {
            rotation: self.residual(&minus, &minus, false),
            hermitian_reflection: self.residual(&refl, &refl, true),
            reflection_only: self.residual(&refl, &refl, false),
            hermiticity_only: self.residual(&id, &id, true),
            exchange: self.residual(&e_rows, &refl, false),
            exchange_lu_ket: ket,
            exchange_lu_both: both,
        }
    }
}

/// Residuals of the replica generators for a tensor of the given class.
pub fn check_replica_generators(tensor: &ReplicaTensor, class: CircuitClass) -> (GeneratorReport, bool) {
    let rep = tensor.generator_report();
    let ok = rep.passes(class, 1e-9);
    (rep, ok)
}
