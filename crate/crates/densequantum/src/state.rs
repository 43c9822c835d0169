use crate::error::DenseError;
use crate::gates::hadamard;
use crate::register::{Label, Register, Role};
use iesb_core::Species;
use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64 as C;

/// Largest register held densely.
pub const QUBIT_CAP: usize = 24;
/// Eigenvalues below this are treated as zero.
pub const EIGEN_FLOOR: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    register: Register,
    amps: Vec<C>,
}

impl Default for DenseState {
    fn default() -> Self {
        DenseState::vacuum()
    }
}

impl DenseState {
    /// The zero-qubit state.
    pub fn vacuum() -> Self {
        DenseState { register: Register::default(), amps: vec![C::new(1.0, 0.0)] }
    }

    pub fn from_parts(labels: &[Label], amps: Vec<C>) -> Result<Self, DenseError> {
        let mut register = Register::default();
        for &l in labels {
            register.push(l)?;
        }
        if labels.len() > QUBIT_CAP {
            return Err(DenseError::Capacity { what: "dense state", need: labels.len(), cap: QUBIT_CAP });
        }
        assert_eq!(amps.len(), 1 << labels.len(), "amplitude count must be 2^qubits");
        let s = DenseState { register, amps };
        assert!((s.norm() - 1.0).abs() < NORM_TOL, "state is not normalized");
        Ok(s)
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.register.len()
    }

    pub fn qubit(&self, l: &Label) -> Result<usize, DenseError> {
        self.register.find(l)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_norm(&self) {
        debug_assert!((self.norm() - 1.0).abs() < NORM_TOL, "norm drifted to {}", self.norm());
    }

    /// Appends a qubit in |0⟩.
    pub fn push_zero(&mut self, l: Label) -> Result<usize, DenseError> {
        let n = self.num_qubits();
        if n + 1 > QUBIT_CAP {
            return Err(DenseError::Capacity { what: "dense state", need: n + 1, cap: QUBIT_CAP });
        }
        let q = self.register.push(l)?;
        self.amps.resize(self.amps.len() * 2, C::new(0.0, 0.0));
        Ok(q)
    }

    /// Appends two qubits in (|00⟩+|11⟩)/√2.
    pub fn push_bell(&mut self, l0: Label, l1: Label) -> Result<(usize, usize), DenseError> {
        if self.num_qubits() + 2 > QUBIT_CAP {
            return Err(DenseError::Capacity {
                what: "dense state",
                need: self.num_qubits() + 2,
                cap: QUBIT_CAP,
            });
        }
        let a = self.push_zero(l0)?;
        let b = self.push_zero(l1)?;
        self.apply_1q(a, &hadamard());
        self.cnot(a, b);
        Ok((a, b))
    }

    pub fn apply_1q(&mut self, q: usize, u: &Matrix2<C>) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                self.amps[i | bit] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
        self.check_norm();
    }

    /// Applies `u` with local qubit 0 on `q0` and local qubit 1 on `q1`.
    pub fn apply_2q(&mut self, q0: usize, q1: usize, u: &Matrix4<C>) {
        assert_ne!(q0, q1);
        let (b0, b1) = (1usize << q0, 1usize << q1);
        let idx = |base: usize, l: usize| base | if l & 1 != 0 { b0 } else { 0 } | if l & 2 != 0 { b1 } else { 0 };
        for base in 0..self.amps.len() {
            if base & (b0 | b1) != 0 {
                continue;
            }
            let v: [C; 4] = std::array::from_fn(|l| self.amps[idx(base, l)]);
            for r in 0..4 {
                self.amps[idx(base, r)] = (0..4).map(|c| u[(r, c)] * v[c]).sum();
            }
        }
        self.check_norm();
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        assert_ne!(control, target);
        let (c, t) = (1usize << control, 1usize << target);
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    pub fn hadamard(&mut self, q: usize) {
        self.apply_1q(q, &hadamard());
    }

    /// SWAP of two qubits, realized by exchanging their labels.
    pub fn swap(&mut self, i: usize, j: usize) {
        self.register.swap_labels(i, j);
    }

    /// Coefficient matrix with rows indexed by `region` bits and columns by
    /// the remaining bits, both in ascending qubit order.
    pub fn split_matrix(&self, region: &[usize]) -> DMatrix<C> {
        let n = self.num_qubits();
        let mut inside = vec![None; n];
        for (k, &q) in region.iter().enumerate() {
            assert!(q < n, "qubit {q} out of range");
            assert!(inside[q].is_none(), "qubit {q} repeated in region");
            inside[q] = Some(k);
        }
        let outside: Vec<usize> = (0..n).filter(|&q| inside[q].is_none()).collect();
        let mut m = DMatrix::<C>::zeros(1 << region.len(), 1 << outside.len());
        for (idx, &a) in self.amps.iter().enumerate() {
            let r = region.iter().enumerate().fold(0, |acc, (k, &q)| acc | ((idx >> q) & 1) << k);
            let c = outside.iter().enumerate().fold(0, |acc, (k, &q)| acc | ((idx >> q) & 1) << k);
            m[(r, c)] = a;
        }
        m
    }

    pub fn reduced_density(&self, region: &[usize]) -> DMatrix<C> {
        let m = self.split_matrix(region);
        &m * m.adjoint()
    }

    /// Spectrum of the reduced state, computed on the smaller side.
    pub fn spectrum(&self, region: &[usize]) -> Vec<f64> {
        if region.is_empty() {
            return vec![1.0];
        }
        let n = self.num_qubits();
        let side: Vec<usize> = if 2 * region.len() <= n {
            region.to_vec()
        } else {
            (0..n).filter(|q| !region.contains(q)).collect()
        };
        let m = self.split_matrix(&side);
        let mut ev: Vec<f64> = (&m * m.adjoint()).symmetric_eigenvalues().iter().copied().collect();
        if ev.iter().any(|x| !x.is_finite()) {
            // The Hermitian solver can break down on exactly degenerate input.
            ev = m.singular_values().iter().map(|s| s * s).collect();
            assert!(ev.iter().all(|x| x.is_finite()), "no finite spectrum for region {region:?}");
        }
        ev.into_iter().map(|x| if x < EIGEN_FLOOR { 0.0 } else { x }).collect()
    }

    pub fn system_qubit(&self, site: usize, species: Species) -> Result<usize, DenseError> {
        self.qubit(&Label::system(site, species))
    }

    pub fn roles(&self, pred: impl Fn(Role) -> bool) -> Vec<usize> {
        self.register.with_roles(pred)
    }
}

/// Rényi entropy in bits from a spectrum; n = 1 is von Neumann.
pub fn renyi_from_spectrum(spectrum: &[f64], n: u32) -> f64 {
    let s = if n == 1 {
        -spectrum.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>()
    } else {
        let p: f64 = spectrum.iter().map(|&x| x.powi(n as i32)).sum();
        p.log2() / (1.0 - n as f64)
    };
    s.max(0.0)
}

/// Rényi-n entropy of `region` in bits. The empty region has entropy 0.
pub fn renyi_entropy(state: &DenseState, region: &[usize], n: u32) -> f64 {
    assert!(n >= 1, "Rényi index starts at 1");
    if region.is_empty() {
        return 0.0;
    }
    renyi_from_spectrum(&state.spectrum(region), n)
}

/// tr ρ² of `region` from the complement's Gram matrix, no eigensolver.
pub fn purity(state: &DenseState, region: &[usize]) -> f64 {
    let m = state.split_matrix(region);
    let g = m.adjoint() * &m;
    g.iter().map(|z| z.norm_sqr()).sum()
}

/// `count` Bell pairs between S(i, a) and S′(i, a).
pub fn bell_pairs(count: usize) -> Result<DenseState, DenseError> {
    assert!(count >= 1, "bell_pairs needs count >= 1");
    let mut s = DenseState::vacuum();
    for i in 0..count {
        s.push_bell(Label::system(i, Species::A), Label::reference(i, Species::A))?;
    }
    Ok(s)
}

/// Applies a 2-qubit gate given as a general matrix (for tests and tools).
pub fn apply_dense_2q(state: &mut DenseState, q0: usize, q1: usize, u: &DMatrix<C>) {
    let m = Matrix4::from_fn(|i, j| u[(i, j)]);
    state.apply_2q(q0, q1, &m);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair_entropies() {
        let s = bell_pairs(1).unwrap();
        for n in 1..=4 {
            assert!((renyi_entropy(&s, &[0], n) - 1.0).abs() < 1e-12);
            assert!(renyi_entropy(&s, &[0, 1], n).abs() < 1e-12);
        }
        let s2 = bell_pairs(2).unwrap();
        assert!((renyi_entropy(&s2, &[0, 2], 2) - 2.0).abs() < 1e-12);
        assert_eq!(renyi_entropy(&s2, &[], 2), 0.0);
    }

    #[test]
    fn maximally_mixed_block() {
        let s = bell_pairs(3).unwrap();
        let sys = s.roles(|r| r == Role::S);
        for n in 1..=3 {
            assert!((renyi_entropy(&s, &sys, n) - 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn relabelled_swap_matches_matrix_swap() {
        let mut a = DenseState::vacuum();
        for i in 0..3 {
            a.push_zero(Label::aux(Role::E, i)).unwrap();
        }
        a.hadamard(0);
        a.cnot(0, 2);
        let mut b = a.clone();
        a.swap(0, 1);
        b.apply_2q(0, 1, &crate::gates::swap2());
        // Same physical state once labels are matched up.
        let q = |s: &DenseState, k| s.qubit(&Label::aux(Role::E, k)).unwrap();
        for k in 0..3 {
            let ea = renyi_entropy(&a, &[q(&a, k)], 2);
            let eb = renyi_entropy(&b, &[q(&b, k)], 2);
            assert!((ea - eb).abs() < 1e-12);
        }
        assert_eq!(q(&a, 1), 0);
    }

    #[test]
    fn degenerate_reduced_state_has_a_finite_spectrum() {
        // Eight Bell pairs cut through two of them: rank 4 on a 256-dim side.
        let s = bell_pairs(8).unwrap();
        let region = [3, 4, 8, 9, 10, 11, 12, 13];
        let spec = s.spectrum(&region);
        assert!(spec.iter().all(|x| x.is_finite()));
        assert!((spec.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for n in 1..=3 {
            assert!((renyi_entropy(&s, &region, n) - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let mut s = DenseState::vacuum();
        for i in 0..QUBIT_CAP {
            s.push_zero(Label::aux(Role::E, i)).unwrap();
        }
        assert!(matches!(s.push_zero(Label::aux(Role::E, 99)), Err(DenseError::Capacity { .. })));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut s = DenseState::vacuum();
        s.push_zero(Label::aux(Role::A, 0)).unwrap();
        assert!(matches!(s.push_zero(Label::aux(Role::A, 0)), Err(DenseError::DuplicateLabel(_))));
    }
}
