//! One-step replica kernels of a system coupled to a fresh environment.
//!
//! Superoperators act on row-major vectorized matrices: vec(X)[i·d + j] = X[i, j].

use crate::error::DenseError;
use crate::gates::{haar_unitary, swap2};
use nalgebra::DMatrix;
use num_complex::Complex64 as C;

const KERNEL_QUBIT_CAP: usize = 4;

/// A unitary on system ⊗ environment (system bits low) with the
/// environment starting in |0…0⟩ and traced out afterwards.
#[derive(Clone, Debug)]
pub struct OneStep {
    pub sys: usize,
    pub env: usize,
    pub unitary: DMatrix<C>,
}

impl OneStep {
    /// One system qubit swapped into a fresh environment qubit.
    pub fn erasure() -> Self {
        let s = swap2();
        OneStep { sys: 1, env: 1, unitary: DMatrix::from_fn(4, 4, |i, j| s[(i, j)]) }
    }

    pub fn haar(sys: usize, env: usize, seed: u64) -> Self {
        OneStep { sys, env, unitary: haar_unitary(1 << (sys + env), seed) }
    }

    fn d(&self) -> usize {
        1 << self.sys
    }

    fn e(&self) -> usize {
        1 << self.env
    }
}

/// 𝕂⁽¹⁾ = Σ_k K_k ⊗ conj(K_k) with Kraus operators K_k = ⟨k|_E U |0⟩_E.
pub fn kernel_single(step: &OneStep) -> DMatrix<C> {
    let (d, e) = (step.d(), step.e());
    let mut out = DMatrix::<C>::zeros(d * d, d * d);
    for k in 0..e {
        let kr = DMatrix::<C>::from_fn(d, d, |i, j| step.unitary[(i + d * k, j)]);
        out += kr.kronecker(&kr.map(|z| z.conj()));
    }
    out
}

/// The n-replica kernel built from its definition: evolve every basis
/// operator |a⟩⟨b| of the replicated system under U^{⊗n} with n fresh
/// environments and trace the environments.
pub fn kernel_direct(step: &OneStep, n: usize) -> Result<DMatrix<C>, DenseError> {
    let need = n * (step.sys + step.env);
    if need > 2 * KERNEL_QUBIT_CAP {
        return Err(DenseError::Capacity { what: "replica kernel", need, cap: 2 * KERNEL_QUBIT_CAP });
    }
    let (d, e) = (step.d(), step.e());
    let de = d * e;
    let dn = d.pow(n as u32);
    let en = e.pow(n as u32);
    let full = de.pow(n as u32);
    let un = (1..n).fold(step.unitary.clone(), |acc, _| step.unitary.kronecker(&acc));
    // columns of U^{⊗n} on |a, 0⟩, reindexed as (system, environment)
    let split = |x: usize| {
        let (mut s, mut env) = (0, 0);
        for i in 0..n {
            let digit = x / de.pow(i as u32) % de;
            s += (digit % d) * d.pow(i as u32);
            env += (digit / d) * e.pow(i as u32);
        }
        (s, env)
    };
    let join = |a: usize| (0..n).map(|i| (a / d.pow(i as u32) % d) * de.pow(i as u32)).sum::<usize>();
    let outs: Vec<DMatrix<C>> = (0..dn)
        .map(|a| {
            let col = un.column(join(a));
            let mut m = DMatrix::<C>::zeros(dn, en);
            for x in 0..full {
                let (s, env) = split(x);
                m[(s, env)] = col[x];
            }
            m
        })
        .collect();
    let mut k = DMatrix::<C>::zeros(dn * dn, dn * dn);
    for a in 0..dn {
        for b in 0..dn {
            let rho = &outs[a] * outs[b].adjoint();
            for i in 0..dn {
                for j in 0..dn {
                    k[(i * dn + j, a * dn + b)] = rho[(i, j)];
                }
            }
        }
    }
    Ok(k)
}

/// 𝕂⁽¹⁾^{⊗n} with its indices reordered to the replicated vectorization.
pub fn kernel_product(step: &OneStep, n: usize) -> DMatrix<C> {
    let k1 = kernel_single(step);
    let d = step.d();
    let dn = d.pow(n as u32);
    let mut k = DMatrix::<C>::zeros(dn * dn, dn * dn);
    let digit = |x: usize, i: usize| x / d.pow(i as u32) % d;
    for row in 0..dn * dn {
        let (i, j) = (row / dn, row % dn);
        for col in 0..dn * dn {
            let (a, b) = (col / dn, col % dn);
            let mut v = C::new(1.0, 0.0);
            for r in 0..n {
                v *= k1[(digit(i, r) * d + digit(j, r), digit(a, r) * d + digit(b, r))];
                if v == C::new(0.0, 0.0) {
                    break;
                }
            }
            k[(row, col)] = v;
        }
    }
    k
}

/// ‖𝕂⁽ⁿ⁾ − 𝕂⁽¹⁾^{⊗n}‖ for a step without apparatus.
pub fn replica_kernel_factorization_check(step: &OneStep, n: usize) -> Result<f64, DenseError> {
    let direct = kernel_direct(step, n)?;
    Ok((direct - kernel_product(step, n)).norm())
}

/// max over basis inputs |a⟩⟨b| of |tr 𝕂⁽¹⁾(|a⟩⟨b|) − δ_ab|.
pub fn trace_defect(step: &OneStep) -> f64 {
    let k1 = kernel_single(step);
    let d = step.d();
    let mut worst = 0.0f64;
    for a in 0..d {
        for b in 0..d {
            let t: C = (0..d).map(|i| k1[(i * d + i, a * d + b)]).sum();
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((t - C::new(want, 0.0)).norm());
        }
    }
    worst
}
