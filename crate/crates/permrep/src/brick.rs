//! Haar-averaged weight of one brick between an input and an output spin.
//!
//! A brick is two Haar layers on q²-dimensional pairs, each used 2n times,
//! joined directly on one site and through the a/b swap on the other:
//!
//!   W(σ,τ) = Σ_{τt,σb} Wg(σ,τt) Wg(σb,τ) Q(τt,σb) Q(s τt s, σb)
//!
//! with Wg at dimension q² and Q at dimension q, both over S_2n.

use crate::error::PermError;
use crate::group::{check_cap, SymmetricGroup};
use crate::perm::Perm;
use crate::replica::ReplicaLabeling;
use crate::weingarten::weingarten_table;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Largest replica count with exact rationals.
pub const EXACT_CAP: usize = 2;
/// Largest replica count at all (floating point above `EXACT_CAP`).
pub const FLOAT_CAP: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum BrickValue {
    Exact(BigRational),
    Float(f64),
}

impl BrickValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BrickValue::Exact(v) => v.to_f64().unwrap(),
            BrickValue::Float(v) => *v,
        }
    }
}

pub struct BrickTable {
    pub q: u64,
    pub n: usize,
    group: SymmetricGroup,
    values: Vec<BrickValue>,
}

fn coupling_exponents(group: &SymmetricGroup, lab: &ReplicaLabeling) -> Vec<u32> {
    let s = lab.swap();
    let els = group.elements();
    let inv: Vec<Perm> = els.iter().map(Perm::inverse).collect();
    let mut out = Vec::with_capacity(els.len() * els.len());
    for t in els {
        let st = s.mul(t).mul(&s);
        for bi in &inv {
            out.push((t.mul(bi).cycle_count() + st.mul(bi).cycle_count()) as u32);
        }
    }
    out
}

fn float_values(w: &[f64], expo: &[u32], q: u64, m: usize) -> Vec<f64> {
    let qf = q as f64;
    let mm: Vec<f64> = expo.iter().map(|&e| qf.powi(e as i32)).collect();
    let mut left = vec![0.0f64; m * m];
    for s in 0..m {
        for t in 0..m {
            let ws = w[s * m + t];
            let row = &mm[t * m..(t + 1) * m];
            for (acc, &v) in left[s * m..(s + 1) * m].iter_mut().zip(row) {
                *acc += ws * v;
            }
        }
    }
    let mut vals = vec![0.0f64; m * m];
    for s in 0..m {
        for b in 0..m {
            let l = left[s * m + b];
            let row = &w[b * m..(b + 1) * m];
            for (acc, &v) in vals[s * m..(s + 1) * m].iter_mut().zip(row) {
                *acc += l * v;
            }
        }
    }
    vals
}

pub fn brick_weight_table(q: u64, n: usize) -> Result<BrickTable, PermError> {
    check_cap("brick weight", n, FLOAT_CAP)?;
    let lab = ReplicaLabeling::new(n)?;
    let wg = weingarten_table(q * q, 2 * n)?;
    let group = SymmetricGroup::new(2 * n)?;
    let m = group.order();
    let expo = coupling_exponents(&group, &lab);
    let values = if n <= EXACT_CAP {
        let qb = BigInt::from(q);
        let pw: Vec<BigRational> = (0..=4 * n as u32).map(|e| BigRational::from_integer(qb.pow(e))).collect();
        // left[σ][σb] = Σ_τt Wg(σ,τt) M(τt,σb)
        let mut left = vec![BigRational::zero(); m * m];
        for s in 0..m {
            for t in 0..m {
                let w = wg.entry(s, t);
                if w.is_zero() {
                    continue;
                }
                for b in 0..m {
                    left[s * m + b] += w * &pw[expo[t * m + b] as usize];
                }
            }
        }
        let mut vals = vec![BigRational::zero(); m * m];
        for s in 0..m {
            for b in 0..m {
                let l = &left[s * m + b];
                if l.is_zero() {
                    continue;
                }
                for t in 0..m {
                    vals[s * m + t] += l * wg.entry(b, t);
                }
            }
        }
        vals.into_iter().map(BrickValue::Exact).collect()
    } else {
        float_values(&wg.to_f64(), &expo, q, m).into_iter().map(BrickValue::Float).collect()
    };
    Ok(BrickTable { q, n, group, values })
}

impl BrickTable {
    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn is_exact(&self) -> bool {
        self.n <= EXACT_CAP
    }

    pub fn value(&self, i: usize, j: usize) -> &BrickValue {
        &self.values[i * self.group.order() + j]
    }

    pub fn get(&self, sigma: &Perm, tau: &Perm) -> Option<&BrickValue> {
        Some(self.value(self.group.index_of(sigma)?, self.group.index_of(tau)?))
    }

    /// q^{4n}·W(σ,τ) − δ(σ = τ in the centralizer), exact when available.
    pub fn scaled_deviation(&self, i: usize, j: usize) -> BrickValue {
        let lab = ReplicaLabeling { n: self.n };
        let els = self.group.elements();
        let target = i == j && lab.commutes_with_swap(&els[i]);
        match self.value(i, j) {
            BrickValue::Exact(v) => {
                let scale = BigRational::from_integer(BigInt::from(self.q).pow(4 * self.n as u32));
                let mut d = v * scale;
                if target {
                    d -= BigRational::from_integer(1.into());
                }
                BrickValue::Exact(d)
            }
            BrickValue::Float(v) => {
                let d = v * (self.q as f64).powi(4 * self.n as i32);
                BrickValue::Float(if target { d - 1.0 } else { d })
            }
        }
    }
}

pub fn brick_weight(q: u64, n: usize, sigma: &Perm, tau: &Perm) -> Result<BrickValue, PermError> {
    let t = brick_weight_table(q, n)?;
    t.get(sigma, tau)
        .cloned()
        .ok_or(PermError::SizeMismatch(sigma.size().max(tau.size()), 2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct quadruple sum for S_2, kept independent of the matrix route.
    fn oracle_n1(q: i64, s: usize, t: usize) -> BigRational {
        let d = q * q;
        // S_2 elements: 0 = identity, 1 = swap; Wg^{d,2}.
        let den = d * (d * d - 1);
        let wg = |a: usize, b: usize| {
            if a == b {
                BigRational::new(d.into(), den.into())
            } else {
                BigRational::new((-1).into(), den.into())
            }
        };
        let cyc = |a: usize, b: usize| if a == b { 2u32 } else { 1 };
        // The swap commutes with everything in S_2, so s τt s = τt.
        let mut acc = BigRational::zero();
        for tt in 0..2 {
            for sb in 0..2 {
                let qq = BigRational::from_integer(BigInt::from(q).pow(2 * cyc(tt, sb)));
                acc += wg(s, tt) * wg(sb, t) * qq;
            }
        }
        acc
    }

    #[test]
    fn n1_matches_hand_sum() {
        for q in [2i64, 3, 4] {
            let tab = brick_weight_table(q as u64, 1).unwrap();
            for s in 0..2 {
                for t in 0..2 {
                    assert_eq!(*tab.value(s, t), BrickValue::Exact(oracle_n1(q, s, t)), "q={q}");
                }
            }
        }
        // q=2, σ=τ=identity, summed by hand: (16 - 1 - 1 + 1)/225.
        let v = brick_weight(2, 1, &Perm::identity(2), &Perm::identity(2)).unwrap();
        assert_eq!(v, BrickValue::Exact(BigRational::new(1.into(), 15.into())));
    }

    #[test]
    fn large_q_limit_n1() {
        let tab = brick_weight_table(64, 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(tab.scaled_deviation(i, j).to_f64().abs() < 0.05);
            }
        }
    }

    #[test]
    fn float_path_matches_exact_at_n2() {
        let q = 3;
        let exact = brick_weight_table(q, 2).unwrap();
        let lab = ReplicaLabeling::new(2).unwrap();
        let wg = weingarten_table(q * q, 4).unwrap();
        let expo = coupling_exponents(exact.group(), &lab);
        let fl = float_values(&wg.to_f64(), &expo, q, 24);
        for (k, v) in fl.iter().enumerate() {
            let e = exact.value(k / 24, k % 24).to_f64();
            assert!((v - e).abs() <= 1e-10 * e.abs().max(1e-12), "{k}: {v} vs {e}");
        }
    }

    #[test]
    fn n3_requires_q_at_least_3() {
        assert!(matches!(brick_weight_table(2, 3), Err(PermError::Degenerate { d: 4, n: 6 })));
        assert!(matches!(brick_weight_table(2, 4), Err(PermError::Capacity { .. })));
    }
}
