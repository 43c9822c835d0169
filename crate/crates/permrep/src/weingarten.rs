//! Gram matrices of permutation operators and their exact inverses.
//!
//! Both matrices depend on (τ, σ) only through the conjugacy class of τσ⁻¹,
//! so the inverse is found by solving for one unknown per class: the
//! product of two such matrices is again one, and requiring it to be the
//! identity gives a square linear system over the classes.

use crate::error::PermError;
use crate::group::{check_cap, SymmetricGroup, TABLE_CAP};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Int(u64),
    /// Entries are kept as powers of an indeterminate d.
    Symbolic,
}

pub struct GramMatrix {
    pub d: Dim,
    pub n: usize,
    group: SymmetricGroup,
    exponents: Vec<u8>,
}

pub fn gram_matrix(d: Dim, n: usize) -> Result<GramMatrix, PermError> {
    check_cap("Gram matrix", n, TABLE_CAP)?;
    let group = SymmetricGroup::new(n)?;
    let exponents = group
        .quotient_classes()
        .into_iter()
        .map(|c| group.class_cycle_count(c as usize) as u8)
        .collect();
    Ok(GramMatrix { d, n, group, exponents })
}

impl GramMatrix {
    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// Number of cycles of τ_i σ_j⁻¹, i.e. the power of d in entry (i, j).
    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exponents[i * self.dim() + j] as u32
    }

    /// Integer value of entry (i, j); `None` when d is symbolic.
    pub fn entry(&self, i: usize, j: usize) -> Option<BigInt> {
        match self.d {
            Dim::Int(d) => Some(BigInt::from(d).pow(self.exponent(i, j))),
            Dim::Symbolic => None,
        }
    }
}

pub struct WeingartenTable {
    pub d: u64,
    pub n: usize,
    group: SymmetricGroup,
    quotient: Vec<u8>,
    class_values: Vec<BigRational>,
}

/// Solves a square rational system by Gauss-Jordan elimination.
pub(crate) fn solve_rational(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<Vec<BigRational>>,
) -> Option<Vec<Vec<BigRational>>> {
    let k = a.len();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for x in b[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let (pivot_a, pivot_b) = (a[col].clone(), b[col].clone());
            for (x, y) in a[r].iter_mut().zip(&pivot_a) {
                *x -= &f * y;
            }
            for (x, y) in b[r].iter_mut().zip(&pivot_b) {
                *x -= &f * y;
            }
        }
    }
    Some(b)
}

pub fn weingarten_table(d: u64, n: usize) -> Result<WeingartenTable, PermError> {
    check_cap("Weingarten table", n, TABLE_CAP)?;
    let group = SymmetricGroup::new(n)?;
    let k = group.classes().len();
    let reps: Vec<usize> = (0..k)
        .map(|c| (0..group.order()).find(|&i| group.class_of_index(i) == c).unwrap())
        .collect();
    let dd = BigInt::from(d);
    let pow: Vec<BigRational> = (0..=n).map(|e| BigRational::from_integer(dd.pow(e as u32))).collect();
    // Row c: sum over u of d^{cycles(u)} g(class(u⁻¹ x_c)) = δ(c = identity).
    let mut a = vec![vec![BigRational::zero(); k]; k];
    for (c, &xi) in reps.iter().enumerate() {
        let x = &group.elements()[xi];
        for u in group.elements() {
            let target = group.class_of(&u.inverse().mul(x));
            a[c][target] += &pow[u.cycle_count()];
        }
    }
    let mut rhs = vec![vec![BigRational::zero()]; k];
    rhs[0][0] = BigRational::one();
    let sol = solve_rational(a, rhs).ok_or(PermError::Degenerate { d, n })?;
    let class_values = sol.into_iter().map(|r| r.into_iter().next().unwrap()).collect();
    let quotient = group.quotient_classes();
    Ok(WeingartenTable { d, n, group, quotient, class_values })
}

impl WeingartenTable {
    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.class_values[self.quotient[i * self.dim() + j] as usize]
    }

    /// Value on each conjugacy class, in the group's class order.
    pub fn class_values(&self) -> &[BigRational] {
        &self.class_values
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let vals: Vec<f64> = self.class_values.iter().map(|v| v.to_f64().unwrap()).collect();
        self.quotient.iter().map(|&c| vals[c as usize]).collect()
    }

    /// Checks Σ_p Q(σ,p) W(p,τ) = δ(σ,τ) over the full table with exact
    /// integer arithmetic after clearing denominators.
    pub fn verify_inverse(&self) -> bool {
        let den = self.class_values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let Some(den_i) = den.to_i128() else { return false };
        let nums: Option<Vec<i128>> =
            self.class_values.iter().map(|v| (v.numer() * (&den / v.denom())).to_i128()).collect();
        let Some(nums) = nums else { return false };
        let gram = gram_matrix(Dim::Int(self.d), self.n).expect("same cap");
        let m = self.dim();
        let q: Vec<i128> = (0..m * m)
            .map(|ij| (self.d as i128).pow(gram.exponents[ij] as u32))
            .collect();
        let w: Vec<i128> = self.quotient.iter().map(|&c| nums[c as usize]).collect();
        let mut row = vec![0i128; m];
        for s in 0..m {
            row.iter_mut().for_each(|x| *x = 0);
            for p in 0..m {
                let qsp = q[s * m + p];
                let wrow = &w[p * m..(p + 1) * m];
                for (acc, &wv) in row.iter_mut().zip(wrow) {
                    match qsp.checked_mul(wv).and_then(|v| acc.checked_add(v)) {
                        Some(v) => *acc = v,
                        None => return false,
                    }
                }
            }
            for (t, &v) in row.iter().enumerate() {
                if v != if s == t { den_i } else { 0 } {
                    return false;
                }
            }
        }
        true
    }
}

/// Independent route: invert the full Gram matrix by Gauss-Jordan.
pub fn weingarten_dense_exact(d: u64, n: usize) -> Result<Vec<Vec<BigRational>>, PermError> {
    check_cap("dense Weingarten inversion", n, 5)?;
    let g = gram_matrix(Dim::Int(d), n)?;
    let m = g.dim();
    let a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| (0..m).map(|j| BigRational::from_integer(g.entry(i, j).unwrap())).collect())
        .collect();
    let id: Vec<Vec<BigRational>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    solve_rational(a, id).ok_or(PermError::Degenerate { d, n })
}

/// Formats a rational as "num/den".
pub fn ratio_string(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// True when |v| < eps.
pub fn small(v: &BigRational, eps: &BigRational) -> bool {
    v.abs() < *eps
}
