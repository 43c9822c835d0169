//! Integer polynomials in the local dimension d, used to check the Gram
//! inverse with d left as an indeterminate.

use crate::error::PermError;
use crate::weingarten::{gram_matrix, Dim};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn constant(c: i64) -> Self {
        Poly::new(vec![BigInt::from(c)])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn eval(&self, d: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * d + BigRational::from_integer(c.clone()))
    }

    /// Exact division; `None` when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Poly) -> Option<Poly> {
        let rd = rhs.degree()?;
        let lead = rhs.0[rd].clone();
        let mut rem = self.0.clone();
        if rem.len() < rd + 1 {
            return if self.is_zero() { Some(Poly::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); rem.len() - rd];
        for k in (0..q.len()).rev() {
            let top = rem[k + rd].clone();
            if top.is_zero() {
                continue;
            }
            if &top % &lead != BigInt::zero() {
                return None;
            }
            let f = &top / &lead;
            for (i, c) in rhs.0.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            q[k] = f;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Poly::new(q))
        } else {
            None
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_default() + rhs.0.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let mut prev = Poly::constant(1);
    let mut sign = 1i64;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Poly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -&d
    } else {
        d
    }
}

/// The Gram matrix of S_n with d symbolic.
pub fn symbolic_gram(n: usize) -> Result<Vec<Vec<Poly>>, PermError> {
    let g = gram_matrix(Dim::Symbolic, n)?;
    let m = g.dim();
    Ok((0..m).map(|i| (0..m).map(|j| Poly::monomial(g.exponent(i, j) as usize)).collect()).collect())
}

/// Adjugate by cofactors, so that Q·adj(Q) = det(Q)·1.
pub fn adjugate(a: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    let mut adj = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c].clone()).collect())
                .collect();
            let c = det(minor);
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -&c };
        }
    }
    adj
}

/// Symbolic inverse check: returns (det, adjugate) after verifying
/// Q·adj = det·1 coefficient by coefficient.
pub fn symbolic_inverse(n: usize) -> Result<(Poly, Vec<Vec<Poly>>), PermError> {
    let q = symbolic_gram(n)?;
    let dt = det(q.clone());
    let adj = adjugate(&q);
    let m = q.len();
    for i in 0..m {
        for j in 0..m {
            let mut s = Poly::zero();
            for k in 0..m {
                s = &s + &(&q[i][k] * &adj[k][j]);
            }
            let want = if i == j { dt.clone() } else { Poly::zero() };
            if s != want {
                return Err(PermError::Degenerate { d: 0, n });
            }
        }
    }
    Ok((dt, adj))
}
