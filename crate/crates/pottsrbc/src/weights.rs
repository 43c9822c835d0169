//! Renormalized bond probabilities of the large-q cluster model.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn check(p: f64, q: u32, n: u32) {
    assert!((0.0..=1.0).contains(&p), "p = {p} outside [0, 1]");
    assert!(q >= 2 && n >= 2, "need q >= 2 and n >= 2, got q = {q}, n = {n}");
}

/// (1−p) / (p·q^{−k} + (1−p)), written as (1−p)·q^k / (p + (1−p)·q^k) so
/// that both endpoints come out exact.
fn renormalized(p: f64, qk: f64) -> f64 {
    let keep = (1.0 - p) * qk;
    keep / (p + keep)
}

/// ν = (1−p) / (p·q^{1−n} + (1−p)).
pub fn nu_from_p(p: f64, q: u32, n: u32) -> f64 {
    check(p, q, n);
    renormalized(p, (q as f64).powi(n as i32 - 1))
}

/// ν′ = (1−p) / (p·q^{2−2n} + (1−p)), for a Bell-paired apparatus and a
/// maximally mixed environment.
pub fn nu_prime_from_p(p: f64, q: u32, n: u32) -> f64 {
    check(p, q, n);
    renormalized(p, (q as f64).powi(2 * n as i32 - 2))
}

fn renormalized_exact(p: &BigRational, qk: BigInt) -> BigRational {
    assert!(*p >= BigRational::zero() && *p <= BigRational::one(), "p = {p} outside [0, 1]");
    let keep = (BigRational::one() - p) * BigRational::from_integer(qk);
    keep.clone() / (p + keep)
}

/// ν for rational p in exact arithmetic.
pub fn nu_from_p_exact(p: &BigRational, q: u32, n: u32) -> BigRational {
    check(0.0, q, n);
    renormalized_exact(p, BigInt::from(q).pow(n - 1))
}

/// ν′ for rational p in exact arithmetic.
pub fn nu_prime_from_p_exact(p: &BigRational, q: u32, n: u32) -> BigRational {
    check(0.0, q, n);
    renormalized_exact(p, BigInt::from(q).pow(2 * n - 2))
}

/// Self-dual point √h/(1+√h) of the random-cluster model on the square
/// lattice.
pub fn self_dual_nu(h: u32) -> f64 {
    let s = (h as f64).sqrt();
    s / (1.0 + s)
}
