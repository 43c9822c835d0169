//! Replica labeling of S_2n and the combinatorics of the a/b swap.
//!
//! Element a_i has index i-1 and b_i has index n+i-1 (0-indexed), so the
//! swap s is the product of (a_i b_i) and the b-shift is a contiguous cycle.

use crate::error::PermError;
use crate::group::{check_cap, ENUM_CAP};
use crate::perm::{LexPerms, Perm};

pub const REPLICA_CAP: usize = ENUM_CAP / 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReplicaLabeling {
    pub n: usize,
}

impl ReplicaLabeling {
    pub fn new(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::NotBijection("zero replicas".into()));
        }
        check_cap("replica labeling", n, REPLICA_CAP)?;
        Ok(ReplicaLabeling { n })
    }

    /// 0-indexed element of a_i, for 1-based replica i.
    pub fn a(&self, i: usize) -> usize {
        i - 1
    }

    pub fn b(&self, i: usize) -> usize {
        self.n + i - 1
    }

    pub fn partner(&self, x: usize) -> usize {
        if x < self.n {
            x + self.n
        } else {
            x - self.n
        }
    }

    /// 1-based replica of element x.
    pub fn replica(&self, x: usize) -> usize {
        x % self.n + 1
    }

    pub fn kind(&self, x: usize) -> Kind {
        if x < self.n {
            Kind::A
        } else {
            Kind::B
        }
    }

    pub fn name(&self, x: usize) -> String {
        let k = if x < self.n { 'a' } else { 'b' };
        format!("{k}{}", self.replica(x))
    }

    /// s = ∏ (a_i b_i).
    pub fn swap(&self) -> Perm {
        Perm::from_zero_based((0..2 * self.n).map(|x| self.partner(x)).collect()).unwrap()
    }

    /// The single transposition (a_r b_r).
    pub fn swap_at(&self, r: usize) -> Perm {
        Perm::transposition(2 * self.n, self.a(r), self.b(r))
    }

    /// Shift by `k` on the b replicas only: b_i ↦ b_{i+k}.
    pub fn shift_b(&self, k: isize) -> Perm {
        let n = self.n as isize;
        Perm::from_zero_based(
            (0..2 * self.n)
                .map(|x| {
                    if x < self.n {
                        x
                    } else {
                        let i = (x - self.n) as isize;
                        self.n + (i + k).rem_euclid(n) as usize
                    }
                })
                .collect(),
        )
        .unwrap()
    }

    /// Shift by `k` on both a and b replicas.
    pub fn shift_both(&self, k: isize) -> Perm {
        let n = self.n as isize;
        Perm::from_zero_based(
            (0..2 * self.n)
                .map(|x| {
                    let base = if x < self.n { 0 } else { self.n };
                    let i = (x - base) as isize;
                    base + (i + k).rem_euclid(n) as usize
                })
                .collect(),
        )
        .unwrap()
    }

    pub fn commutes_with_swap(&self, p: &Perm) -> bool {
        (0..2 * self.n).all(|x| p.at(self.partner(x)) == self.partner(p.at(x)))
    }
}

/// All g in S_2n with g s g⁻¹ = s, by exhaustive search over S_2n.
pub fn centralizer_of_swap(n: usize) -> Result<Vec<Perm>, PermError> {
    let lab = ReplicaLabeling::new(n)?;
    Ok(LexPerms::new(2 * n).filter(|g| lab.commutes_with_swap(g)).collect())
}

pub struct WPlus {
    pub n: usize,
    pub elements: Vec<Perm>,
}

impl WPlus {
    pub fn h(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }
}

fn weight_exponent(sigma: &Perm, minus_b: &Perm) -> usize {
    sigma.mul(minus_b).cycle_count()
}

/// Elements of the centralizer whose composition with the inverse b-shift
/// has the maximal n+1 cycles.
pub fn w_plus_set(n: usize) -> Result<WPlus, PermError> {
    let lab = ReplicaLabeling::new(n)?;
    let minus_b = lab.shift_b(-1);
    let elements = centralizer_of_swap(n)?
        .into_iter()
        .filter(|s| weight_exponent(s, &minus_b) == n + 1)
        .collect();
    Ok(WPlus { n, elements })
}

/// Maximum of cycle_count(σ∘(−1)_b) over the centralizer.
pub fn max_cycle_bound(n: usize) -> Result<usize, PermError> {
    let lab = ReplicaLabeling::new(n)?;
    let minus_b = lab.shift_b(-1);
    Ok(centralizer_of_swap(n)?
        .iter()
        .map(|s| weight_exponent(s, &minus_b))
        .max()
        .unwrap_or(0))
}

/// Splits a single swap-symmetric cycle c into c = s_r ∘ c1 ∘ c2 where
/// s_r = (a_r b_r), c2 = s c1 s, and c1, c2 have disjoint supports.
pub fn symmetric_cycle_decompose(
    c: &Perm,
    lab: &ReplicaLabeling,
) -> Result<(Perm, Perm, usize), PermError> {
    let m = 2 * lab.n;
    let err = || PermError::NotSymmetricCycle(c.cycle_string());
    if c.size() != m {
        return Err(PermError::SizeMismatch(c.size(), m));
    }
    let nontrivial: Vec<Vec<usize>> = c.cycles().into_iter().filter(|cy| cy.len() > 1).collect();
    if nontrivial.len() != 1 || !lab.commutes_with_swap(c) {
        return Err(err());
    }
    let cyc = &nontrivial[0];
    let len = cyc.len();
    if len % 2 != 0 {
        return Err(err());
    }
    let k = len / 2;
    // cycles() starts each cycle at its smallest point and follows c.
    if lab.partner(cyc[0]) != cyc[k] {
        return Err(err());
    }
    let identity = Perm::identity(m);
    let c1 = if k >= 2 {
        let mut map: Vec<usize> = (0..m).collect();
        for i in 0..k {
            map[cyc[i]] = cyc[(i + 1) % k];
        }
        Perm::from_zero_based(map)?
    } else {
        identity
    };
    let s = lab.swap();
    let c2 = s.mul(&c1).mul(&s);
    let r = lab.replica(cyc[0]);
    let t = lab.swap_at(r);
    if t.mul(&c1).mul(&c2) != *c {
        return Err(err());
    }
    Ok((c1, c2, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn centralizer_sizes() {
        let c1 = centralizer_of_swap(1).unwrap();
        assert_eq!(c1.len(), 2);
        assert_eq!(centralizer_of_swap(2).unwrap().len(), 8);
        assert_eq!(centralizer_of_swap(3).unwrap().len(), 48);
        for n in 1..=4 {
            assert_eq!(centralizer_of_swap(n).unwrap().len(), (1 << n) * fact(n));
        }
        assert!(matches!(centralizer_of_swap(6), Err(PermError::Capacity { .. })));
    }

    #[test]
    fn shifts_and_swap() {
        let lab = ReplicaLabeling::new(3).unwrap();
        let plus = lab.shift_b(1);
        assert_eq!(plus.cycle_string(), "(4 5 6)");
        assert!(plus.mul(&lab.shift_b(-1)).is_identity());
        assert_eq!(lab.swap().cycle_string(), "(1 4)(2 5)(3 6)");
        assert_eq!(lab.shift_both(1).cycle_string(), "(1 2 3)(4 5 6)");
        assert_eq!(lab.name(4), "b2");
    }

    #[test]
    fn w_plus_small_cases() {
        let w1 = w_plus_set(1).unwrap();
        assert_eq!(w1.h(), 1);
        let w2 = w_plus_set(2).unwrap();
        assert_eq!(w2.h(), 2);
        for n in 1..=4 {
            let w = w_plus_set(n).unwrap();
            assert!(w.contains(&Perm::identity(2 * n)));
            if n >= 3 {
                assert!(w.h() < fact(n));
            }
        }
    }

    #[test]
    fn max_cycles_small_cases() {
        assert_eq!(max_cycle_bound(1).unwrap(), 2);
        assert_eq!(max_cycle_bound(2).unwrap(), 3);
        assert_eq!(max_cycle_bound(3).unwrap(), 4);
    }

    #[test]
    fn orientation_of_the_shift_does_not_matter() {
        // cycle_count(σ∘q) = cycle_count(q∘σ) since the two are conjugate.
        for n in 1..=3 {
            let lab = ReplicaLabeling::new(n).unwrap();
            let mb = lab.shift_b(-1);
            for s in centralizer_of_swap(n).unwrap() {
                assert_eq!(s.mul(&mb).cycle_count(), mb.mul(&s).cycle_count());
            }
        }
    }

    #[test]
    fn decompose_transposition() {
        let lab = ReplicaLabeling::new(1).unwrap();
        let (c1, c2, r) = symmetric_cycle_decompose(&lab.swap(), &lab).unwrap();
        assert!(c1.is_identity() && c2.is_identity());
        assert_eq!(r, 1);
    }

    #[test]
    fn decompose_four_cycle() {
        let lab = ReplicaLabeling::new(2).unwrap();
        // (a1 a2 b1 b2) = (1 2 3 4)
        let c = Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap();
        let (c1, c2, r) = symmetric_cycle_decompose(&c, &lab).unwrap();
        assert_eq!(lab.swap_at(r).mul(&c1).mul(&c2), c);
        assert_eq!(c1.cycle_string(), "(1 2)");
        assert_eq!(c2.cycle_string(), "(3 4)");
    }

    #[test]
    fn decompose_rejects_non_symmetric() {
        let lab = ReplicaLabeling::new(2).unwrap();
        let c = Perm::from_cycles(4, &[&[1, 2]]).unwrap();
        assert!(matches!(symmetric_cycle_decompose(&c, &lab), Err(PermError::NotSymmetricCycle(_))));
        let two = lab.swap();
        assert!(symmetric_cycle_decompose(&two, &lab).is_err());
    }

    fn check_all_symmetric_cycles(n: usize) -> usize {
        let lab = ReplicaLabeling::new(n).unwrap();
        let mut seen = 0;
        for c in centralizer_of_swap(n).unwrap() {
            let nontrivial = c.cycles().into_iter().filter(|cy| cy.len() > 1).count();
            if nontrivial != 1 {
                continue;
            }
            if let Ok((c1, c2, r)) = symmetric_cycle_decompose(&c, &lab) {
                let s = lab.swap();
                assert_eq!(c2, s.mul(&c1).mul(&s));
                let sup1: Vec<usize> = (0..2 * n).filter(|&x| c1.at(x) != x).collect();
                assert!(sup1.iter().all(|&x| c2.at(x) == x));
                assert_eq!(lab.swap_at(r).mul(&c1).mul(&c2), c);
                seen += 1;
            } else {
                panic!("single cycle {c} in the centralizer failed to decompose");
            }
        }
        seen
    }

    #[test]
    fn every_symmetric_cycle_recomposes() {
        assert_eq!(check_all_symmetric_cycles(2), 2 + 2);
        assert!(check_all_symmetric_cycles(3) > 0);
    }
}
