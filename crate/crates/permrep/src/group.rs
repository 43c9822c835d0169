//! Explicit symmetric groups with conjugacy-class bookkeeping.

use crate::error::PermError;
use crate::perm::{LexPerms, Perm};
use std::collections::HashMap;

/// Largest group that is stored element by element.
pub const TABLE_CAP: usize = 7;
/// Largest group that is ever enumerated (by streaming).
pub const ENUM_CAP: usize = 10;

pub fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<(), PermError> {
    if size > cap {
        Err(PermError::Capacity { what, size, cap })
    } else {
        Ok(())
    }
}

pub struct SymmetricGroup {
    m: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<u8>,
}

impl SymmetricGroup {
    pub fn new(m: usize) -> Result<Self, PermError> {
        check_cap("symmetric group table", m, TABLE_CAP)?;
        if m == 0 {
            return Err(PermError::NotBijection("S_0".into()));
        }
        let elements: Vec<Perm> = LexPerms::new(m).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut class_ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut classes = Vec::new();
        let class_of = elements
            .iter()
            .map(|p| {
                let t = p.cycle_type();
                let n = class_ids.len();
                let id = *class_ids.entry(t.clone()).or_insert(n);
                if id == classes.len() {
                    classes.push(t);
                }
                id as u8
            })
            .collect();
        Ok(SymmetricGroup { m, elements, index, classes, class_of })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in lexicographic order of their image arrays.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Cycle types, one per conjugacy class; class 0 is the identity.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    pub fn class_of(&self, p: &Perm) -> usize {
        self.class_of[self.index[p]] as usize
    }

    /// Number of cycles of any element of class `c`.
    pub fn class_cycle_count(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Flat table of class(τ_i σ_j⁻¹), row-major in (i, j).
    pub fn quotient_classes(&self) -> Vec<u8> {
        let inv: Vec<Perm> = self.elements.iter().map(Perm::inverse).collect();
        let mut out = Vec::with_capacity(self.order() * self.order());
        for t in &self.elements {
            for si in &inv {
                out.push(self.class_of[self.index[&t.mul(si)]]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms_hold_exhaustively() {
        for m in 1..=5 {
            let g = SymmetricGroup::new(m).unwrap();
            let e = Perm::identity(m);
            let els = g.elements();
            for a in els {
                assert_eq!(a.mul(&e), *a);
                assert_eq!(e.mul(a), *a);
                assert!(a.mul(&a.inverse()).is_identity());
                assert!(g.index_of(&a.inverse()).is_some());
            }
            // Associativity on all triples up to S_4, sampled for S_5.
            let step = if m == 5 { 7 } else { 1 };
            for a in els.iter().step_by(step) {
                for b in els.iter().step_by(step) {
                    let ab = a.mul(b);
                    assert!(g.index_of(&ab).is_some());
                    for c in els.iter().step_by(step * step) {
                        assert_eq!(ab.mul(c), a.mul(&b.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn class_counts_are_partition_numbers() {
        let parts = [1, 2, 3, 5, 7, 11, 15];
        for m in 1..=7 {
            let g = SymmetricGroup::new(m).unwrap();
            assert_eq!(g.classes().len(), parts[m - 1]);
            assert_eq!(g.classes()[0], vec![1; m]);
        }
        assert!(matches!(SymmetricGroup::new(8), Err(PermError::Capacity { .. })));
    }
}
