//! Incremental entropies of system sites joined with a fixed family of
//! retired qubits.
//!
//! Qubits that leave the system (into the apparatus, the environment or the
//! reference) are never acted on again. For a family Y of retired qubits and
//! a set X of live system qubits,
//!
//!   rank(M|X∪Y) = rank(M|Y) + rank of the X columns of the stabilizers
//!   that act trivially on Y.
//!
//! The span keeps the live-qubit parts of those stabilizers together with
//! rank(M|Y) and |Y|. Live qubits are the 2L system slots, slot 2·site +
//! species.

use crate::gf2::{rank_in_place, words_for};
use crate::tableau::ColumnOps;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionedSpan {
    slots: usize,
    words: usize,
    /// Independent rows over [X bits | Z bits] of the live slots.
    rows: Vec<u64>,
    y_rank: usize,
    y_size: usize,
}

impl ConditionedSpan {
    /// Y is empty. With `bell_reference` every slot is Bell-paired with a
    /// retired reference qubit outside Y, otherwise every slot is |0⟩.
    pub fn new(slots: usize, bell_reference: bool) -> Self {
        let mut s = ConditionedSpan { slots, words: words_for(2 * slots), rows: Vec::new(), y_rank: 0, y_size: 0 };
        for q in 0..slots {
            if bell_reference {
                s.add_outside_bell(q);
            } else {
                s.add_zero(q);
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.rows.len() / self.words
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// |Y| in qubits.
    pub fn conditioned_qubits(&self) -> usize {
        self.y_size
    }

    fn get(&self, r: usize, b: usize) -> bool {
        self.rows[r * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn flip(&mut self, r: usize, b: usize) {
        self.rows[r * self.words + b / 64] ^= 1 << (b % 64);
    }

    fn push_unit(&mut self, b: usize) {
        let base = self.rows.len();
        self.rows.resize(base + self.words, 0);
        self.rows[base + b / 64] |= 1 << (b % 64);
    }

    fn add_row(&mut self, r: usize, into: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.rows[r * w + k];
            self.rows[into * w + k] ^= v;
        }
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.words;
        let last = self.len() - 1;
        if r != last {
            for k in 0..w {
                self.rows[r * w + k] = self.rows[last * w + k];
            }
        }
        self.rows.truncate(last * w);
    }

    /// Uses a row with bit `b` set to clear `b` everywhere else, then drops
    /// it. Returns whether such a row existed.
    fn pivot_out(&mut self, b: usize) -> bool {
        let Some(p) = (0..self.len()).find(|&r| self.get(r, b)) else {
            return false;
        };
        for r in 0..self.len() {
            if r != p && self.get(r, b) {
                self.add_row(p, r);
            }
        }
        self.remove_row(p);
        true
    }

    /// Drops dependent rows.
    fn reduce(&mut self) {
        let w = self.words;
        let mut basis: Vec<u64> = Vec::with_capacity(self.rows.len());
        let mut leads: Vec<usize> = Vec::new();
        for r in 0..self.len() {
            let mut v = self.rows[r * w..(r + 1) * w].to_vec();
            for (k, &lead) in leads.iter().enumerate() {
                if v[lead / 64] >> (lead % 64) & 1 == 1 {
                    for i in 0..w {
                        v[i] ^= basis[k * w + i];
                    }
                }
            }
            if let Some(i) = v.iter().position(|&x| x != 0) {
                leads.push(i * 64 + v[i].trailing_zeros() as usize);
                basis.extend_from_slice(&v);
            }
        }
        self.rows = basis;
    }

    /// The content of slot `q` retires into Y.
    pub fn retire_into(&mut self, q: usize) {
        let mut r = 0;
        if self.pivot_out(q) {
            r += 1;
        }
        if self.pivot_out(self.slots + q) {
            r += 1;
        }
        self.y_rank += r;
        self.y_size += 1;
    }

    /// The content of slot `q` retires outside Y.
    pub fn retire_outside(&mut self, q: usize) {
        let mut touched = false;
        for r in 0..self.len() {
            for b in [q, self.slots + q] {
                if self.get(r, b) {
                    self.flip(r, b);
                    touched = true;
                }
            }
        }
        if touched {
            self.reduce();
        }
    }

    /// A fresh |0⟩ enters slot `q`, which must be clear.
    pub fn add_zero(&mut self, q: usize) {
        self.push_unit(self.slots + q);
    }

    /// A fresh qubit Bell-paired with a retired qubit outside Y enters
    /// slot `q`.
    pub fn add_outside_bell(&mut self, q: usize) {
        self.push_unit(q);
        self.push_unit(self.slots + q);
    }

    /// A fresh qubit Bell-paired with a qubit that joins Y enters slot `q`.
    pub fn add_inside_bell(&mut self, _q: usize) {
        self.y_rank += 2;
        self.y_size += 1;
    }

    /// S(X ∪ Y) in bits for the live slots X.
    pub fn entropy(&self, x: &[usize]) -> usize {
        let mut mask = vec![0u64; self.words];
        for &q in x {
            for b in [q, self.slots + q] {
                mask[b / 64] |= 1 << (b % 64);
            }
        }
        let mut buf: Vec<u64> = self.rows.iter().enumerate().map(|(i, v)| v & mask[i % self.words]).collect();
        let rank = rank_in_place(&mut buf, self.words);
        self.y_rank + rank - x.len() - self.y_size
    }
}

impl ColumnOps for ConditionedSpan {
    fn h(&mut self, q: usize) {
        for r in 0..self.len() {
            if self.get(r, q) != self.get(r, self.slots + q) {
                self.flip(r, q);
                self.flip(r, self.slots + q);
            }
        }
    }

    fn s(&mut self, q: usize) {
        for r in 0..self.len() {
            if self.get(r, q) {
                self.flip(r, self.slots + q);
            }
        }
    }

    fn cx(&mut self, control: usize, target: usize) {
        for r in 0..self.len() {
            if self.get(r, control) {
                self.flip(r, target);
            }
            if self.get(r, self.slots + target) {
                self.flip(r, self.slots + control);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_start_has_no_entropy() {
        let s = ConditionedSpan::new(4, false);
        assert_eq!(s.entropy(&[0, 1, 2]), 0);
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn reference_start_is_maximally_mixed() {
        let s = ConditionedSpan::new(4, true);
        assert_eq!(s.entropy(&[0, 2]), 2);
        assert_eq!(s.entropy(&[0, 1, 2, 3]), 4);
    }

    #[test]
    fn retiring_half_of_a_bell_pair() {
        // Slots 0 and 1 hold a Bell pair.
        let mut s = ConditionedSpan::new(2, false);
        s.h(0);
        s.cx(0, 1);
        let mut into = s.clone();
        into.retire_into(0);
        into.add_zero(0);
        assert_eq!(into.entropy(&[]), 1);
        assert_eq!(into.entropy(&[1]), 0);
        assert_eq!(into.entropy(&[0]), 1);
        let mut out = s.clone();
        out.retire_outside(0);
        out.add_zero(0);
        assert_eq!(out.entropy(&[1]), 1);
        assert_eq!(out.entropy(&[]), 0);
    }
}
