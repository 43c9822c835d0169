use crate::error::StabError;
use crate::gf2::{rank_in_place, words_for};
use iesb_core::{Clifford2, Elementary, Label, Role, Species};
use std::collections::HashMap;

/// Targets that Clifford gates act on by column operations.
pub trait ColumnOps {
    fn h(&mut self, q: usize);
    fn s(&mut self, q: usize);
    fn cx(&mut self, control: usize, target: usize);

    /// Runs the word of `g` with local qubit 0 on `q0` and 1 on `q1`.
    fn apply_clifford2(&mut self, q0: usize, q1: usize, g: &Clifford2) {
        let pick = |k: u8| if k == 0 { q0 } else { q1 };
        for &e in &g.word {
            match e {
                Elementary::H(k) => self.h(pick(k)),
                Elementary::S(k) => self.s(pick(k)),
                Elementary::Cx01 => self.cx(q0, q1),
            }
        }
    }
}

/// Stabilizer tableau of a pure state, one generator per qubit, grown one
/// qubit at a time. Storage is column-major: for each qubit the X bits and
/// the Z bits of all generators are packed into words.
#[derive(Clone, Debug)]
pub struct StabTableau {
    n: usize,
    cap_words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    sign: Vec<u64>,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl Default for StabTableau {
    fn default() -> Self {
        StabTableau::new()
    }
}

impl StabTableau {
    pub fn new() -> Self {
        StabTableau {
            n: 0,
            cap_words: 1,
            x: Vec::new(),
            z: Vec::new(),
            sign: vec![0],
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn active_words(&self) -> usize {
        words_for(self.n)
    }

    fn col(&self, q: usize) -> usize {
        q * self.cap_words
    }

    fn grow_rows(&mut self) {
        let new_cap = self.cap_words * 2;
        let relayout = |v: &Vec<u64>, old: usize| {
            let mut out = vec![0u64; v.len() / old * new_cap];
            for (c, chunk) in v.chunks_exact(old).enumerate() {
                out[c * new_cap..c * new_cap + old].copy_from_slice(chunk);
            }
            out
        };
        self.x = relayout(&self.x, self.cap_words);
        self.z = relayout(&self.z, self.cap_words);
        self.sign.resize(new_cap, 0);
        self.cap_words = new_cap;
    }

    /// Appends a qubit in |0⟩ with stabilizer Z on it.
    pub fn push_zero(&mut self, label: Label) -> usize {
        assert!(!self.index.contains_key(&label), "duplicate label {label:?}");
        if self.n + 1 > self.cap_words * 64 {
            self.grow_rows();
        }
        let q = self.n;
        self.x.resize(self.x.len() + self.cap_words, 0);
        self.z.resize(self.z.len() + self.cap_words, 0);
        let c = self.col(q);
        self.z[c + q / 64] |= 1 << (q % 64);
        self.n += 1;
        self.labels.push(label);
        self.index.insert(label, q);
        q
    }

    /// Appends two qubits in (|00⟩+|11⟩)/√2.
    pub fn push_bell(&mut self, l0: Label, l1: Label) -> (usize, usize) {
        let a = self.push_zero(l0);
        let b = self.push_zero(l1);
        self.h(a);
        self.cx(a, b);
        (a, b)
    }

    /// SWAP of two qubits, realized by exchanging their labels.
    pub fn swap(&mut self, i: usize, j: usize) {
        self.labels.swap(i, j);
        self.index.insert(self.labels[i], i);
        self.index.insert(self.labels[j], j);
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn qubit(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn system_qubit(&self, site: usize, species: Species) -> usize {
        self.index[&Label::system(site, species)]
    }

    pub fn roles(&self, pred: impl Fn(Role) -> bool) -> Vec<usize> {
        (0..self.n).filter(|&q| pred(self.labels[q].role)).collect()
    }

    pub fn next_serial(&self, role: Role) -> usize {
        self.labels.iter().filter(|l| l.role == role).count()
    }

    fn bit(v: &[u64], base: usize, row: usize) -> bool {
        v[base + row / 64] >> (row % 64) & 1 == 1
    }

    /// Generator `row` as (X bits, Z bits, sign).
    pub fn generator(&self, row: usize) -> (Vec<bool>, Vec<bool>, bool) {
        let xs = (0..self.n).map(|q| Self::bit(&self.x, self.col(q), row)).collect();
        let zs = (0..self.n).map(|q| Self::bit(&self.z, self.col(q), row)).collect();
        (xs, zs, Self::bit(&self.sign, 0, row))
    }

    /// Entanglement entropy of `region` in bits: the GF(2) rank of the
    /// generators restricted to the region's columns, minus its size.
    pub fn entropy_region(&self, region: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &q in region {
            assert!(q < self.n, "qubit {q} out of range");
            assert!(!inside[q], "qubit {q} repeated in region");
            inside[q] = true;
        }
        let side: Vec<usize> = if 2 * region.len() <= self.n {
            region.to_vec()
        } else {
            (0..self.n).filter(|&q| !inside[q]).collect()
        };
        if side.is_empty() {
            return 0;
        }
        let w = self.active_words();
        let mut buf = Vec::with_capacity(2 * side.len() * w);
        for &q in &side {
            let c = self.col(q);
            buf.extend_from_slice(&self.x[c..c + w]);
            buf.extend_from_slice(&self.z[c..c + w]);
        }
        rank_in_place(&mut buf, w) - side.len()
    }

    /// Generators as rows over [X bits | Z bits].
    fn row_major(&self) -> (Vec<u64>, usize) {
        let rw = words_for(2 * self.n);
        let mut rows = vec![0u64; self.n * rw];
        for q in 0..self.n {
            let c = self.col(q);
            for r in 0..self.n {
                if Self::bit(&self.x, c, r) {
                    rows[r * rw + q / 64] |= 1 << (q % 64);
                }
                if Self::bit(&self.z, c, r) {
                    let k = self.n + q;
                    rows[r * rw + k / 64] |= 1 << (k % 64);
                }
            }
        }
        (rows, rw)
    }

    /// Pairwise commutation and full rank of the generators.
    pub fn check_invariants(&self) -> Result<(), StabError> {
        let n = self.n;
        let (rows, rw) = self.row_major();
        // X and Z halves of each row, each padded to `hw` words
        let hw = words_for(n);
        let half = |r: usize, off: usize| -> Vec<u64> {
            (0..hw)
                .map(|w| {
                    let mut v = 0u64;
                    for b in 0..64 {
                        let k = w * 64 + b;
                        if k < n && rows[r * rw + (off + k) / 64] >> ((off + k) % 64) & 1 == 1 {
                            v |= 1 << b;
                        }
                    }
                    v
                })
                .collect()
        };
        let xs: Vec<Vec<u64>> = (0..n).map(|r| half(r, 0)).collect();
        let zs: Vec<Vec<u64>> = (0..n).map(|r| half(r, n)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let ones: u32 = (0..hw).map(|w| ((xs[i][w] & zs[j][w]) ^ (zs[i][w] & xs[j][w])).count_ones()).sum();
                if ones % 2 == 1 {
                    return Err(StabError::Invariant(format!("generators {i} and {j} anticommute")));
                }
            }
        }
        let mut buf = rows.clone();
        let rank = rank_in_place(&mut buf, rw);
        if rank != n {
            return Err(StabError::Invariant(format!("generator rank {rank} on {n} qubits")));
        }
        Ok(())
    }

    /// One line per generator: sign, then X and Z bits as hex words.
    pub fn dump_hex(&self) -> Vec<String> {
        let (rows, rw) = self.row_major();
        (0..self.n)
            .map(|r| {
                let words: Vec<String> = rows[r * rw..(r + 1) * rw].iter().map(|w| format!("{w:016x}")).collect();
                format!("{}{}", if Self::bit(&self.sign, 0, r) { '-' } else { '+' }, words.join(""))
            })
            .collect()
    }
}

impl ColumnOps for StabTableau {
    fn h(&mut self, q: usize) {
        let c = self.col(q);
        for w in 0..self.active_words() {
            let (xv, zv) = (self.x[c + w], self.z[c + w]);
            self.sign[w] ^= xv & zv;
            self.x[c + w] = zv;
            self.z[c + w] = xv;
        }
    }

    fn s(&mut self, q: usize) {
        let c = self.col(q);
        for w in 0..self.active_words() {
            let (xv, zv) = (self.x[c + w], self.z[c + w]);
            self.sign[w] ^= xv & zv;
            self.z[c + w] = zv ^ xv;
        }
    }

    fn cx(&mut self, control: usize, target: usize) {
        assert_ne!(control, target);
        let (cc, tc) = (self.col(control), self.col(target));
        for w in 0..self.active_words() {
            let (xc, zc, xt, zt) = (self.x[cc + w], self.z[cc + w], self.x[tc + w], self.z[tc + w]);
            self.sign[w] ^= xc & zt & !(xt ^ zc);
            self.x[tc + w] = xt ^ xc;
            self.z[cc + w] = zc ^ zt;
        }
    }
}
