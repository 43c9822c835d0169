//! The two-qubit Clifford group modulo phases (11,520 elements).
//!
//! Elements are enumerated by breadth-first search over the words in
//! {H0, H1, S0, S1, CX01}. Each element is stored with its images of the
//! generators X0, X1, Z0, Z1 (with signs) and a shortest word that realizes
//! it, which is what the engines execute.

use std::collections::HashMap;
use std::sync::OnceLock;

pub const GROUP_ORDER: usize = 11_520;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    H(u8),
    S(u8),
    /// Control on local qubit 0, target on local qubit 1.
    Cx01,
}

pub const GENERATORS: [Elementary; 5] = [
    Elementary::H(0),
    Elementary::H(1),
    Elementary::S(0),
    Elementary::S(1),
    Elementary::Cx01,
];

/// A signed two-qubit Pauli packed as bits x0, x1, z0, z1, sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliRow(pub u8);

impl PauliRow {
    pub fn new(x: [bool; 2], z: [bool; 2], sign: bool) -> Self {
        PauliRow(x[0] as u8 | (x[1] as u8) << 1 | (z[0] as u8) << 2 | (z[1] as u8) << 3 | (sign as u8) << 4)
    }
    pub fn x(self, q: usize) -> bool {
        self.0 >> q & 1 == 1
    }
    pub fn z(self, q: usize) -> bool {
        self.0 >> (2 + q) & 1 == 1
    }
    pub fn sign(self) -> bool {
        self.0 >> 4 & 1 == 1
    }
    /// The unsigned Pauli as a 4-bit code.
    pub fn pauli(self) -> u8 {
        self.0 & 0xf
    }

    pub fn conjugate(self, g: Elementary) -> Self {
        let (mut x, mut z, mut r) = ([self.x(0), self.x(1)], [self.z(0), self.z(1)], self.sign());
        match g {
            Elementary::H(q) => {
                let q = q as usize;
                r ^= x[q] & z[q];
                std::mem::swap(&mut x[q], &mut z[q]);
            }
            Elementary::S(q) => {
                let q = q as usize;
                r ^= x[q] & z[q];
                z[q] ^= x[q];
            }
            Elementary::Cx01 => {
                r ^= x[0] & z[1] & !(x[1] ^ z[0]);
                x[1] ^= x[0];
                z[0] ^= z[1];
            }
        }
        PauliRow::new(x, z, r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clifford2 {
    /// Images of X0, X1, Z0, Z1.
    pub images: [PauliRow; 4],
    /// Gates applied left to right.
    pub word: Vec<Elementary>,
}

impl Clifford2 {
    fn key(images: &[PauliRow; 4]) -> u32 {
        images.iter().fold(0u32, |k, r| k << 5 | r.0 as u32)
    }

    /// Word realizing the inverse element.
    pub fn inverse_word(&self) -> Vec<Elementary> {
        let mut w = Vec::new();
        for &g in self.word.iter().rev() {
            match g {
                Elementary::S(_) => w.extend([g, g, g]),
                _ => w.push(g),
            }
        }
        w
    }
}

pub struct CliffordTable {
    elements: Vec<Clifford2>,
    index: HashMap<u32, usize>,
}

impl CliffordTable {
    fn build() -> Self {
        let id = [
            PauliRow::new([true, false], [false, false], false),
            PauliRow::new([false, true], [false, false], false),
            PauliRow::new([false, false], [true, false], false),
            PauliRow::new([false, false], [false, true], false),
        ];
        let mut elements = vec![Clifford2 { images: id, word: vec![] }];
        let mut index = HashMap::new();
        index.insert(Clifford2::key(&id), 0);
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            head += 1;
            for g in GENERATORS {
                let next = cur.images.map(|r| r.conjugate(g));
                let k = Clifford2::key(&next);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                    e.insert(elements.len());
                    let mut word = cur.word.clone();
                    word.push(g);
                    elements.push(Clifford2 { images: next, word });
                }
            }
        }
        CliffordTable { elements, index }
    }

    pub fn get() -> &'static CliffordTable {
        static TABLE: OnceLock<CliffordTable> = OnceLock::new();
        TABLE.get_or_init(CliffordTable::build)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Clifford2 {
        &self.elements[i]
    }

    /// Index of the element obtained by running `word` from the identity.
    pub fn lookup_word(&self, word: &[Elementary]) -> Option<usize> {
        let mut rows = self.elements[0].images;
        for &g in word {
            rows = rows.map(|r| r.conjugate(g));
        }
        self.index.get(&Clifford2::key(&rows)).copied()
    }
}
