//! Permutations of {1..m}, stored 0-indexed.

use crate::error::PermError;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<u8>,
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        assert!(m <= u8::MAX as usize + 1);
        Perm { map: (0..m).map(|i| i as u8).collect() }
    }

    /// From a 0-indexed image array.
    pub fn from_zero_based(map: Vec<usize>) -> Result<Self, PermError> {
        let m = map.len();
        if m == 0 || m > 256 {
            return Err(PermError::NotBijection(format!("size {m} out of range")));
        }
        let mut seen = vec![false; m];
        for &x in &map {
            if x >= m || seen[x] {
                return Err(PermError::NotBijection(format!("{map:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { map: map.into_iter().map(|x| x as u8).collect() })
    }

    /// From a 1-indexed image array, `map[i-1] = p(i)`.
    pub fn from_one_based(map: &[usize]) -> Result<Self, PermError> {
        if map.contains(&0) {
            return Err(PermError::NotBijection(format!("{map:?}")));
        }
        Self::from_zero_based(map.iter().map(|x| x - 1).collect())
    }

    /// From 1-indexed cycles, e.g. `&[&[1, 3], &[2, 5, 4]]`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut map: Vec<usize> = (0..m).collect();
        let mut touched = vec![false; m];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > m || touched[x - 1] {
                    return Err(PermError::NotBijection(format!("cycle {c:?} in S_{m}")));
                }
                touched[x - 1] = true;
                map[x - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Self::from_zero_based(map)
    }

    /// The transposition of two 0-indexed points.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(m);
        p.map.swap(i, j);
        p
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    /// Image of a 0-indexed point.
    pub fn at(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().map(|&x| x as usize)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images().enumerate().all(|(i, x)| i == x)
    }

    /// `(self ∘ q)(x) = self(q(x))`.
    pub fn compose(&self, q: &Perm) -> Result<Perm, PermError> {
        if self.size() != q.size() {
            return Err(PermError::SizeMismatch(self.size(), q.size()));
        }
        Ok(self.then_unchecked(q))
    }

    pub(crate) fn then_unchecked(&self, q: &Perm) -> Perm {
        Perm { map: q.map.iter().map(|&x| self.map[x as usize]).collect() }
    }

    /// Composition for callers that already know the sizes agree.
    pub fn mul(&self, q: &Perm) -> Perm {
        assert_eq!(self.size(), q.size(), "permutation size mismatch");
        self.then_unchecked(q)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.size()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { map: inv }
    }

    /// Disjoint cycles including fixed points, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.size();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.at(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.at(x);
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let m = self.size();
        let mut seen = 0u64;
        let mut big = if m > 64 { vec![false; m] } else { Vec::new() };
        let mut count = 0;
        for s in 0..m {
            let visited = if m > 64 { big[s] } else { seen >> s & 1 == 1 };
            if visited {
                continue;
            }
            count += 1;
            let mut x = s;
            loop {
                if m > 64 {
                    big[x] = true;
                } else {
                    seen |= 1 << x;
                }
                x = self.at(x);
                if x == s {
                    break;
                }
            }
        }
        count
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Canonical 1-indexed cycle notation without fixed points; `()` for the
    /// identity.
    pub fn cycle_string(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }

    /// Parses the output of `cycle_string`.
    pub fn parse_cycles(m: usize, s: &str) -> Result<Perm, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in s.split('(').skip(1) {
            let body = chunk
                .strip_suffix(')')
                .ok_or_else(|| PermError::NotBijection(format!("bad cycle string {s:?}")))?;
            let c: Result<Vec<usize>, _> = body.split_whitespace().map(str::parse).collect();
            let c = c.map_err(|_| PermError::NotBijection(format!("bad cycle string {s:?}")))?;
            if !c.is_empty() {
                cycles.push(c);
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(m, &refs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// Permutations of {0..m-1} in lexicographic order of their image arrays.
pub struct LexPerms {
    cur: Option<Vec<u8>>,
}

impl LexPerms {
    pub fn new(m: usize) -> Self {
        LexPerms { cur: Some((0..m as u8).collect()) }
    }
}

impl Iterator for LexPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.cur.take()?;
        let out = Perm { map: cur.clone() };
        let mut a = cur;
        let n = a.len();
        if n >= 2 {
            let mut i = n - 1;
            while i > 0 && a[i - 1] >= a[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while a[j] <= a[i - 1] {
                    j -= 1;
                }
                a.swap(i - 1, j);
                a[i..].reverse();
                self.cur = Some(a);
            }
        }
        Some(out)
    }
}
