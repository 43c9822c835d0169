//! Swendsen-Wang updates of the Edwards-Sokal joint measure
//! ∏_edges [(1−ν)·(bond absent) + ν·δ(σ_a, σ_b)·(bond present)].

use crate::error::RbcError;
use crate::lattice::{Edge, RbcLattice};
use crate::measure::{measure, Accumulator};
use iesb_core::seed::TAG_CHAIN;
use iesb_core::SeedPath;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RbcParams {
    /// Cluster weight, the number of spin states.
    pub h: u32,
    /// Probability that an edge between equal spins is present.
    pub nu: f64,
    pub sweeps: usize,
    pub thermalization: usize,
    /// Sweeps between measurements.
    pub stride: usize,
    pub seed: u64,
}

impl RbcParams {
    pub fn new(h: u32, nu: f64, seed: u64) -> Self {
        RbcParams { h, nu, sweeps: 1000, thermalization: 100, stride: 1, seed }
    }

    pub fn validate(&self) -> Result<(), RbcError> {
        if self.h < 1 || self.h > u8::MAX as u32 {
            return Err(RbcError::Param { field: "h", reason: format!("must lie in [1, 255], got {}", self.h) });
        }
        if !(0.0..=1.0).contains(&self.nu) {
            return Err(RbcError::Param { field: "nu", reason: format!("must lie in [0, 1], got {}", self.nu) });
        }
        if self.stride == 0 {
            return Err(RbcError::Param { field: "stride", reason: "must be >= 1".into() });
        }
        Ok(())
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct Clusters {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Clusters {
    pub fn new(n: usize) -> Self {
        Clusters { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            let g = self.parent[self.parent[v] as usize];
            self.parent[v] = g;
            v = g as usize;
        }
        v
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
    }

    /// Root of every vertex.
    pub fn roots(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|v| self.find(v)).collect()
    }
}

/// Clusters of the present bonds.
pub fn clusters_of(lattice: &RbcLattice) -> Clusters {
    let mut c = Clusters::new(lattice.vertices.len());
    for (e, &Edge { a, b, .. }) in lattice.edges.iter().enumerate() {
        if lattice.bonds[e] {
            c.union(a, b);
        }
    }
    c
}

/// One Swendsen-Wang update. Bonds are redrawn given the spins: an edge
/// between equal spins is present with probability ν, the permanent edges
/// with probability 1. Then every cluster gets a uniform spin, or the spin
/// of the pinned vertices it contains. Returns the cluster roots.
pub fn sw_sweep(lattice: &mut RbcLattice, h: u32, nu: f64, rng: &mut impl Rng) -> Result<Vec<usize>, RbcError> {
    for (e, &Edge { a, b, slot }) in lattice.edges.iter().enumerate() {
        let equal = lattice.spins[a] == lattice.spins[b];
        lattice.bonds[e] = equal && (slot.is_none() || rng.random::<f64>() < nu);
    }
    let roots = clusters_of(lattice).roots();
    let n = lattice.vertices.len();
    let mut assigned: Vec<Option<u8>> = vec![None; n];
    for v in 0..n {
        if let Some(s) = lattice.pinned(v, h) {
            let r = roots[v];
            match assigned[r] {
                Some(prev) if prev != s => {
                    return Err(RbcError::Invariant(format!("cluster of vertex {v} holds pinned spins {prev} and {s}")))
                }
                _ => assigned[r] = Some(s),
            }
        }
    }
    for v in 0..n {
        let r = roots[v];
        if assigned[r].is_none() {
            assigned[r] = Some(rng.random_range(0..h) as u8);
        }
        lattice.spins[v] = assigned[r].expect("assigned above");
    }
    Ok(roots)
}

/// A Markov chain on one lattice. Sweep k draws from the seed path
/// (seed, chain tag, k), so a chain can be replayed from any point.
#[derive(Clone, Debug)]
pub struct Chain {
    pub lattice: RbcLattice,
    pub params: RbcParams,
    sweeps_done: u64,
    roots: Vec<usize>,
}

impl Chain {
    pub fn new(mut lattice: RbcLattice, params: RbcParams) -> Result<Self, RbcError> {
        params.validate()?;
        lattice.reset_spins(params.h);
        let roots = clusters_of(&lattice).roots();
        Ok(Chain { lattice, params, sweeps_done: 0, roots })
    }

    pub fn sweeps_done(&self) -> u64 {
        self.sweeps_done
    }

    /// Cluster roots after the last sweep.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn sweep(&mut self) -> Result<(), RbcError> {
        let mut rng = SeedPath::root(self.params.seed).path(&[TAG_CHAIN, self.sweeps_done]).rng();
        self.roots = sw_sweep(&mut self.lattice, self.params.h, self.params.nu, &mut rng)?;
        self.sweeps_done += 1;
        Ok(())
    }

    /// Thermalizes, then splits the measured sweeps into `blocks` equal
    /// blocks and returns one accumulator per block.
    pub fn run_blocks(&mut self, blocks: usize) -> Result<Vec<Accumulator>, RbcError> {
        assert!(blocks >= 1);
        for _ in 0..self.params.thermalization {
            self.sweep()?;
        }
        let per_block = (self.params.sweeps / blocks).max(1);
        let mut out = Vec::with_capacity(blocks);
        for _ in 0..blocks {
            let mut acc = Accumulator::default();
            for k in 0..per_block {
                self.sweep()?;
                if (k + 1) % self.params.stride == 0 {
                    acc.push(&measure(&self.lattice, &self.roots, self.params.h));
                }
            }
            out.push(acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, Boundary, BoundaryTag};

    fn chain(l: usize, t: usize, h: u32, nu: f64, b: Boundary) -> Chain {
        Chain::new(build_lattice(l, t, &b).unwrap(), RbcParams::new(h, nu, 11)).unwrap()
    }

    #[test]
    fn full_bonds_make_one_cluster() {
        let mut c = chain(6, 4, 3, 1.0, Boundary::free(6));
        c.sweep().unwrap();
        assert!(c.lattice.bonds.iter().all(|&b| b));
        let s0 = c.lattice.spins[0];
        assert!(c.lattice.spins.iter().all(|&s| s == s0));
    }

    #[test]
    fn no_bonds_leave_spins_independent() {
        let mut c = chain(8, 8, 2, 0.0, Boundary::free(8));
        let mut up = 0usize;
        let mut total = 0usize;
        for _ in 0..200 {
            c.sweep().unwrap();
            let slot_bonds = c.lattice.edges.iter().zip(&c.lattice.bonds).filter(|(e, &b)| e.slot.is_some() && b);
            assert_eq!(slot_bonds.count(), 0);
            let bricks = c.lattice.bricks();
            up += c.lattice.spins[..bricks].iter().filter(|&&s| s == 1).count();
            total += bricks;
        }
        let f = up as f64 / total as f64;
        assert!((f - 0.5).abs() < 0.02, "{f}");
    }

    #[test]
    fn pinned_clusters_keep_their_spin() {
        let b = Boundary::uniform(4, BoundaryTag::FixedShift);
        let mut c = chain(4, 3, 3, 1.0, b);
        for _ in 0..5 {
            c.sweep().unwrap();
            assert!(c.lattice.spins.iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn conflicting_pins_are_reported() {
        let b = Boundary::uniform(4, BoundaryTag::FixedShift);
        let mut lat = build_lattice(4, 2, &b).unwrap();
        lat.reset_spins(2);
        // Forge an inconsistent state: one terminal pinned the other way.
        let last = lat.vertices.len() - 1;
        if let crate::lattice::Vertex::Terminal { tag, .. } = &mut lat.vertices[last] {
            *tag = BoundaryTag::FixedIdentity;
        }
        lat.spins.iter_mut().for_each(|s| *s = 1);
        let mut rng = SeedPath::root(1).rng();
        assert!(matches!(sw_sweep(&mut lat, 2, 1.0, &mut rng), Err(RbcError::Invariant(_))));
    }

    #[test]
    fn replay_is_deterministic() {
        let mut a = chain(8, 6, 2, 0.6, Boundary::free(8));
        let mut b = a.clone();
        for _ in 0..10 {
            a.sweep().unwrap();
            b.sweep().unwrap();
        }
        assert_eq!(a.lattice.spins, b.lattice.spins);
        assert_eq!(a.lattice.bonds, b.lattice.bonds);
    }

    #[test]
    fn params_are_checked() {
        let lat = build_lattice(4, 2, &Boundary::free(4)).unwrap();
        let mut p = RbcParams::new(2, 1.5, 0);
        assert!(matches!(Chain::new(lat.clone(), p.clone()), Err(RbcError::Param { field: "nu", .. })));
        p.nu = 0.5;
        p.h = 0;
        assert!(matches!(Chain::new(lat, p), Err(RbcError::Param { field: "h", .. })));
    }
}
