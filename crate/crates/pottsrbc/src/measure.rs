//! Per-configuration estimators on the brick vertices and their running
//! sums.

use crate::lattice::RbcLattice;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    /// Bricks in the largest cluster over all bricks.
    pub largest_cluster: f64,
    /// Whether one cluster holds a brick of the first and of the last layer.
    pub connected: bool,
    /// (h·max_k n_k/N − 1)/(h − 1); zero for h = 1.
    pub magnetization: f64,
    /// h/(h−1)·Σ_k (n_k/N − 1/h)²; the squared magnetization for h = 2.
    pub m2: f64,
}

/// Measures the configuration given the cluster root of every vertex.
pub fn measure(lattice: &RbcLattice, roots: &[usize], h: u32) -> Observation {
    let bricks = lattice.bricks();
    let nv = lattice.vertices.len();
    let mut size = vec![0u32; nv];
    for &r in &roots[..bricks] {
        size[r] += 1;
    }
    let largest = *size.iter().max().unwrap_or(&0) as f64 / bricks as f64;
    let per_layer = lattice.l / 2;
    let mut touches_first = vec![false; nv];
    for &r in &roots[..per_layer] {
        touches_first[r] = true;
    }
    let connected = roots[bricks - per_layer..bricks].iter().any(|&r| touches_first[r]);
    let (magnetization, m2) = if h >= 2 {
        let mut counts = vec![0u32; h as usize];
        for &s in &lattice.spins[..bricks] {
            counts[s as usize] += 1;
        }
        let n = bricks as f64;
        let hf = h as f64;
        let max = *counts.iter().max().expect("h >= 2") as f64 / n;
        let m2 = hf / (hf - 1.0) * counts.iter().map(|&c| (c as f64 / n - 1.0 / hf).powi(2)).sum::<f64>();
        ((hf * max - 1.0) / (hf - 1.0), m2)
    } else {
        (0.0, 0.0)
    };
    Observation { largest_cluster: largest, connected, magnetization, m2 }
}

/// Sums of the estimators; merging is associative and commutative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Accumulator {
    pub count: u64,
    pub largest_cluster: f64,
    pub connected: f64,
    pub magnetization: f64,
    pub m2: f64,
    pub m4: f64,
}

impl Accumulator {
    pub fn push(&mut self, o: &Observation) {
        self.count += 1;
        self.largest_cluster += o.largest_cluster;
        self.connected += o.connected as u8 as f64;
        self.magnetization += o.magnetization;
        self.m2 += o.m2;
        self.m4 += o.m2 * o.m2;
    }

    pub fn merge(&mut self, o: &Accumulator) {
        self.count += o.count;
        self.largest_cluster += o.largest_cluster;
        self.connected += o.connected;
        self.magnetization += o.magnetization;
        self.m2 += o.m2;
        self.m4 += o.m4;
    }

    pub fn merged<'a>(parts: impl IntoIterator<Item = &'a Accumulator>) -> Accumulator {
        let mut acc = Accumulator::default();
        for p in parts {
            acc.merge(p);
        }
        acc
    }

    fn mean(&self, sum: f64) -> f64 {
        sum / self.count as f64
    }

    pub fn mean_largest_cluster(&self) -> f64 {
        self.mean(self.largest_cluster)
    }

    pub fn connectivity(&self) -> f64 {
        self.mean(self.connected)
    }

    pub fn mean_magnetization(&self) -> f64 {
        self.mean(self.magnetization)
    }

    /// 1 − ⟨m⁴⟩ / (3⟨m²⟩²).
    pub fn binder(&self) -> f64 {
        let (m2, m4) = (self.mean(self.m2), self.mean(self.m4));
        1.0 - m4 / (3.0 * m2 * m2)
    }
}
