//! Critical bond probability from crossings of a size-independent
//! quantity: the first-to-last-layer connectivity for h = 1 and the Binder
//! cumulant for h ≥ 2.

use crate::error::RbcError;
use crate::lattice::{build_lattice, Boundary};
use crate::measure::Accumulator;
use crate::sw::{Chain, RbcParams};
use iesb_core::crossing::{median, pairwise_crossings};
use iesb_core::SeedPath;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const TAG_BOOTSTRAP: u64 = 0x626f_6f74;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalScan {
    pub h: u32,
    /// Chain lengths L; each lattice has T = L layers and free boundaries.
    pub sizes: Vec<usize>,
    /// Increasing grid of ν.
    pub nus: Vec<f64>,
    pub sweeps: usize,
    pub thermalization: usize,
    pub blocks: usize,
    pub bootstrap: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalEstimate {
    pub nu_c: f64,
    /// Standard deviation of the bootstrap estimates.
    pub error: f64,
    pub observable: String,
    /// Crossings of size pairs (i, j), i < j.
    pub pairwise: Vec<Option<f64>>,
    /// Observable per size and grid point.
    pub curves: Vec<Vec<f64>>,
    /// Bootstrap replicas that produced no crossing.
    pub bootstrap_misses: usize,
}

impl CriticalScan {
    fn statistic(&self, acc: &Accumulator) -> f64 {
        if self.h == 1 {
            acc.connectivity()
        } else {
            acc.binder()
        }
    }

    pub fn observable(&self) -> &'static str {
        if self.h == 1 {
            "connectivity"
        } else {
            "binder"
        }
    }

    fn validate(&self) -> Result<(), RbcError> {
        if self.sizes.len() < 3 {
            return Err(RbcError::Param { field: "sizes", reason: "need at least three sizes".into() });
        }
        if self.nus.len() < 2 || self.nus.windows(2).any(|w| w[1] <= w[0]) {
            return Err(RbcError::Param { field: "nus", reason: "need an increasing grid of two or more".into() });
        }
        if self.blocks < 2 {
            return Err(RbcError::Param { field: "blocks", reason: "need at least two blocks".into() });
        }
        Ok(())
    }

    /// Block accumulators for every (size, ν) point, sizes outermost.
    pub fn run_points(&self) -> Result<Vec<Vec<Vec<Accumulator>>>, RbcError> {
        self.validate()?;
        let points: Vec<(usize, usize)> =
            (0..self.sizes.len()).flat_map(|i| (0..self.nus.len()).map(move |j| (i, j))).collect();
        let blocks: Vec<Vec<Accumulator>> = points
            .par_iter()
            .map(|&(i, j)| {
                let l = self.sizes[i];
                let lattice = build_lattice(l, l, &Boundary::free(l))?;
                let seed = SeedPath::root(self.seed).path(&[l as u64, j as u64]).key();
                let params = RbcParams {
                    h: self.h,
                    nu: self.nus[j],
                    sweeps: self.sweeps,
                    thermalization: self.thermalization,
                    stride: 1,
                    seed,
                };
                Chain::new(lattice, params)?.run_blocks(self.blocks)
            })
            .collect::<Result<_, RbcError>>()?;
        let mut it = blocks.into_iter();
        Ok(self.sizes.iter().map(|_| (0..self.nus.len()).map(|_| it.next().expect("one per point")).collect()).collect())
    }

    fn curves(&self, data: &[Vec<Vec<Accumulator>>], pick: &mut impl FnMut(&[Accumulator]) -> Accumulator) -> Vec<Vec<f64>> {
        data.iter().map(|per_nu| per_nu.iter().map(|b| self.statistic(&pick(b))).collect()).collect()
    }

    /// Median of the pairwise crossings, with a block bootstrap for the error.
    pub fn estimate(&self, data: &[Vec<Vec<Accumulator>>]) -> Result<CriticalEstimate, RbcError> {
        let (lo, hi) = (self.nus[0], *self.nus.last().expect("validated"));
        let curves = self.curves(data, &mut |b| Accumulator::merged(b));
        let pairwise = pairwise_crossings(&self.nus, &curves);
        let found: Vec<f64> = pairwise.iter().flatten().copied().collect();
        let nu_c = median(&found).ok_or(RbcError::OutOfRange { lo, hi })?;
        let mut reps = Vec::with_capacity(self.bootstrap);
        let mut misses = 0;
        for b in 0..self.bootstrap {
            let mut rng = SeedPath::root(self.seed).path(&[TAG_BOOTSTRAP, b as u64]).rng();
            let c = self.curves(data, &mut |blocks| {
                let mut acc = Accumulator::default();
                for _ in 0..blocks.len() {
                    acc.merge(&blocks[rng.random_range(0..blocks.len())]);
                }
                acc
            });
            let found: Vec<f64> = pairwise_crossings(&self.nus, &c).into_iter().flatten().collect();
            match median(&found) {
                Some(m) => reps.push(m),
                None => misses += 1,
            }
        }
        let mean = reps.iter().sum::<f64>() / reps.len().max(1) as f64;
        let var = reps.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (reps.len().max(2) - 1) as f64;
        Ok(CriticalEstimate {
            nu_c,
            error: var.sqrt(),
            observable: self.observable().into(),
            pairwise,
            curves,
            bootstrap_misses: misses,
        })
    }
}

pub fn locate_critical(scan: &CriticalScan) -> Result<CriticalEstimate, RbcError> {
    let data = scan.run_points()?;
    scan.estimate(&data)
}
