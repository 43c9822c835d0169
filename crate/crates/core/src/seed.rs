//! Counter-based seed derivation.
//!
//! A `SeedPath` is a 64-bit key folded from a root seed and a sequence of
//! integer coordinates. Every random draw in the simulators is keyed by its
//! coordinates, so the result does not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TAG_GATE: u64 = 0x6761_7465;
pub const TAG_ETA: u64 = 0x6574_61;
pub const TAG_HAAR: u64 = 0x6861_6172;
pub const TAG_INPUT: u64 = 0x696e_7075;
pub const TAG_REALIZATION: u64 = 0x7265_616c;
pub const TAG_CHAIN: u64 = 0x6368_6169;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedPath(u64);

impl SeedPath {
    pub fn root(seed: u64) -> Self {
        SeedPath(splitmix(seed))
    }

    pub fn child(self, k: u64) -> Self {
        SeedPath(splitmix(self.0 ^ splitmix(k.wrapping_mul(0xd6e8_feb8_6659_fd93))))
    }

    pub fn path(self, ks: &[u64]) -> Self {
        ks.iter().fold(self, |s, &k| s.child(k))
    }

    pub fn key(self) -> u64 {
        self.0
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(self) -> f64 {
        self.rng().random::<f64>()
    }

    pub fn below(self, n: u64) -> u64 {
        self.rng().random_range(0..n)
    }
}
