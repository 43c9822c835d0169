//! Layer-by-layer plan of a brickwork experiment: which gates act where and
//! which sites are probed. Both engines execute the same plan.
//!
//! A brick on sites (x, x+1) is two gate layers. The first gate acts on the
//! parallel pairs (x_a, x+1_a) and (x_b, x+1_b), the second gate on the
//! crossed pairs (x_b, x+1_a) and (x_a, x+1_b). The same unitary is used on
//! both pairs of a layer, which keeps the circuit invariant under the a/b swap.

use crate::clifford::GROUP_ORDER;
use crate::seed::{SeedPath, TAG_ETA, TAG_GATE, TAG_HAAR};
use crate::spec::{CircuitSpec, GateFamily};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    A,
    B,
}

impl Species {
    pub fn other(self) -> Self {
        match self {
            Species::A => Species::B,
            Species::B => Species::A,
        }
    }
    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateDraw {
    /// Index into the Clifford table.
    Clifford(u16),
    /// Seed for a Haar-random 4x4 unitary.
    Haar(u64),
}

/// One two-qubit gate application: local qubit 0 sits at `(left, s0)`,
/// local qubit 1 at `(right, s1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateSlot {
    pub q0: (usize, Species),
    pub q1: (usize, Species),
    pub gate: GateDraw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Brick {
    pub left: usize,
    pub right: usize,
    pub parallel: GateDraw,
    pub cross: GateDraw,
}

impl Brick {
    /// The four gate applications in execution order.
    pub fn slots(&self) -> [GateSlot; 4] {
        use Species::*;
        let (x, y) = (self.left, self.right);
        [
            GateSlot { q0: (x, A), q1: (y, A), gate: self.parallel },
            GateSlot { q0: (x, B), q1: (y, B), gate: self.parallel },
            GateSlot { q0: (x, B), q1: (y, A), gate: self.cross },
            GateSlot { q0: (x, A), q1: (y, B), gate: self.cross },
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerPlan {
    pub bricks: Vec<Brick>,
    /// Sites where the probe fires after the bricks, ascending.
    pub probes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub layers: Vec<LayerPlan>,
}

fn draw(family: GateFamily, seed: SeedPath) -> GateDraw {
    match family {
        GateFamily::Clifford2Uniform => GateDraw::Clifford(seed.below(GROUP_ORDER as u64) as u16),
        GateFamily::Haar2 => GateDraw::Haar(seed.child(TAG_HAAR).key()),
    }
}

impl Schedule {
    pub fn layer(spec: &CircuitSpec, t: usize) -> LayerPlan {
        let root = SeedPath::root(spec.master_seed);
        let l = spec.l;
        let off = t % 2;
        let bricks = (0..l / 2)
            .map(|j| {
                let left = (2 * j + off) % l;
                let g = root.path(&[TAG_GATE, t as u64, left as u64]);
                Brick {
                    left,
                    right: (left + 1) % l,
                    parallel: draw(spec.gate_family, g.child(0)),
                    cross: draw(spec.gate_family, g.child(1)),
                }
            })
            .collect();
        let probes = (0..l)
            .filter(|&x| root.path(&[TAG_ETA, t as u64, x as u64]).uniform() < spec.p)
            .collect();
        LayerPlan { bricks, probes }
    }

    pub fn new(spec: &CircuitSpec) -> Self {
        Schedule { layers: (0..spec.t).map(|t| Schedule::layer(spec, t)).collect() }
    }

    pub fn probe_count(&self) -> usize {
        self.layers.iter().map(|l| l.probes.len()).sum()
    }
}
