//! The brickwork circuit as a graph: bricks are vertices and every place
//! a transduction can happen is a candidate edge.
//!
//! Layer t has L/2 bricks; brick k covers sites (2k+o, 2k+o+1) mod L with
//! o = t mod 2. The slot of site y after layer t links the brick holding y
//! in layer t to the brick holding y in layer t+1. After the last layer it
//! links to a final terminal vertex of site y, which carries the final-time
//! boundary tag. Each site also has an initial terminal, joined to its
//! first brick by a permanent edge, carrying the initial-time tag.

use crate::error::RbcError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryTag {
    Free,
    /// Pinned to the cyclic-shift spin, the one favored on sites of P_S.
    FixedShift,
    /// Pinned to the identity spin.
    FixedIdentity,
}

impl BoundaryTag {
    /// Spin value this tag pins to with `h` states. With h = 1 both fixed
    /// tags pin to the only state.
    pub fn pinned(self, h: u32) -> Option<u8> {
        match self {
            BoundaryTag::Free => None,
            BoundaryTag::FixedIdentity => Some(0),
            BoundaryTag::FixedShift => Some(if h >= 2 { 1 } else { 0 }),
        }
    }
}

/// Tags per site at the two time boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub initial: Vec<BoundaryTag>,
    #[serde(rename = "final")]
    pub final_: Vec<BoundaryTag>,
}

impl Boundary {
    pub fn free(l: usize) -> Self {
        Boundary::uniform(l, BoundaryTag::Free)
    }

    pub fn uniform(l: usize, tag: BoundaryTag) -> Self {
        Boundary { initial: vec![tag; l], final_: vec![tag; l] }
    }

    /// Final sites in `p_sites` pinned to the shift and the rest to the
    /// identity. The initial boundary is free for a pure input; for a mixed
    /// input it follows the same rule with `reference_sites`.
    pub fn experiment(l: usize, p_sites: &[usize], reference_sites: Option<&[usize]>) -> Self {
        let tags = |inside: &[usize]| {
            (0..l)
                .map(|y| if inside.contains(&y) { BoundaryTag::FixedShift } else { BoundaryTag::FixedIdentity })
                .collect()
        };
        Boundary {
            initial: match reference_sites {
                None => vec![BoundaryTag::Free; l],
                Some(r) => tags(r),
            },
            final_: tags(p_sites),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    Brick { layer: usize, left: usize },
    /// Boundary vertex of one site at time 0 or T.
    Terminal { time: usize, site: usize, tag: BoundaryTag },
}

/// Probe slot of `site` right after `layer`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub site: usize,
    pub layer: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// `None` for the permanent edges to the initial terminals.
    pub slot: Option<Slot>,
}

/// Lattice with its current bond and spin configuration. `bonds[e]` is
/// true when edge e is present, i.e. when no transduction happened in
/// its slot. This is the opposite of the η convention, where η = 1 marks a
/// transduction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RbcLattice {
    pub l: usize,
    pub t: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub bonds: Vec<bool>,
    pub spins: Vec<u8>,
}

/// Bond state for a transduction indicator η.
pub fn bond_from_eta(eta: bool) -> bool {
    !eta
}

pub fn build_lattice(l: usize, t: usize, boundary: &Boundary) -> Result<RbcLattice, RbcError> {
    if l < 2 || l % 2 != 0 {
        return Err(RbcError::Geometry(format!("L must be even and >= 2, got {l}")));
    }
    if t < 1 {
        return Err(RbcError::Geometry("T must be >= 1".into()));
    }
    if boundary.initial.len() != l || boundary.final_.len() != l {
        return Err(RbcError::Geometry(format!(
            "boundary has {} initial and {} final tags for L = {l}",
            boundary.initial.len(),
            boundary.final_.len()
        )));
    }
    let half = l / 2;
    for k in 0..half {
        let pins = [boundary.initial[2 * k], boundary.initial[2 * k + 1]];
        if pins.contains(&BoundaryTag::FixedShift) && pins.contains(&BoundaryTag::FixedIdentity) {
            return Err(RbcError::Geometry(format!("initial tags of sites {} and {} pin one brick two ways", 2 * k, 2 * k + 1)));
        }
    }
    let mut vertices = Vec::with_capacity(half * t + 2 * l);
    for layer in 0..t {
        for k in 0..half {
            vertices.push(Vertex::Brick { layer, left: (2 * k + layer % 2) % l });
        }
    }
    for (time, tags) in [(0, &boundary.initial), (t, &boundary.final_)] {
        for (site, &tag) in tags.iter().enumerate() {
            vertices.push(Vertex::Terminal { time, site, tag });
        }
    }
    let brick = |layer: usize, y: usize| layer * half + (y + l - layer % 2) % l / 2;
    let initial = |y: usize| half * t + y;
    let fin = |y: usize| half * t + l + y;
    let mut edges = Vec::with_capacity(l * (t + 1));
    for y in 0..l {
        edges.push(Edge { a: initial(y), b: brick(0, y), slot: None });
    }
    for layer in 0..t {
        for y in 0..l {
            let b = if layer + 1 < t { brick(layer + 1, y) } else { fin(y) };
            edges.push(Edge { a: brick(layer, y), b, slot: Some(Slot { site: y, layer }) });
        }
    }
    let n = vertices.len();
    let lat = RbcLattice { l, t, vertices, bonds: vec![true; edges.len()], edges, spins: vec![0; n] };
    lat.check_invariants()?;
    Ok(lat)
}

impl RbcLattice {
    pub fn bricks(&self) -> usize {
        self.l / 2 * self.t
    }

    /// Index of the brick of `layer` that holds `site`.
    pub fn brick_index(&self, layer: usize, site: usize) -> usize {
        layer * (self.l / 2) + (site + self.l - layer % 2) % self.l / 2
    }

    /// Index of the edge for a probe slot.
    pub fn slot_edge(&self, site: usize, layer: usize) -> usize {
        self.l + layer * self.l + site
    }

    /// Sets every slot's bond from the transduction indicators η(site, layer).
    pub fn set_transductions(&mut self, eta: impl Fn(usize, usize) -> bool) {
        for e in 0..self.edges.len() {
            if let Some(s) = self.edges[e].slot {
                self.bonds[e] = bond_from_eta(eta(s.site, s.layer));
            }
        }
    }

    pub fn pinned(&self, v: usize, h: u32) -> Option<u8> {
        match self.vertices[v] {
            Vertex::Terminal { tag, .. } => tag.pinned(h),
            Vertex::Brick { .. } => None,
        }
    }

    /// Pinned vertices take their value, first-layer bricks that of their
    /// pinned initial terminals, free initial terminals that of their
    /// brick, and all others the identity spin.
    pub fn reset_spins(&mut self, h: u32) {
        for v in 0..self.vertices.len() {
            self.spins[v] = self.pinned(v, h).unwrap_or(0);
        }
        for e in 0..self.l {
            let Edge { a, b, .. } = self.edges[e];
            if let Some(s) = self.pinned(a, h) {
                self.spins[b] = s;
            }
        }
        for e in 0..self.l {
            let Edge { a, b, .. } = self.edges[e];
            self.spins[a] = self.spins[b];
        }
    }

    fn sites_of(&self, v: usize) -> Vec<(usize, usize)> {
        match self.vertices[v] {
            Vertex::Brick { layer, left } => vec![(layer, left), (layer, (left + 1) % self.l)],
            Vertex::Terminal { time, site, .. } => vec![(time, site)],
        }
    }

    /// Every edge joins the bricks (or terminals) that hold its site on the
    /// two sides of its slot; tags sit only on terminals at times 0 and T.
    pub fn check_invariants(&self) -> Result<(), RbcError> {
        let bad = |m: String| Err(RbcError::Invariant(m));
        for (i, v) in self.vertices.iter().enumerate() {
            if let Vertex::Terminal { time, .. } = v {
                if *time != 0 && *time != self.t {
                    return bad(format!("terminal {i} at time {time}"));
                }
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let (va, vb) = (self.vertices[e.a], self.vertices[e.b]);
            match (e.slot, va, vb) {
                (None, Vertex::Terminal { time: 0, site, .. }, Vertex::Brick { layer: 0, .. }) => {
                    if !self.sites_of(e.b).iter().any(|&(_, y)| y == site) {
                        return bad(format!("permanent edge {i} misses site {site}"));
                    }
                }
                (Some(s), Vertex::Brick { layer, .. }, _) if layer == s.layer => {
                    let holds = |v: usize| self.sites_of(v).iter().any(|&(_, y)| y == s.site);
                    let next_ok = match vb {
                        Vertex::Brick { layer: lb, .. } => lb == layer + 1,
                        Vertex::Terminal { time, site, .. } => time == self.t && site == s.site && layer + 1 == self.t,
                    };
                    if !holds(e.a) || !holds(e.b) || !next_ok {
                        return bad(format!("edge {i} does not follow slot {s:?}"));
                    }
                }
                _ => return bad(format!("edge {i} has an unexpected shape")),
            }
        }
        Ok(())
    }

    /// JSON snapshot of geometry and configuration.
    pub fn snapshot(&self) -> String {
        serde_json::to_string(self).expect("lattice serializes")
    }
}
