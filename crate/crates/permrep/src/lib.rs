//! Exact algebra of the symmetric group for replica calculations: permutation
//! arithmetic, Gram matrices of permutation operators and their inverses (the
//! Weingarten function), the centralizer of the a/b replica swap, the set of
//! maximal-weight spins W₊ and the Haar-averaged brick weight.

pub mod brick;
pub mod error;
pub mod export;
pub mod group;
pub mod perm;
pub mod replica;
pub mod symbolic;
pub mod weingarten;

pub use brick::{brick_weight, brick_weight_table, BrickTable, BrickValue};
pub use error::PermError;
pub use group::SymmetricGroup;
pub use perm::{LexPerms, Perm};
pub use replica::{
    centralizer_of_swap, max_cycle_bound, symmetric_cycle_decompose, w_plus_set, ReplicaLabeling,
    WPlus,
};
pub use weingarten::{gram_matrix, weingarten_table, Dim, GramMatrix, WeingartenTable};

/// `p ∘ q`, i.e. x ↦ p(q(x)).
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm, PermError> {
    p.compose(q)
}

pub fn cycle_count(p: &Perm) -> usize {
    p.cycle_count()
}
