//! Permutation groups: stabilizer chains, element enumeration, random
//! sampling, cyclic-subgroup and conjugacy analysis, and subgroup lattices of
//! small groups.

mod chain;
mod conj;
mod cyclic;
mod enumerate;
mod perm;
mod random;
mod subgroups;

use thiserror::Error;

pub use chain::PermGroup;
pub use conj::{class_ids, conjugacy_classes, is_conjugate};
pub use cyclic::{
    maximal_cyclic_subgroups, semiregular_cyclic_orders, semiregular_cyclic_orders_sampled,
    CyclicClass, CyclicSubgroups,
};
pub use enumerate::{ElementTable, DEFAULT_ENUMERATION_BOUND};
pub use perm::Permutation;
pub use random::ProductReplacement;
pub use subgroups::{
    all_subgroups, dickson_classify, DicksonType, MulTable, Subgroup, SUBGROUP_LATTICE_BOUND,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("expected permutations of degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: u64, bound: u64 },
    #[error("degree {0} is too large to enumerate")]
    DegreeTooLarge(usize),
    #[error("stabilizer chain has order {computed}, expected {expected}")]
    OrderMismatch { computed: u64, expected: u64 },
    #[error("random Schreier–Sims stalled at order {reached} of {expected}")]
    RandomChainStalled { reached: u64, expected: u64 },
}
