//! One checker per structural statement about the groups, each producing a
//! [`PropositionReport`].

mod claim;
mod psl;
mod report;
mod twisted;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ffield::FieldError;
use crate::groups::{Family, GroupError};
use crate::permeng::PermError;

pub use claim::{identity_failures, verify_vigh_claim, ClaimInstance, Sign};
pub use psl::{dickson_audit, verify_involutions, verify_maximal_cyclic_intersection, verify_order_p_conjugacy};
pub use report::{Mode, PropositionReport, Recorder, Scalar, Status, Witness, MAX_EXACT_JSON_INT};
pub use twisted::{
    divisors_of_any, stabiliser_closed_form, stabiliser_report, verify_ree_semiregular,
    verify_stabiliser_orders, verify_suzuki_partition, verify_suzuki_semiregular,
    verify_unitary_semiregular, DEFAULT_REE_BUDGET,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{prop} is not defined for {family}")]
    WrongFamily { prop: PropId, family: Family },
    #[error("{prop} for {family} supports n in {supported:?}, got {n}")]
    UnsupportedN {
        prop: PropId,
        family: Family,
        n: u64,
        supported: &'static [u64],
    },
}

/// The checkers that run on a single group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropId {
    Involutions,
    MaxCyclic,
    OrderP,
    DicksonAudit,
    UnitarySemiregular,
    SuzukiPartition,
    SuzukiSemiregular,
    ReeSemiregular,
    StabiliserOrder,
}

const LINE_NS: &[u64] = &[5, 7, 9, 11, 13];
const DICKSON_NS: &[u64] = &[5, 7, 9];
const UNITARY_NS: &[u64] = &[3, 5];
const SUZUKI_NS: &[u64] = &[8];
const REE_NS: &[u64] = &[3, 27];

impl PropId {
    pub const ALL: [PropId; 9] = [
        PropId::Involutions,
        PropId::MaxCyclic,
        PropId::OrderP,
        PropId::DicksonAudit,
        PropId::UnitarySemiregular,
        PropId::SuzukiPartition,
        PropId::SuzukiSemiregular,
        PropId::ReeSemiregular,
        PropId::StabiliserOrder,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PropId::Involutions => "involutions",
            PropId::MaxCyclic => "max_cyclic",
            PropId::OrderP => "order_p",
            PropId::DicksonAudit => "dickson_audit",
            PropId::UnitarySemiregular => "unitary_semiregular",
            PropId::SuzukiPartition => "suzuki_partition",
            PropId::SuzukiSemiregular => "suzuki_semiregular",
            PropId::ReeSemiregular => "ree_semiregular",
            PropId::StabiliserOrder => "stabiliser_order",
        }
    }

    /// Supported `n` for this check on `family`, or `None` if it does not apply.
    pub fn supported(self, family: Family) -> Option<&'static [u64]> {
        use Family::*;
        match (self, family) {
            (PropId::Involutions, Pgl2) => Some(LINE_NS),
            (PropId::MaxCyclic | PropId::OrderP, Psl2) => Some(LINE_NS),
            (PropId::DicksonAudit, Psl2) => Some(DICKSON_NS),
            (PropId::UnitarySemiregular, Psu3) => Some(UNITARY_NS),
            (PropId::SuzukiPartition | PropId::SuzukiSemiregular, Sz) => Some(SUZUKI_NS),
            (PropId::ReeSemiregular, Ree) => Some(REE_NS),
            (PropId::StabiliserOrder, Pgl2 | Psl2) => Some(LINE_NS),
            (PropId::StabiliserOrder, Pgu3 | Psu3) => Some(UNITARY_NS),
            (PropId::StabiliserOrder, Sz) => Some(SUZUKI_NS),
            (PropId::StabiliserOrder, Ree) => Some(REE_NS),
            _ => None,
        }
    }

    /// Checks that apply to `family` at `n`, in a fixed order.
    pub fn applicable(family: Family, n: u64) -> Vec<PropId> {
        PropId::ALL
            .into_iter()
            .filter(|p| p.supported(family).is_some_and(|ns| ns.contains(&n)))
            .collect()
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Error)]
#[error("unknown check `{0}`")]
pub struct UnknownProp(pub String);

impl FromStr for PropId {
    type Err = UnknownProp;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropId::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| UnknownProp(s.to_string()))
    }
}

/// Every (family, n) of the default matrix.
pub fn desk_matrix() -> Vec<(Family, u64)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let mut ns: Vec<u64> = PropId::ALL
            .into_iter()
            .filter_map(|p| p.supported(family))
            .flatten()
            .copied()
            .collect();
        ns.sort_unstable();
        ns.dedup();
        out.extend(ns.into_iter().map(|n| (family, n)));
    }
    out
}

/// Per-checker RNG seed derived from the run seed and the checker id
/// (FNV-1a over the id, mixed with the seed).
pub fn derive_seed(seed: u64, prop_id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in prop_id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed.rotate_left(17)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub budget: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            budget: DEFAULT_REE_BUDGET,
        }
    }
}

/// Validates that `prop` applies to `(family, n)`.
pub fn check_supported(prop: PropId, family: Family, n: u64) -> Result<(), VerifyError> {
    let ns = prop
        .supported(family)
        .ok_or(VerifyError::WrongFamily { prop, family })?;
    if !ns.contains(&n) {
        return Err(VerifyError::UnsupportedN {
            prop,
            family,
            n,
            supported: ns,
        });
    }
    Ok(())
}

/// Runs one checker.
pub fn run_prop(
    prop: PropId,
    family: Family,
    n: u64,
    opts: &RunOptions,
) -> Result<PropositionReport, VerifyError> {
    check_supported(prop, family, n)?;
    match prop {
        PropId::Involutions => verify_involutions(n),
        PropId::MaxCyclic => verify_maximal_cyclic_intersection(n),
        PropId::OrderP => verify_order_p_conjugacy(n),
        PropId::DicksonAudit => dickson_audit(n),
        PropId::UnitarySemiregular => verify_unitary_semiregular(n),
        PropId::SuzukiPartition => verify_suzuki_partition(n),
        PropId::SuzukiSemiregular => verify_suzuki_semiregular(n),
        PropId::ReeSemiregular => verify_ree_semiregular(n, opts.budget, opts.seed),
        PropId::StabiliserOrder => verify_stabiliser_orders(family, n),
    }
}
