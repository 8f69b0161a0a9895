use serde::{Deserialize, Serialize};

use super::{FieldError, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistKind {
    Suzuki,
    Ree,
}

/// The twisting automorphism of GF(n) for `n = 2 n0^2` (Suzuki) or
/// `n = 3 n0^2` (Ree). Its square is the Frobenius `x -> x^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSpec {
    kind: TwistKind,
    n0: u64,
    n: u64,
}

impl TwistSpec {
    /// `n = 2^(2s+1)` with `s >= 1`.
    pub fn suzuki(n: u64) -> Result<Self, FieldError> {
        let n0 = root_of(n, 2).filter(|&n0| n0 >= 2);
        n0.map(|n0| TwistSpec {
            kind: TwistKind::Suzuki,
            n0,
            n,
        })
        .ok_or(FieldError::InvalidTwistSize(n, "Suzuki"))
    }

    /// `n = 3^(2s+1)` with `s >= 0`.
    pub fn ree(n: u64) -> Result<Self, FieldError> {
        root_of(n, 3)
            .map(|n0| TwistSpec {
                kind: TwistKind::Ree,
                n0,
                n,
            })
            .ok_or(FieldError::InvalidTwistSize(n, "Ree"))
    }

    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            TwistKind::Suzuki => 2,
            TwistKind::Ree => 3,
        }
    }

    /// The integer exponent standing for the automorphism: `2 n0` or `3 n0`.
    pub fn exponent(&self) -> u64 {
        self.characteristic() * self.n0
    }

    pub fn matches(&self, field: &FieldSpec) -> bool {
        field.characteristic() == self.characteristic() && field.order() == self.n
    }
}

/// `n0` with `n = base * n0^2` and `n0` a power of `base`.
fn root_of(n: u64, base: u64) -> Option<u64> {
    let mut n0 = 1u64;
    loop {
        let v = base.checked_mul(n0.checked_mul(n0)?)?;
        if v == n {
            return Some(n0);
        }
        if v > n {
            return None;
        }
        n0 *= base;
    }
}
