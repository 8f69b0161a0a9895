//! The six group families as projectivities, validated and converted into
//! permutation groups on their natural domains.

mod families;
mod fraclin;
mod matrix;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{FieldError, FieldSpec};
use crate::permeng::{PermError, PermGroup, Permutation};
use crate::projgeom::{GeometryError, Omega, ProjPoint};

pub use families::{
    build_group, hermitian_gram, is_unitary, pgl2_group, pgu3_group, psl2_group, psu3_group,
    ree_alpha, ree_group, ree_subfield_generators, ree_torus, sz_group, sz_translation,
    unital_translation,
};
pub use fraclin::FracLinMap;
pub use matrix::ProjMatrix;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("singular matrix")]
    Singular,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{family} is not defined for n = {n}: {reason}")]
    Unsupported {
        family: Family,
        n: u64,
        reason: &'static str,
    },
    #[error("generator {label} maps {point} to {image}, which is outside the domain")]
    ImageOffOmega {
        label: String,
        point: ProjPoint,
        image: ProjPoint,
    },
    #[error("generator {0} does not preserve the Hermitian form")]
    NotUnitary(String),
    #[error("generator {0} has no determinant-1 representative")]
    DeterminantNotOne(String),
    #[error("{family}({n}) generated a group of order {computed}, expected {expected}")]
    OrderMismatch {
        family: Family,
        n: u64,
        computed: u64,
        expected: u64,
    },
    #[error("{family}({n}) is not 2-transitive on its domain")]
    NotTwoTransitive { family: Family, n: u64 },
    #[error("the identity has no involution test")]
    IdentityInput,
    #[error("the test is only defined in odd characteristic")]
    EvenCharacteristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pgl2,
    Psl2,
    Pgu3,
    Psu3,
    Sz,
    Ree,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Pgl2,
        Family::Psl2,
        Family::Pgu3,
        Family::Psu3,
        Family::Sz,
        Family::Ree,
    ];

    /// Lowercase identifier used on the command line and in file names.
    pub fn id(self) -> &'static str {
        match self {
            Family::Pgl2 => "pgl2",
            Family::Psl2 => "psl2",
            Family::Pgu3 => "pgu3",
            Family::Psu3 => "psu3",
            Family::Sz => "sz",
            Family::Ree => "ree",
        }
    }

    /// Closed-form group order.
    pub fn expected_order(self, n: u64) -> u64 {
        let g = |a: u64, b: u64| crate::arith::gcd(a as u128, b as u128) as u64;
        match self {
            Family::Pgl2 => n * (n - 1) * (n + 1),
            Family::Psl2 => n * (n - 1) * (n + 1) / g(2, n - 1),
            Family::Pgu3 => (n * n * n + 1) * n * n * n * (n * n - 1),
            Family::Psu3 => (n * n * n + 1) * n * n * n * (n * n - 1) / g(3, n + 1),
            Family::Sz => (n * n + 1) * n * n * (n - 1),
            Family::Ree => (n * n * n + 1) * n * n * n * (n - 1),
        }
    }

    /// Closed-form order of the stabiliser of one point of the domain.
    pub fn expected_stabiliser_order(self, n: u64) -> u64 {
        let degree = match self {
            Family::Pgl2 | Family::Psl2 => n + 1,
            Family::Pgu3 | Family::Psu3 | Family::Ree => n * n * n + 1,
            Family::Sz => n * n + 1,
        };
        self.expected_order(n) / degree
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Pgl2 => "PGL(2,n)",
            Family::Psl2 => "PSL(2,n)",
            Family::Pgu3 => "PGU(3,n)",
            Family::Psu3 => "PSU(3,n)",
            Family::Sz => "Sz(n)",
            Family::Ree => "Ree(n)",
        })
    }
}

#[derive(Debug, Error)]
#[error("unknown group family `{0}` (expected one of pgl2, psl2, pgu3, psu3, sz, ree)")]
pub struct UnknownFamily(pub String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

/// A projectivity: a fractional linear map of the projective line or a
/// projective matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Frac(FracLinMap),
    Matrix(ProjMatrix),
}

impl GroupElement {
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match self {
            GroupElement::Frac(m) => m.apply(p),
            GroupElement::Matrix(m) => m.apply(p),
        }
    }

    /// Entry encodings: `[[a, b], [c, d]]` for a map, the rows for a matrix.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        match self {
            GroupElement::Frac(m) => {
                let [a, b, c, d] = m.coefficients();
                vec![vec![a.value(), b.value()], vec![c.value(), d.value()]]
            }
            GroupElement::Matrix(m) => m.rows(),
        }
    }
}

/// The permutation of `omega` induced by `g`.
pub fn to_permutation(g: &GroupElement, omega: &Omega) -> Result<Permutation, GroupError> {
    to_permutation_labeled(g, omega, "element")
}

fn to_permutation_labeled(
    g: &GroupElement,
    omega: &Omega,
    label: &str,
) -> Result<Permutation, GroupError> {
    let mut images = Vec::with_capacity(omega.len());
    for p in omega.points() {
        let q = g.apply(p);
        match omega.lookup(&q) {
            Some(i) => images.push(i as u32),
            None => {
                return Err(GroupError::ImageOffOmega {
                    label: label.to_string(),
                    point: p.clone(),
                    image: q,
                })
            }
        }
    }
    Ok(Permutation::from_images(images)?)
}

/// A constructed and validated group: generators, their permutations of the
/// domain, and the stabilizer chain.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    family: Family,
    n: u64,
    field: Arc<FieldSpec>,
    omega: Omega,
    generators: Vec<GroupElement>,
    labels: Vec<String>,
    permutations: Vec<Permutation>,
    group: PermGroup,
    notes: Vec<String>,
}

impl GroupSpec {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The field the matrix entries live in (GF(n^2) for the unitary groups).
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.permutations
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Construction remarks, such as rejected formula readings.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }
}
