//! Projective points and lines over a finite field, and the point sets the
//! groups act on: the projective line, the Hermitian unital, the Suzuki–Tits
//! ovoid and the Ree–Tits ovoid.

mod ree;
mod space;
mod suzuki;
mod unital;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{FieldElement, FieldError, FieldSpec};

pub use ree::{polar_conjugate_pairs, ree_ovoid, QuadricForm, ReeForms};
pub use space::{rank, ProjectiveSpace};
pub use suzuki::{
    check_suzuki_ovoid, suzuki_ovoid, OvoidCheck, SuzukiOvoid, SuzukiReading,
};
pub use unital::{hermitian_curve_value, hermitian_unital};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("points live in different spaces")]
    DimensionMismatch,
    #[error("a line needs two distinct points")]
    SamePoint,
    #[error("duplicate point {0} generated")]
    DuplicatePoint(ProjPoint),
    #[error("point {0} violates the defining equation")]
    OffSurface(ProjPoint),
    #[error("no candidate reading of the Suzuki–Tits ovoid formula passes the ovoid axioms: {0}")]
    NotAnOvoid(String),
    #[error("secant histogram needs a plane or 3-space, got PG({0})")]
    UnsupportedDimension(usize),
}

/// A point of PG(d, q) in normalized homogeneous coordinates: the first
/// nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl ProjPoint {
    pub fn new(field: &FieldSpec, mut coords: Vec<FieldElement>) -> Result<Self, GeometryError> {
        let lead = coords
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroVector)?;
        if lead != field.one() {
            let inv = field.inv(lead)?;
            for c in coords.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        Ok(ProjPoint { coords })
    }

    /// Coordinates already known to be normalized.
    pub(crate) fn from_normalized(coords: Vec<FieldElement>) -> Self {
        debug_assert!(coords.iter().find(|c| !c.is_zero()).map(|c| c.value()) == Some(1));
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Projective dimension `d` of the ambient PG(d, q).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn values(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.value()).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaKind {
    Pg1,
    Unital,
    SuzukiOvoid,
    ReeOvoid,
}

/// An indexed point set: the domain of a permutation representation.
///
/// Affine points are sorted lexicographically by coordinates, and the
/// distinguished point (∞, X∞ or Z∞) comes last.
#[derive(Debug, Clone)]
pub struct Omega {
    kind: OmegaKind,
    field: Arc<FieldSpec>,
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, usize>,
}

impl Omega {
    /// Sorts `affine`, appends `distinguished`, and rejects duplicates.
    pub(crate) fn build(
        kind: OmegaKind,
        field: Arc<FieldSpec>,
        mut affine: Vec<ProjPoint>,
        distinguished: ProjPoint,
    ) -> Result<Self, GeometryError> {
        affine.sort();
        affine.push(distinguished);
        let mut index = HashMap::with_capacity(affine.len());
        for (i, p) in affine.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(GeometryError::DuplicatePoint(p.clone()));
            }
        }
        Ok(Omega {
            kind,
            field,
            points: affine,
            index,
        })
    }

    pub fn kind(&self) -> OmegaKind {
        self.kind
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i]
    }

    pub fn lookup(&self, p: &ProjPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.index.contains_key(p)
    }

    /// Index of the distinguished point.
    pub fn infinity(&self) -> usize {
        self.points.len() - 1
    }

    /// Projective dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.points[0].dim()
    }
}

/// The projective line PG(1, n): `(1, x)` for `x` in GF(n), then `∞ = (0, 1)`.
pub fn pg1_domain(field: Arc<FieldSpec>) -> Omega {
    let affine = field
        .elements()
        .map(|x| ProjPoint::from_normalized(vec![field.one(), x]))
        .collect();
    let inf = ProjPoint::from_normalized(vec![field.zero(), field.one()]);
    Omega::build(OmegaKind::Pg1, field, affine, inf).expect("PG(1,n) points are distinct")
}

/// All `q + 1` points on the line spanned by `p` and `q`.
pub fn line_through(
    field: &FieldSpec,
    p: &ProjPoint,
    q: &ProjPoint,
) -> Result<Vec<ProjPoint>, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch);
    }
    if p == q {
        return Err(GeometryError::SamePoint);
    }
    let mut out = Vec::with_capacity(field.order() as usize + 1);
    out.push(q.clone());
    for t in field.elements() {
        let v = p
            .coords
            .iter()
            .zip(&q.coords)
            .map(|(&a, &b)| field.add(a, field.mul(t, b)))
            .collect();
        out.push(ProjPoint::new(field, v)?);
    }
    Ok(out)
}

/// Number of lines of the ambient plane or 3-space meeting `omega` in exactly
/// `k` points, keyed by `k`. For PG(1, n) the single line is the whole domain.
pub fn secant_histogram(omega: &Omega) -> Result<BTreeMap<usize, u64>, GeometryError> {
    let d = omega.ambient_dim();
    let mut hist = BTreeMap::new();
    if d == 1 {
        hist.insert(omega.len(), 1);
        return Ok(hist);
    }
    if d > 3 {
        return Err(GeometryError::UnsupportedDimension(d));
    }
    let space = ProjectiveSpace::new(omega.field().clone(), d);
    space.for_each_line(|line| {
        let k = line.iter().filter(|p| omega.contains(p)).count();
        *hist.entry(k).or_insert(0) += 1;
    });
    Ok(hist)
}

/// Coordinate-wise `k`-th power, renormalized. With `k` a power of the
/// characteristic this is a Frobenius collineation.
pub fn frobenius_point(field: &FieldSpec, p: &ProjPoint, k: u64) -> ProjPoint {
    let v = p.coords.iter().map(|&c| field.pow(c, k)).collect();
    ProjPoint::new(field, v).expect("power map of a nonzero vector is nonzero")
}

/// Whether three points lie on a common line.
pub fn collinear(field: &FieldSpec, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    rank(field, &[a.coords(), b.coords(), c.coords()]) <= 2
}
