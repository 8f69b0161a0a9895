use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{line_through, rank, GeometryError, Omega, OmegaKind, ProjPoint, ProjectiveSpace};
use crate::ffield::{FieldElement, FieldSpec, TwistSpec};

/// Candidate readings of the fourth coordinate `f(u, v)` of the affine ovoid
/// points `(1, u, v, f(u, v))`, tried in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuzukiReading {
    /// `uv + u^(2φ+2) v^φ`
    ProductTwoPhiPlusTwo,
    /// `uv + u^(φ+2) v^φ`
    ProductPhiPlusTwo,
    /// `uv + u^(φ+2) + v^φ`, the Tits form.
    Additive,
}

impl SuzukiReading {
    pub const ALL: [SuzukiReading; 3] = [
        SuzukiReading::ProductTwoPhiPlusTwo,
        SuzukiReading::ProductPhiPlusTwo,
        SuzukiReading::Additive,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            SuzukiReading::ProductTwoPhiPlusTwo => "uv + u^(2φ+2) v^φ",
            SuzukiReading::ProductPhiPlusTwo => "uv + u^(φ+2) v^φ",
            SuzukiReading::Additive => "uv + u^(φ+2) + v^φ",
        }
    }

    pub fn eval(self, f: &FieldSpec, phi: u64, u: FieldElement, v: FieldElement) -> FieldElement {
        let uv = f.mul(u, v);
        let rest = match self {
            SuzukiReading::ProductTwoPhiPlusTwo => f.mul(f.pow(u, 2 * phi + 2), f.pow(v, phi)),
            SuzukiReading::ProductPhiPlusTwo => f.mul(f.pow(u, phi + 2), f.pow(v, phi)),
            SuzukiReading::Additive => f.add(f.pow(u, phi + 2), f.pow(v, phi)),
        };
        f.add(uv, rest)
    }
}

/// Outcome of testing the three ovoid axioms in PG(3, q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvoidCheck {
    pub size: usize,
    pub expected_size: usize,
    /// Largest number of points found on one line (stops early at the first
    /// line with more than two when run as a quick rejection).
    pub max_collinear: usize,
    /// Number of points whose tangent lines number exactly q + 1.
    pub points_with_q_plus_one_tangents: usize,
    /// Number of points whose tangent lines all lie in one plane.
    pub points_with_coplanar_tangents: usize,
}

impl OvoidCheck {
    pub fn passes(&self) -> bool {
        self.size == self.expected_size
            && self.max_collinear <= 2
            && self.points_with_q_plus_one_tangents == self.size
            && self.points_with_coplanar_tangents == self.size
    }
}

/// The accepted ovoid plus the readings that were rejected on the way.
#[derive(Debug, Clone)]
pub struct SuzukiOvoid {
    pub omega: Omega,
    pub reading: SuzukiReading,
    pub check: OvoidCheck,
    pub rejected: Vec<(SuzukiReading, OvoidCheck)>,
}

fn build(field: &Arc<FieldSpec>, phi: u64, reading: SuzukiReading) -> Result<Omega, GeometryError> {
    let f = &**field;
    let mut affine = Vec::with_capacity((f.order() * f.order()) as usize);
    for u in f.elements() {
        for v in f.elements() {
            let z = reading.eval(f, phi, u, v);
            affine.push(ProjPoint::from_normalized(vec![f.one(), u, v, z]));
        }
    }
    let z_inf = ProjPoint::from_normalized(vec![f.zero(), f.zero(), f.zero(), f.one()]);
    Omega::build(OmegaKind::SuzukiOvoid, field.clone(), affine, z_inf)
}

/// Builds the Suzuki–Tits ovoid of PG(3, n), `n = 2 n0^2`, trying each
/// [`SuzukiReading`] in order and accepting the first that satisfies the
/// ovoid axioms. Never returns a point set that fails them.
pub fn suzuki_ovoid(field: Arc<FieldSpec>) -> Result<SuzukiOvoid, GeometryError> {
    let twist = TwistSpec::suzuki(field.order())?;
    let phi = twist.exponent();
    let mut rejected = Vec::new();
    for reading in SuzukiReading::ALL {
        let omega = match build(&field, phi, reading) {
            Ok(om) => om,
            Err(GeometryError::DuplicatePoint(_)) => continue,
            Err(e) => return Err(e),
        };
        let quick = check_suzuki_ovoid(&omega, true);
        if !quick.passes() {
            rejected.push((reading, quick));
            continue;
        }
        let check = check_suzuki_ovoid(&omega, false);
        return Ok(SuzukiOvoid {
            omega,
            reading,
            check,
            rejected,
        });
    }
    let summary = rejected
        .iter()
        .map(|(r, c)| format!("{} (max collinear {})", r.formula(), c.max_collinear))
        .collect::<Vec<_>>()
        .join("; ");
    Err(GeometryError::NotAnOvoid(summary))
}

/// Tests size, "no three collinear", and "the tangent lines at each point are
/// q + 1 in number and coplanar". With `quick` set, stops at the first line
/// carrying three or more points.
pub fn check_suzuki_ovoid(omega: &Omega, quick: bool) -> OvoidCheck {
    let field = omega.field().clone();
    let f = &*field;
    let q = f.order() as usize;
    let pts = omega.points();
    let mut check = OvoidCheck {
        size: pts.len(),
        expected_size: q * q + 1,
        max_collinear: 0,
        points_with_q_plus_one_tangents: 0,
        points_with_coplanar_tangents: 0,
    };

    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let line = line_through(f, &pts[i], &pts[j]).expect("distinct points");
            let k = line.iter().filter(|p| omega.contains(p)).count();
            check.max_collinear = check.max_collinear.max(k);
            if quick && k > 2 {
                return check;
            }
        }
    }
    if check.max_collinear > 2 {
        return check;
    }

    let space = ProjectiveSpace::new(field.clone(), 3);
    let mut on_secant = vec![false; space.num_points()];
    for (i, p) in pts.iter().enumerate() {
        on_secant.iter_mut().for_each(|b| *b = false);
        for (j, r) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            for x in line_through(f, p, r).expect("distinct points") {
                on_secant[space.rank_of(&x)] = true;
            }
        }
        let me = space.rank_of(p);
        let tangent_points: Vec<ProjPoint> = (0..space.num_points())
            .filter(|&k| k != me && !on_secant[k])
            .map(|k| space.unrank(k))
            .collect();
        // each tangent line contributes q points besides P
        if tangent_points.len() == (q + 1) * q {
            check.points_with_q_plus_one_tangents += 1;
        }
        let mut rows: Vec<&[FieldElement]> = vec![p.coords()];
        rows.extend(tangent_points.iter().map(|t| t.coords()));
        if rank(f, &rows) == 3 {
            check.points_with_coplanar_tangents += 1;
        }
    }
    check
}
