use std::sync::Arc;

use super::{GeometryError, Omega, OmegaKind, ProjPoint};
use crate::ffield::{FieldElement, FieldSpec, TwistSpec};

/// The quadric `X3^2 + X0 X6 + X1 X5 + X2 X4 = 0` of PG(6, q) and its
/// symmetric bilinear form.
#[derive(Debug, Clone)]
pub struct QuadricForm {
    field: Arc<FieldSpec>,
}

impl QuadricForm {
    pub fn new(field: Arc<FieldSpec>) -> Self {
        QuadricForm { field }
    }

    pub fn evaluate(&self, x: &[FieldElement]) -> FieldElement {
        let f = &*self.field;
        let mut acc = f.mul(x[3], x[3]);
        for (i, j) in [(0, 6), (1, 5), (2, 4)] {
            acc = f.add(acc, f.mul(x[i], x[j]));
        }
        acc
    }

    /// `Q(x + y) - Q(x) - Q(y)`. Two points are conjugate when this vanishes.
    pub fn polar(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let f = &*self.field;
        let mut acc = f.add(f.mul(x[3], y[3]), f.mul(x[3], y[3]));
        for (i, j) in [(0, 6), (1, 5), (2, 4)] {
            acc = f.add(acc, f.mul(x[i], y[j]));
            acc = f.add(acc, f.mul(x[j], y[i]));
        }
        acc
    }
}

/// The polynomial entries of the Ree ovoid points and of the Sylow
/// 3-subgroup matrices, for a fixed field and twist exponent `φ = 3 n0`.
#[derive(Debug, Clone)]
pub struct ReeForms {
    field: Arc<FieldSpec>,
    phi: u64,
}

impl ReeForms {
    pub fn new(field: Arc<FieldSpec>) -> Result<Self, GeometryError> {
        let twist = TwistSpec::ree(field.order())?;
        Ok(ReeForms {
            phi: twist.exponent(),
            field,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    fn sum(&self, terms: &[FieldElement]) -> FieldElement {
        terms
            .iter()
            .fold(self.field.zero(), |acc, &t| self.field.add(acc, t))
    }

    /// `(v1, v2, v3)`:
    /// `v1 = a^2 b - a c + b^φ - a^(φ+3)`,
    /// `v2 = a^φ b^φ - c^φ + a b^2 + b c - a^(2φ+3)`,
    /// `v3 = a c^φ - a^(φ+1) b^φ + a^(φ+3) b + a^2 b^2 - b^(φ+1) - c^2 + a^(2φ+4)`.
    pub fn v(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> [FieldElement; 3] {
        let f = &*self.field;
        let phi = self.phi;
        let (p, m, n) = (|x, k| f.pow(x, k), |x, y| f.mul(x, y), |x| f.neg(x));
        let v1 = self.sum(&[m(p(a, 2), b), n(m(a, c)), p(b, phi), n(p(a, phi + 3))]);
        let v2 = self.sum(&[
            m(p(a, phi), p(b, phi)),
            n(p(c, phi)),
            m(a, p(b, 2)),
            m(b, c),
            n(p(a, 2 * phi + 3)),
        ]);
        let v3 = self.sum(&[
            m(a, p(c, phi)),
            n(m(p(a, phi + 1), p(b, phi))),
            m(p(a, phi + 3), b),
            m(p(a, 2), p(b, 2)),
            n(p(b, phi + 1)),
            n(p(c, 2)),
            p(a, 2 * phi + 4),
        ]);
        [v1, v2, v3]
    }

    /// `(w1, w2, w3, w4)`:
    /// `w1 = -a^(φ+2) + a b - c`,
    /// `w2 = a^(φ+1) b + a^φ c - b^2`,
    /// `w3 = c^φ + (ab)^φ - a^(φ+2) b - a b^2 + b c - a^(φ+1) c - a^(2φ+3)`,
    /// `w4 = a^(φ+3) - a^2 b - b^φ - a c`.
    pub fn w(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> [FieldElement; 4] {
        let f = &*self.field;
        let phi = self.phi;
        let (p, m, n) = (|x, k| f.pow(x, k), |x, y| f.mul(x, y), |x| f.neg(x));
        let w1 = self.sum(&[n(p(a, phi + 2)), m(a, b), n(c)]);
        let w2 = self.sum(&[m(p(a, phi + 1), b), m(p(a, phi), c), n(p(b, 2))]);
        let w3 = self.sum(&[
            p(c, phi),
            p(m(a, b), phi),
            n(m(p(a, phi + 2), b)),
            n(m(a, p(b, 2))),
            m(b, c),
            n(m(p(a, phi + 1), c)),
            n(p(a, 2 * phi + 3)),
        ]);
        let w4 = self.sum(&[p(a, phi + 3), n(m(p(a, 2), b)), n(p(b, phi)), n(m(a, c))]);
        [w1, w2, w3, w4]
    }

    /// The affine ovoid point `(1, a, b, c, v1, v2, v3)`.
    pub fn point(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> ProjPoint {
        let [v1, v2, v3] = self.v(a, b, c);
        ProjPoint::from_normalized(vec![self.field.one(), a, b, c, v1, v2, v3])
    }
}

/// The Ree–Tits ovoid of PG(6, n), `n = 3 n0^2`: `Z∞ = (0,…,0,1)` and the
/// points `(1, a, b, c, v1, v2, v3)`. Checks that every point lies on the
/// quadric.
pub fn ree_ovoid(field: Arc<FieldSpec>) -> Result<Omega, GeometryError> {
    let forms = ReeForms::new(field.clone())?;
    let f = &*field;
    let mut affine = Vec::with_capacity(f.order().pow(3) as usize);
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                affine.push(forms.point(a, b, c));
            }
        }
    }
    let mut z = vec![f.zero(); 7];
    z[6] = f.one();
    let omega = Omega::build(
        OmegaKind::ReeOvoid,
        field.clone(),
        affine,
        ProjPoint::from_normalized(z),
    )?;
    let quadric = QuadricForm::new(field);
    for p in omega.points() {
        if !quadric.evaluate(p.coords()).is_zero() {
            return Err(GeometryError::OffSurface(p.clone()));
        }
    }
    Ok(omega)
}

/// Exhaustive pair scan: `(pairs checked, pairs whose polar form vanishes)`.
/// An ovoid in the polar-space sense has no conjugate pairs.
pub fn polar_conjugate_pairs(omega: &Omega) -> (u64, u64) {
    let qf = QuadricForm::new(omega.field().clone());
    let pts = omega.points();
    let (mut pairs, mut conjugate) = (0u64, 0u64);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            pairs += 1;
            conjugate += qf.polar(pts[i].coords(), pts[j].coords()).is_zero() as u64;
        }
    }
    (pairs, conjugate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::of_order(q).unwrap())
    }

    #[test]
    fn ree3_points_pairwise_nonconjugate() {
        let f = field(3);
        let om = ree_ovoid(f.clone()).unwrap();
        assert_eq!(om.len(), 28);
        assert_eq!(polar_conjugate_pairs(&om), (378, 0));
    }

    #[test]
    fn polar_is_the_polarization_of_the_quadric() {
        let f = field(27);
        let qf = QuadricForm::new(f.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let x: Vec<_> = (0..7).map(|_| f.element(rng.random_range(0..27)).unwrap()).collect();
            let y: Vec<_> = (0..7).map(|_| f.element(rng.random_range(0..27)).unwrap()).collect();
            let s: Vec<_> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
            let expect = f.sub(f.sub(qf.evaluate(&s), qf.evaluate(&x)), qf.evaluate(&y));
            assert_eq!(qf.polar(&x, &y), expect);
        }
    }

    #[test]
    fn ree27_on_quadric_and_sampled_pairs_nonconjugate() {
        let f = field(27);
        let om = ree_ovoid(f.clone()).unwrap();
        assert_eq!(om.len(), 19684);
        let qf = QuadricForm::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let mut checked = 0;
        while checked < 100_000 {
            let i = rng.random_range(0..om.len());
            let j = rng.random_range(0..om.len());
            if i == j {
                continue;
            }
            assert!(!qf.polar(om.point(i).coords(), om.point(j).coords()).is_zero());
            checked += 1;
        }
    }

    #[test]
    fn non_ree_sizes_rejected() {
        assert!(ree_ovoid(field(9)).is_err());
    }
}
