use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::GroupError;
use crate::ffield::{FieldElement, FieldSpec};
use crate::projgeom::ProjPoint;

/// The map `x -> (ax + b) / (cx + d)` with `ad - bc != 0`, scaled so that the
/// first nonzero of `(a, b, c, d)` is 1.
#[derive(Clone)]
pub struct FracLinMap {
    field: Arc<FieldSpec>,
    abcd: [FieldElement; 4],
}

impl FracLinMap {
    pub fn new(
        field: Arc<FieldSpec>,
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    ) -> Result<Self, GroupError> {
        let f = &*field;
        if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
            return Err(GroupError::Singular);
        }
        let lead = [a, b, c, d].into_iter().find(|x| !x.is_zero()).unwrap();
        let s = f.inv(lead)?;
        let abcd = [f.mul(a, s), f.mul(b, s), f.mul(c, s), f.mul(d, s)];
        Ok(FracLinMap { field, abcd })
    }

    pub fn identity(field: Arc<FieldSpec>) -> Self {
        let (o, z) = (field.one(), field.zero());
        FracLinMap {
            field,
            abcd: [o, z, z, o],
        }
    }

    /// `x -> x + t`
    pub fn translation(field: Arc<FieldSpec>, t: FieldElement) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::new(field, o, t, z, o).expect("nonsingular")
    }

    /// `x -> l x`, `l != 0`
    pub fn scaling(field: Arc<FieldSpec>, l: FieldElement) -> Result<Self, GroupError> {
        let (o, z) = (field.one(), field.zero());
        Self::new(field, l, z, z, o)
    }

    /// `x -> s / x`, `s != 0`
    pub fn inversion(field: Arc<FieldSpec>, s: FieldElement) -> Result<Self, GroupError> {
        let (o, z) = (field.one(), field.zero());
        Self::new(field, z, s, o, z)
    }

    /// Every element of PGL(2, q), each once, in canonical form.
    pub fn all(field: &Arc<FieldSpec>) -> Vec<FracLinMap> {
        let f = &**field;
        let mut out = Vec::new();
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    if let Ok(m) = Self::new(field.clone(), f.one(), b, c, d) {
                        out.push(m);
                    }
                }
            }
        }
        for c in f.nonzero_elements() {
            for d in f.elements() {
                out.push(Self::new(field.clone(), f.zero(), f.one(), c, d).unwrap());
            }
        }
        out
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coefficients(&self) -> [FieldElement; 4] {
        self.abcd
    }

    pub fn det(&self) -> FieldElement {
        let f = &*self.field;
        let [a, b, c, d] = self.abcd;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    pub fn trace(&self) -> FieldElement {
        self.field.add(self.abcd[0], self.abcd[3])
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = self.abcd;
        b.is_zero() && c.is_zero() && a == d
    }

    /// `self` followed by `other`, i.e. `x -> other(self(x))`.
    pub fn then(&self, other: &FracLinMap) -> FracLinMap {
        let f = &*self.field;
        let [a1, b1, c1, d1] = self.abcd;
        let [a2, b2, c2, d2] = other.abcd;
        // matrix product [[a2,b2],[c2,d2]] * [[a1,b1],[c1,d1]]
        let a = f.add(f.mul(a2, a1), f.mul(b2, c1));
        let b = f.add(f.mul(a2, b1), f.mul(b2, d1));
        let c = f.add(f.mul(c2, a1), f.mul(d2, c1));
        let d = f.add(f.mul(c2, b1), f.mul(d2, d1));
        Self::new(self.field.clone(), a, b, c, d).expect("product of invertible maps")
    }

    /// Image of a point `(1, x)` or `∞ = (0, 1)` of PG(1, q).
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let f = &*self.field;
        let [a, b, c, d] = self.abcd;
        let x0 = p.coords()[0];
        let x1 = p.coords()[1];
        // x = x1 / x0 goes to (a x1 + b x0) / (c x1 + d x0)
        let num = f.add(f.mul(a, x1), f.mul(b, x0));
        let den = f.add(f.mul(c, x1), f.mul(d, x0));
        ProjPoint::new(f, vec![den, num]).expect("invertible map")
    }

    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.then(self);
            k += 1;
        }
        k
    }

    fn require_odd(&self) -> Result<(), GroupError> {
        if self.field.characteristic() == 2 {
            return Err(GroupError::EvenCharacteristic);
        }
        Ok(())
    }

    /// Whether the map lies in PSL(2, q): `ad - bc` is a square. Scaling by
    /// `s` multiplies the determinant by `s^2`, so the answer does not depend
    /// on the representative.
    pub fn psl_membership(&self) -> Result<bool, GroupError> {
        self.require_odd()?;
        Ok(self.field.is_square(self.det())?)
    }

    /// Trace criterion for involutions: a nonidentity map has order 2 iff
    /// `a + d = 0`.
    pub fn is_involution(&self) -> Result<bool, GroupError> {
        self.require_odd()?;
        if self.is_identity() {
            return Err(GroupError::IdentityInput);
        }
        Ok(self.trace().is_zero())
    }
}

impl PartialEq for FracLinMap {
    fn eq(&self, other: &Self) -> bool {
        self.abcd == other.abcd
    }
}

impl Eq for FracLinMap {}

impl Hash for FracLinMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.abcd.hash(state);
    }
}

impl fmt::Debug for FracLinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.abcd;
        write!(f, "FracLinMap({a},{b},{c},{d})")
    }
}

impl fmt::Display for FracLinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.abcd;
        write!(f, "x -> ({a}x + {b}) / ({c}x + {d})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::of_order(q).unwrap())
    }

    #[test]
    fn pgl_has_q_cubed_minus_q_elements() {
        for q in [4u64, 5, 7] {
            let all = FracLinMap::all(&field(q));
            assert_eq!(all.len() as u64, q * q * q - q);
        }
    }

    #[test]
    fn trace_test_agrees_with_order_two_exhaustively() {
        let f = field(7);
        let all = FracLinMap::all(&f);
        assert_eq!(all.len(), 336);
        let mut involutions = 0;
        for m in all.iter().filter(|m| !m.is_identity()) {
            let order_two = m.then(m).is_identity();
            assert_eq!(m.is_involution().unwrap(), order_two, "{m}");
            involutions += order_two as usize;
        }
        assert_eq!(involutions, 49);
    }

    #[test]
    fn membership_examples() {
        let f = field(5);
        let lambda = f.primitive();
        assert!(FracLinMap::translation(f.clone(), f.one()).psl_membership().unwrap());
        assert!(!FracLinMap::scaling(f.clone(), lambda).unwrap().psl_membership().unwrap());
        let l2 = f.mul(lambda, lambda);
        assert!(FracLinMap::scaling(f.clone(), l2).unwrap().psl_membership().unwrap());
        let f4 = field(4);
        assert!(matches!(
            FracLinMap::translation(f4.clone(), f4.one()).psl_membership(),
            Err(GroupError::EvenCharacteristic)
        ));
    }

    #[test]
    fn inversion_is_an_involution() {
        let f = field(5);
        let inv = FracLinMap::inversion(f.clone(), f.one()).unwrap();
        assert!(inv.is_involution().unwrap());
        assert!(inv.then(&inv).is_identity());
        let t = FracLinMap::translation(f.clone(), f.one());
        assert!(!t.is_involution().unwrap());
        assert_eq!(t.order(), 5);
        assert!(FracLinMap::identity(f).is_involution().is_err());
    }

    #[test]
    fn apply_matches_formula() {
        let f = field(7);
        let m = FracLinMap::new(f.clone(), f.from_int(2), f.from_int(3), f.from_int(1), f.from_int(6))
            .unwrap();
        for x in f.elements() {
            let p = ProjPoint::new(&f, vec![f.one(), x]).unwrap();
            let den = f.add(x, f.from_int(6));
            let img = m.apply(&p);
            if den.is_zero() {
                assert_eq!(img.values(), vec![0, 1]);
            } else {
                let num = f.add(f.mul(f.from_int(2), x), f.from_int(3));
                assert_eq!(img.coords()[1], f.div(num, den).unwrap());
            }
        }
        let inf = ProjPoint::new(&f, vec![f.zero(), f.one()]).unwrap();
        // ∞ -> a/c = 2
        assert_eq!(m.apply(&inf).coords()[1], f.from_int(2));
    }
}
