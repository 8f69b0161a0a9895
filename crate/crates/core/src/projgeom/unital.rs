use std::sync::Arc;

use super::{GeometryError, Omega, OmegaKind, ProjPoint};
use crate::ffield::{trace_zero_set, unital_constant, FieldElement, FieldSpec};

/// `c X0^n X2 + c^n X0 X2^n + X1^(n+1)` evaluated at `x`.
pub fn hermitian_curve_value(
    ext: &FieldSpec,
    n: u64,
    c: FieldElement,
    x: &[FieldElement],
) -> FieldElement {
    let t1 = ext.mul(c, ext.mul(ext.pow(x[0], n), x[2]));
    let t2 = ext.mul(ext.pow(c, n), ext.mul(x[0], ext.pow(x[2], n)));
    let t3 = ext.pow(x[1], n + 1);
    ext.add(ext.add(t1, t2), t3)
}

/// The classical unital of PG(2, n^2):
/// `X∞ = (0,0,1)` together with `(1, u, u^(n+1) + c^-1 m)` for `u` in GF(n^2)
/// and `m^n + m = 0`. `ext` must be GF(n^2).
pub fn hermitian_unital(ext: Arc<FieldSpec>, n: u64) -> Result<Omega, GeometryError> {
    let f = &*ext;
    let m_set = trace_zero_set(f, n)?;
    let c = unital_constant(f, n)?;
    let c_inv = f.inv(c)?;
    let mut affine = Vec::with_capacity((n * n * n) as usize);
    for u in f.elements() {
        let base = f.pow(u, n + 1);
        for &m in &m_set {
            let w = f.add(base, f.mul(c_inv, m));
            affine.push(ProjPoint::from_normalized(vec![f.one(), u, w]));
        }
    }
    let x_inf = ProjPoint::from_normalized(vec![f.zero(), f.zero(), f.one()]);
    let omega = Omega::build(OmegaKind::Unital, ext.clone(), affine, x_inf)?;
    for p in omega.points() {
        if !hermitian_curve_value(f, n, c, p.coords()).is_zero() {
            return Err(GeometryError::OffSurface(p.clone()));
        }
    }
    Ok(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::{secant_histogram, ProjectiveSpace};

    fn unital(n: u64) -> (Arc<FieldSpec>, Omega) {
        let ext = Arc::new(FieldSpec::of_order(n * n).unwrap());
        let om = hermitian_unital(ext.clone(), n).unwrap();
        (ext, om)
    }

    #[test]
    fn sizes() {
        assert_eq!(unital(3).1.len(), 28);
        assert_eq!(unital(4).1.len(), 65);
    }

    #[test]
    fn unital_is_exactly_the_rational_curve_points() {
        // substitute every point of PG(2,9) into the curve equation
        let (ext, om) = unital(3);
        let c = unital_constant(&ext, 3).unwrap();
        let space = ProjectiveSpace::new(ext.clone(), 2);
        let on_curve: Vec<_> = (0..space.num_points())
            .map(|i| space.unrank(i))
            .filter(|p| hermitian_curve_value(&ext, 3, c, p.coords()).is_zero())
            .collect();
        assert_eq!(on_curve.len(), 28);
        assert!(on_curve.iter().all(|p| om.contains(p)));
    }

    #[test]
    fn every_line_is_a_tangent_or_an_n_plus_one_secant() {
        for n in [3u64, 4] {
            let (_, om) = unital(n);
            let h = secant_histogram(&om).unwrap();
            let n3 = n * n * n;
            let secants = (n3 + 1) * n3 / ((n + 1) * n);
            let expected: Vec<(usize, u64)> = vec![(1, n3 + 1), ((n + 1) as usize, secants)];
            assert_eq!(h.into_iter().collect::<Vec<_>>(), expected, "n = {n}");
        }
    }
}
