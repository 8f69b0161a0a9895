use std::sync::Arc;

use super::{
    to_permutation_labeled, Family, FracLinMap, GroupElement, GroupError, GroupSpec, ProjMatrix,
};
use crate::arith::prime_power;
use crate::ffield::{trace_zero_set, unital_constant, FieldElement, FieldSpec, SubfieldEmbedding, TwistSpec};
use crate::permeng::PermGroup;
use crate::projgeom::{hermitian_unital, pg1_domain, ree_ovoid, suzuki_ovoid, Omega, ReeForms};

/// Above this degree the stabilizer chain is built by the randomized method
/// against the closed-form order.
const RANDOMIZED_DEGREE: usize = 5000;
const CHAIN_SEED: u64 = 0x5eed;

fn field_of_order(family: Family, n: u64) -> Result<Arc<FieldSpec>, GroupError> {
    if prime_power(n).is_none() {
        return Err(GroupError::NotPrimePower(n));
    }
    let _ = family;
    Ok(Arc::new(FieldSpec::of_order(n)?))
}

/// Builds the permutation group, then checks order and 2-transitivity.
#[allow(clippy::too_many_arguments)]
fn finish(
    family: Family,
    n: u64,
    field: Arc<FieldSpec>,
    omega: Omega,
    generators: Vec<GroupElement>,
    labels: Vec<String>,
    notes: Vec<String>,
) -> Result<GroupSpec, GroupError> {
    let permutations = generators
        .iter()
        .zip(&labels)
        .map(|(g, l)| to_permutation_labeled(g, &omega, l))
        .collect::<Result<Vec<_>, _>>()?;
    let expected = family.expected_order(n);
    let group = if omega.len() > RANDOMIZED_DEGREE {
        PermGroup::with_known_order(omega.len(), permutations.clone(), expected, CHAIN_SEED)
            .map_err(|e| match e {
                crate::permeng::PermError::OrderMismatch { computed, .. }
                | crate::permeng::PermError::RandomChainStalled {
                    reached: computed, ..
                } => GroupError::OrderMismatch {
                    family,
                    n,
                    computed,
                    expected,
                },
                other => other.into(),
            })?
    } else {
        PermGroup::new(omega.len(), permutations.clone())?
    };
    if group.order() != expected {
        return Err(GroupError::OrderMismatch {
            family,
            n,
            computed: group.order(),
            expected,
        });
    }
    if !group.is_two_transitive() {
        return Err(GroupError::NotTwoTransitive { family, n });
    }
    Ok(GroupSpec {
        family,
        n,
        field,
        omega,
        generators,
        labels,
        permutations,
        group,
        notes,
    })
}

fn pgl_like(family: Family, n: u64) -> Result<GroupSpec, GroupError> {
    if n < 4 {
        return Err(GroupError::Unsupported {
            family,
            n,
            reason: "n must be at least 4",
        });
    }
    let f = field_of_order(family, n)?;
    let lambda = f.primitive();
    let odd_psl = family == Family::Psl2 && f.characteristic() != 2;
    let (scale, inv_num) = if odd_psl {
        (f.mul(lambda, lambda), f.neg(f.one()))
    } else {
        (lambda, f.one())
    };
    let generators = vec![
        GroupElement::Frac(FracLinMap::translation(f.clone(), f.one())),
        GroupElement::Frac(FracLinMap::scaling(f.clone(), scale)?),
        GroupElement::Frac(FracLinMap::inversion(f.clone(), inv_num)?),
    ];
    let labels = if odd_psl {
        vec!["x+1".to_string(), format!("{scale}x (λ²x)"), "-1/x".to_string()]
    } else {
        vec!["x+1".to_string(), format!("{scale}x (λx)"), "1/x".to_string()]
    };
    let omega = pg1_domain(f.clone());
    finish(family, n, f, omega, generators, labels, Vec::new())
}

/// PGL(2, n) on the projective line, generated by `x+1`, `λx`, `1/x`.
pub fn pgl2_group(n: u64) -> Result<GroupSpec, GroupError> {
    pgl_like(Family::Pgl2, n)
}

/// PSL(2, n), generated by `x+1`, `λ²x`, `-1/x` (equal to PGL(2, n) for even n).
pub fn psl2_group(n: u64) -> Result<GroupSpec, GroupError> {
    pgl_like(Family::Psl2, n)
}

/// Gram matrix of `c X0^n X2 + c^n X0 X2^n + X1^(n+1)`.
pub fn hermitian_gram(ext: &Arc<FieldSpec>, n: u64, c: FieldElement) -> Vec<FieldElement> {
    let (z, o) = (ext.zero(), ext.one());
    vec![z, z, c, z, o, z, ext.pow(c, n), z, z]
}

/// `conj(A)^T H A = λ H` for some `λ`, where `conj` raises entries to the n-th power.
pub fn is_unitary(a: &ProjMatrix, gram: &[FieldElement], n: u64) -> bool {
    let f = &**a.field();
    let k = a.dim();
    let conj_t = a.frobenius(n);
    // (conj(A)^T H A)_{ij} = sum_{l,m} conj(A)_{l i} H_{l m} A_{m j}
    let mut lhs = vec![f.zero(); k * k];
    for i in 0..k {
        for j in 0..k {
            let mut acc = f.zero();
            for l in 0..k {
                for m in 0..k {
                    let h = gram[l * k + m];
                    if h.is_zero() {
                        continue;
                    }
                    acc = f.add(acc, f.mul(f.mul(conj_t.entry(l, i), h), a.entry(m, j)));
                }
            }
            lhs[i * k + j] = acc;
        }
    }
    let Some(pos) = gram.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let Ok(lambda) = f.div(lhs[pos], gram[pos]) else {
        return false;
    };
    !lambda.is_zero() && lhs.iter().zip(gram).all(|(&x, &h)| x == f.mul(lambda, h))
}

/// Stabiliser element of `X∞` moving `(1, 0, 0)` to `(1, a, a^(n+1) + c^-1 m)`:
/// rows `[1,0,0]`, `[a,1,0]`, `[a^(n+1) + c^-1 m, -a^n / c, 1]`.
pub fn unital_translation(
    ext: &Arc<FieldSpec>,
    n: u64,
    c: FieldElement,
    a: FieldElement,
    m: FieldElement,
) -> ProjMatrix {
    let f = &**ext;
    let c_inv = f.inv(c).expect("c is nonzero");
    let (z, o) = (f.zero(), f.one());
    let w = f.add(f.pow(a, n + 1), f.mul(c_inv, m));
    let mid = f.neg(f.mul(f.pow(a, n), c_inv));
    ProjMatrix::from_rows(ext.clone(), vec![vec![o, z, z], vec![a, o, z], vec![w, mid, o]])
        .expect("unitriangular")
}

/// An additive basis over the prime field of the set `elems` (closed under addition).
fn prime_field_basis(f: &FieldSpec, elems: &[FieldElement]) -> Vec<FieldElement> {
    let mut span = vec![f.zero()];
    let mut basis = Vec::new();
    for &x in elems {
        if span.contains(&x) {
            continue;
        }
        basis.push(x);
        let mut next = Vec::with_capacity(span.len() * f.characteristic() as usize);
        for &s in &span {
            let mut t = s;
            for _ in 0..f.characteristic() {
                next.push(t);
                t = f.add(t, x);
            }
        }
        span = next;
    }
    basis
}

fn unitary_like(family: Family, n: u64) -> Result<GroupSpec, GroupError> {
    if n < 3 {
        return Err(GroupError::Unsupported {
            family,
            n,
            reason: "n must be at least 3",
        });
    }
    if prime_power(n).is_none() {
        return Err(GroupError::NotPrimePower(n));
    }
    let ext = Arc::new(FieldSpec::of_order(n * n)?);
    let f = &*ext;
    let c = unital_constant(f, n)?;
    let gram = hermitian_gram(&ext, n, c);
    let m_set = trace_zero_set(f, n)?;
    let all: Vec<FieldElement> = f.elements().collect();

    let mut translations = Vec::new();
    let mut labels = Vec::new();
    for a in prime_field_basis(f, &all) {
        translations.push(unital_translation(&ext, n, c, a, f.zero()));
        labels.push(format!("T(a={a},m=0)"));
    }
    for m in prime_field_basis(f, &m_set) {
        translations.push(unital_translation(&ext, n, c, f.zero(), m));
        labels.push(format!("T(a=0,m={m})"));
    }
    let (z, o) = (f.zero(), f.one());
    let swap = ProjMatrix::from_rows(
        ext.clone(),
        vec![
            vec![z, z, f.pow(f.inv(c)?, n - 1)],
            vec![z, o, z],
            vec![o, z, z],
        ],
    )?;
    let mut gens: Vec<ProjMatrix> = translations.clone();
    match family {
        Family::Pgu3 => {
            let k = f.primitive();
            gens.push(ProjMatrix::diagonal(ext.clone(), &[o, k, f.pow(k, n + 1)])?);
            labels.push(format!("diag(1,k,k^(n+1)), k={k}"));
            gens.push(swap);
            labels.push("swap X∞ <-> (1,0,0)".to_string());
        }
        _ => {
            let swap_inv = swap.inverse();
            for (t, l) in translations.iter().zip(labels.clone()) {
                gens.push(swap.mul(t).mul(&swap_inv));
                labels.push(format!("swap·{l}·swap⁻¹"));
            }
        }
    }
    for (g, l) in gens.iter().zip(&labels) {
        if !is_unitary(g, &gram, n) {
            return Err(GroupError::NotUnitary(l.clone()));
        }
        if family == Family::Psu3 {
            let d = g.det();
            let is_cube = f.nonzero_elements().any(|s| f.pow(s, 3) == d);
            if !is_cube {
                return Err(GroupError::DeterminantNotOne(l.clone()));
            }
        }
    }
    let omega = hermitian_unital(ext.clone(), n)?;
    let generators = gens.into_iter().map(GroupElement::Matrix).collect();
    finish(family, n, ext, omega, generators, labels, Vec::new())
}

/// PGU(3, n) on the Hermitian unital of PG(2, n^2).
pub fn pgu3_group(n: u64) -> Result<GroupSpec, GroupError> {
    unitary_like(Family::Pgu3, n)
}

/// PSU(3, n): generated by the determinant-1 translations fixing `X∞` and
/// their conjugates by the swap.
pub fn psu3_group(n: u64) -> Result<GroupSpec, GroupError> {
    unitary_like(Family::Psu3, n)
}

/// Suzuki translation with rows `[1,0,0,0]`, `[a,1,0,0]`, `[b,a^σ,1,0]`,
/// `[ab + a^(σ+2) + b^σ, b + a^(σ+1), a, 1]`.
pub fn sz_translation(f: &Arc<FieldSpec>, sigma: u64, a: FieldElement, b: FieldElement) -> ProjMatrix {
    let (z, o) = (f.zero(), f.one());
    let top = f.add(f.add(f.mul(a, b), f.pow(a, sigma + 2)), f.pow(b, sigma));
    let mid = f.add(b, f.pow(a, sigma + 1));
    ProjMatrix::from_rows(
        f.clone(),
        vec![
            vec![o, z, z, z],
            vec![a, o, z, z],
            vec![b, f.pow(a, sigma), o, z],
            vec![top, mid, a, o],
        ],
    )
    .expect("unitriangular")
}

/// Sz(n) on the Suzuki–Tits ovoid of PG(3, n).
pub fn sz_group(n: u64) -> Result<GroupSpec, GroupError> {
    let family = Family::Sz;
    let twist = TwistSpec::suzuki(n).map_err(|_| GroupError::Unsupported {
        family,
        n,
        reason: "n must be 2^(2s+1) with s >= 1",
    })?;
    let f = Arc::new(FieldSpec::of_order(n)?);
    let sigma = twist.exponent();
    let ovoid = suzuki_ovoid(f.clone())?;
    let mut notes = Vec::new();
    for (reading, check) in &ovoid.rejected {
        notes.push(format!(
            "rejected ovoid reading {}: a line meets it in {} points",
            reading.formula(),
            check.max_collinear
        ));
    }
    notes.push(format!("ovoid reading used: {}", ovoid.reading.formula()));

    let mut gens = Vec::new();
    let mut labels = Vec::new();
    let all: Vec<FieldElement> = f.elements().collect();
    let basis = prime_field_basis(&f, &all);
    for &a in &basis {
        gens.push(sz_translation(&f, sigma, a, f.zero()));
        labels.push(format!("S(a={a},b=0)"));
    }
    for &b in &basis {
        gens.push(sz_translation(&f, sigma, f.zero(), b));
        labels.push(format!("S(a=0,b={b})"));
    }
    let k = f.primitive();
    gens.push(ProjMatrix::diagonal(
        f.clone(),
        &[f.one(), k, f.pow(k, sigma + 1), f.pow(k, sigma + 2)],
    )?);
    labels.push(format!("diag(1,k,k^(σ+1),k^(σ+2)), k={k}"));
    gens.push(ProjMatrix::antidiagonal(f.clone(), 4));
    labels.push("antidiagonal swap Z∞ <-> O".to_string());

    let generators = gens.into_iter().map(GroupElement::Matrix).collect();
    finish(family, n, f, ovoid.omega, generators, labels, notes)
}

/// The Sylow 3-subgroup element `α(a, b, c)`, lower unitriangular with first
/// column `(1, a, b, c, v1, v2, v3)`.
pub fn ree_alpha(forms: &ReeForms, a: FieldElement, b: FieldElement, c: FieldElement) -> ProjMatrix {
    let f = forms.field();
    let phi = forms.phi();
    let (z, o) = (f.zero(), f.one());
    let [v1, v2, v3] = forms.v(a, b, c);
    let [w1, w2, w3, w4] = forms.w(a, b, c);
    let a_phi = f.pow(a, phi);
    let a_phi1 = f.pow(a, phi + 1);
    let rows = vec![
        vec![o, z, z, z, z, z, z],
        vec![a, o, z, z, z, z, z],
        vec![b, a_phi, o, z, z, z, z],
        vec![c, f.sub(b, a_phi1), f.neg(a), o, z, z, z],
        vec![v1, w1, f.neg(f.mul(a, a)), f.neg(a), o, z, z],
        vec![v2, w2, f.add(f.mul(a, b), c), b, f.neg(a_phi), o, z],
        vec![v3, w3, w4, c, f.sub(a_phi1, b), f.neg(a), o],
    ];
    ProjMatrix::from_rows(f.clone(), rows).expect("unitriangular")
}

/// `diag(1, d, d^(φ+1), d^(φ+2), d^(φ+3), d^(2φ+3), d^(2φ+4))`.
pub fn ree_torus(forms: &ReeForms, d: FieldElement) -> Result<ProjMatrix, GroupError> {
    let f = forms.field();
    let phi = forms.phi();
    let exps = [0, 1, phi + 1, phi + 2, phi + 3, 2 * phi + 3, 2 * phi + 4];
    let diag: Vec<FieldElement> = exps.iter().map(|&e| f.pow(d, e)).collect();
    ProjMatrix::diagonal(f.clone(), &diag)
}

fn ree_generators(
    forms: &ReeForms,
    d: FieldElement,
) -> Result<(Vec<ProjMatrix>, Vec<String>), GroupError> {
    let f = forms.field();
    let (z, o) = (f.zero(), f.one());
    let gens = vec![
        ree_alpha(forms, o, z, z),
        ree_alpha(forms, z, o, z),
        ree_alpha(forms, z, z, o),
        ree_torus(forms, d)?,
        ProjMatrix::antidiagonal(f.clone(), 7),
    ];
    let labels = vec![
        "α(1,0,0)".to_string(),
        "α(0,1,0)".to_string(),
        "α(0,0,1)".to_string(),
        format!("h(d), d={d}"),
        "W".to_string(),
    ];
    Ok((gens, labels))
}

/// Ree(n) on the Ree–Tits ovoid of PG(6, n).
pub fn ree_group(n: u64) -> Result<GroupSpec, GroupError> {
    let family = Family::Ree;
    TwistSpec::ree(n).map_err(|_| GroupError::Unsupported {
        family,
        n,
        reason: "n must be 3^(2s+1) with s >= 0",
    })?;
    let f = Arc::new(FieldSpec::of_order(n)?);
    let forms = ReeForms::new(f.clone())?;
    let (gens, labels) = ree_generators(&forms, f.primitive())?;
    let omega = ree_ovoid(f.clone())?;
    let generators = gens.into_iter().map(GroupElement::Matrix).collect();
    finish(family, n, f, omega, generators, labels, Vec::new())
}

/// Generators of the subgroup Ree(n') of Ree(n), for GF(n') a subfield of
/// GF(n): the same five generators with the torus parameter taken from the
/// embedded subfield.
pub fn ree_subfield_generators(
    large: &Arc<FieldSpec>,
    small_n: u64,
) -> Result<Vec<ProjMatrix>, GroupError> {
    TwistSpec::ree(small_n)?;
    let small = Arc::new(FieldSpec::of_order(small_n)?);
    let emb = SubfieldEmbedding::new(small.clone(), large.clone())?;
    let forms = ReeForms::new(large.clone())?;
    let d = emb.embed(small.primitive())?;
    Ok(ree_generators(&forms, d)?.0)
}

/// Builds any family by name.
pub fn build_group(family: Family, n: u64) -> Result<GroupSpec, GroupError> {
    match family {
        Family::Pgl2 => pgl2_group(n),
        Family::Psl2 => psl2_group(n),
        Family::Pgu3 => pgu3_group(n),
        Family::Psu3 => psu3_group(n),
        Family::Sz => sz_group(n),
        Family::Ree => ree_group(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::to_permutation;

    #[test]
    fn projective_line_groups() {
        assert_eq!(pgl2_group(5).unwrap().order(), 120);
        assert_eq!(psl2_group(5).unwrap().order(), 60);
        assert_eq!(psl2_group(7).unwrap().order(), 168);
        let g4 = psl2_group(4).unwrap();
        assert_eq!(g4.order(), 60);
        assert_eq!(pgl2_group(4).unwrap().order(), 60);
        assert!(matches!(pgl2_group(6), Err(GroupError::NotPrimePower(6))));
    }

    #[test]
    fn translation_is_a_five_cycle_fixing_infinity() {
        let g = pgl2_group(5).unwrap();
        let t = &g.permutations()[0];
        assert_eq!(t.cycle_lengths(), vec![1, 5]);
        assert_eq!(t.fixed_points(), vec![5]);
        let id = GroupElement::Frac(FracLinMap::identity(g.field().clone()));
        assert!(to_permutation(&id, g.omega()).unwrap().is_identity());
    }

    #[test]
    fn unitary_groups_small() {
        let g = pgu3_group(3).unwrap();
        assert_eq!(g.order(), 6048);
        let s = psu3_group(3).unwrap();
        assert_eq!(s.order(), 6048);
        assert_eq!(s.perm_group().stabilizer_order(0), 216);
    }

    #[test]
    fn suzuki_eight() {
        let g = sz_group(8).unwrap();
        assert_eq!(g.order(), 29_120);
        let z_inf = g.omega().infinity() as u32;
        assert_eq!(g.perm_group().stabilizer_order(z_inf), 448);
        assert_eq!(g.perm_group().orbit(z_inf).len(), 65);
        assert_eq!(g.notes().len(), 3);
        assert!(sz_group(2).is_err());
    }

    #[test]
    fn ree_three() {
        let g = ree_group(3).unwrap();
        assert_eq!(g.order(), 1512);
        let w = g.permutations().last().unwrap();
        assert_eq!(w.order(), 2);
        assert_eq!(w.num_fixed_points(), 4);
        // the α(a,b,c) generate a group of order 27, regular off Z∞
        let z_inf = g.omega().infinity() as u32;
        let sylow = PermGroup::new(28, g.permutations()[..3].to_vec()).unwrap();
        assert_eq!(sylow.order(), 27);
        let orbit = sylow.orbit(0);
        assert_eq!(orbit.len(), 27);
        assert!(!orbit.contains(&z_inf));
    }

    #[test]
    fn ree_generators_preserve_large_ovoid() {
        let f = Arc::new(FieldSpec::of_order(27).unwrap());
        let forms = ReeForms::new(f.clone()).unwrap();
        let omega = ree_ovoid(f.clone()).unwrap();
        let (gens, _) = ree_generators(&forms, f.primitive()).unwrap();
        for g in gens {
            assert!(to_permutation(&GroupElement::Matrix(g), &omega).is_ok());
        }
    }

    #[test]
    fn ree3_embeds_in_ree27() {
        let f = Arc::new(FieldSpec::of_order(27).unwrap());
        let omega = ree_ovoid(f.clone()).unwrap();
        let gens = ree_subfield_generators(&f, 3).unwrap();
        let perms: Vec<_> = gens
            .into_iter()
            .map(|g| to_permutation(&GroupElement::Matrix(g), &omega).unwrap())
            .collect();
        let sub = PermGroup::new(omega.len(), perms).unwrap();
        assert_eq!(sub.order(), 1512);
    }

    #[test]
    fn large_groups_reach_their_orders() {
        let g = ree_group(27).unwrap();
        assert_eq!(g.order(), 10_073_444_472);
        assert_eq!(g.omega().len(), 19_684);
        assert_eq!(psu3_group(5).unwrap().order(), 126_000);
        assert_eq!(pgu3_group(5).unwrap().order(), 378_000);
    }
}
