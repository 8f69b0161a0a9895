//! Checkers for PGL(2,n) and PSL(2,n) acting on the projective line.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Recorder, VerifyError, Witness};
use crate::ffield::FieldSpec;
use crate::groups::{build_group, to_permutation, Family, FracLinMap, GroupElement};
use crate::permeng::{
    all_subgroups, class_ids, dickson_classify, CyclicSubgroups, DicksonType, ElementTable,
    MulTable,
};
use crate::projgeom::pg1_domain;
use crate::verify::{Mode, PropositionReport};

/// Counts and fixed points of the involutions of PGL(2,n), the trace
/// criterion on every nonidentity element, and the split between PSL(2,n)
/// and its complement.
pub fn verify_involutions(n: u64) -> Result<PropositionReport, VerifyError> {
    let f = Arc::new(FieldSpec::of_order(n)?);
    let line = pg1_domain(f.clone());
    let mut rec = Recorder::new("involutions", Some(Family::Pgl2), Some(n), Mode::Exhaustive);

    let mut total = 0u64;
    let mut in_psl = 0u64;
    let mut outside = 0u64;
    let mut fixed_in: BTreeMap<usize, u64> = BTreeMap::new();
    let mut fixed_out: BTreeMap<usize, u64> = BTreeMap::new();
    let (psl_fixed, out_fixed) = if n % 4 == 1 { (2, 0) } else { (0, 2) };

    let maps = FracLinMap::all(&f);
    let mut checked = 0u64;
    for (i, m) in maps.iter().enumerate() {
        if m.is_identity() {
            continue;
        }
        checked += 1;
        let order_two = m.then(m).is_identity();
        let by_trace = m.is_involution()?;
        rec.check(order_two == by_trace, || {
            Witness::new("trace_criterion", "trace test disagrees with m^2 = 1")
                .element(i)
                .with("map", m.to_string())
                .with("order_two", order_two)
        });
        if !order_two {
            continue;
        }
        total += 1;
        let fixed = line.points().iter().filter(|p| m.apply(p) == **p).count();
        let psl = m.psl_membership()?;
        let want = if psl { psl_fixed } else { out_fixed };
        if psl {
            in_psl += 1;
            *fixed_in.entry(fixed).or_default() += 1;
        } else {
            outside += 1;
            *fixed_out.entry(fixed).or_default() += 1;
        }
        rec.check(fixed == want, || {
            Witness::new("fixed_points", format!("involution fixes {fixed} points, expected {want}"))
                .element(i)
                .with("map", m.to_string())
                .with("in_psl", psl)
        });
    }

    let (want_in, want_out) = if n % 4 == 1 {
        (n * (n + 1) / 2, n * (n - 1) / 2)
    } else {
        (n * (n - 1) / 2, n * (n + 1) / 2)
    };
    rec.check(total == n * n, || {
        Witness::new("total", "number of involutions in PGL(2,n) is not n^2")
            .with("found", total)
            .with("expected", n * n)
    });
    rec.check(in_psl == want_in, || {
        Witness::new("psl_count", "wrong number of involutions in PSL(2,n)")
            .with("found", in_psl)
            .with("expected", want_in)
    });
    rec.check(outside == want_out, || {
        Witness::new("outer_count", "wrong number of involutions outside PSL(2,n)")
            .with("found", outside)
            .with("expected", want_out)
    });
    rec.count("elements_checked", checked);
    rec.count("involutions", total);
    rec.count("involutions_in_psl", in_psl);
    rec.count("involutions_outside_psl", outside);
    rec.count("fixed_points_in_psl", fixed_in);
    rec.count("fixed_points_outside_psl", fixed_out);
    rec.count("n_mod_4", n % 4);
    Ok(rec.finish())
}

fn psl_table(n: u64) -> Result<(crate::groups::GroupSpec, ElementTable), VerifyError> {
    let g = build_group(Family::Psl2, n)?;
    let t = ElementTable::new(g.perm_group())?;
    Ok((g, t))
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x % p == 0 {
        x /= p;
    }
    x == 1
}

/// Pairwise trivial intersection of the maximal cyclic subgroups of
/// PSL(2,n), and the partition of PSL(2,n) into its Sylow p-subgroups and
/// cyclic subgroups of order (n±1)/2.
pub fn verify_maximal_cyclic_intersection(n: u64) -> Result<PropositionReport, VerifyError> {
    let (g, t) = psl_table(n)?;
    let p = g.field().characteristic();
    let mut rec = Recorder::new("max_cyclic", Some(Family::Psl2), Some(n), Mode::Exhaustive);
    let cs = CyclicSubgroups::new(&t);
    let maximal = cs.maximal_ids();

    // pairwise intersections are trivial iff no nontrivial element lies in two
    let mut owner = vec![u32::MAX; t.len()];
    for &id in &maximal {
        for &e in &cs.subgroups[id][1..] {
            let e = e as usize;
            if owner[e] != u32::MAX {
                let other = owner[e] as usize;
                rec.witness(
                    Witness::new("intersection", "element lies in two maximal cyclic subgroups")
                        .element(e)
                        .with("subgroup_a", cs.generator(other))
                        .with("subgroup_b", cs.generator(id)),
                );
            } else {
                owner[e] = id as u32;
            }
        }
    }
    let m = maximal.len() as u64;
    rec.count("maximal_cyclic_subgroups", m);
    rec.count("pairs_checked", m * m.saturating_sub(1) / 2);
    let mut orders: BTreeMap<usize, u64> = BTreeMap::new();
    for &id in &maximal {
        *orders.entry(cs.subgroups[id].len()).or_default() += 1;
    }
    rec.count("maximal_cyclic_orders", orders);

    // partition: Sylow p-subgroups (one per point, the p-elements fixing it)
    // and maximal cyclic subgroups of order prime to p
    let mut cover = vec![0u32; t.len()];
    let mut sylow_sizes = vec![1u64; t.degree()];
    let mut p_elements = Vec::new();
    for i in 1..t.len() {
        if is_power_of(t.order_of(i), p) {
            p_elements.push(i);
            for (x, &img) in t.images(i).iter().enumerate() {
                if img as usize == x {
                    cover[i] += 1;
                    sylow_sizes[x] += 1;
                }
            }
        }
    }
    for (x, &size) in sylow_sizes.iter().enumerate() {
        rec.check(size == n, || {
            Witness::new("sylow_order", format!("stabiliser of point {x} has {size} p-elements, expected {n}"))
        });
    }
    // the p-elements fixing a point form an elementary abelian group
    for x in 0..t.degree() {
        let members: Vec<usize> = p_elements
            .iter()
            .copied()
            .filter(|&i| t.images(i)[x] as usize == x)
            .collect();
        for &a in &members {
            rec.check(t.order_of(a) == p, || {
                Witness::new("sylow_exponent", "Sylow element of order other than p").element(a)
            });
            for &b in &members {
                let ab = t.mul(a, b);
                let closed = ab == 0 || members.contains(&ab);
                rec.check(closed && ab == t.mul(b, a), || {
                    Witness::new("sylow_structure", "Sylow subgroup not closed or not abelian")
                        .element(a)
                        .with("other", b)
                });
            }
        }
    }
    let cyc_orders = [(n - 1) / 2, (n + 1) / 2];
    let mut cyclic_members = 0u64;
    for &id in &maximal {
        let ord = cs.subgroups[id].len() as u64;
        if is_power_of(ord, p) {
            continue;
        }
        cyclic_members += 1;
        rec.check(cyc_orders.contains(&ord), || {
            Witness::new("cyclic_order", format!("maximal cyclic subgroup of order {ord}"))
                .element(cs.generator(id))
        });
        for &e in &cs.subgroups[id][1..] {
            cover[e as usize] += 1;
        }
    }
    for (i, &c) in cover.iter().enumerate().skip(1) {
        rec.check(c == 1, || {
            Witness::new("partition", format!("element covered {c} times")).element(i)
        });
    }
    rec.count("partition_sylow_subgroups", t.degree());
    rec.count("partition_cyclic_subgroups", cyclic_members);
    rec.count("nontrivial_elements", t.len() - 1);
    Ok(rec.finish())
}

/// Elements of order p: all in PSL(2,n), one PGL-class, two PSL-classes
/// swapped by every element of PGL∖PSL, and the square-class criterion on
/// translations.
pub fn verify_order_p_conjugacy(n: u64) -> Result<PropositionReport, VerifyError> {
    let pgl = build_group(Family::Pgl2, n)?;
    let psl = build_group(Family::Psl2, n)?;
    let f = pgl.field().clone();
    let p = f.characteristic();
    let t = ElementTable::new(pgl.perm_group())?;
    let mut rec = Recorder::new("order_p", Some(Family::Psl2), Some(n), Mode::Exhaustive);

    let psl_gens: Vec<u32> = psl
        .permutations()
        .iter()
        .map(|g| t.index_of(g).expect("PSL generator lies in PGL") as u32)
        .collect();
    let in_psl: Vec<bool> = (0..t.len())
        .map(|i| psl.perm_group().contains(&t.element(i)))
        .collect();
    let psl_classes = class_ids(&t, &psl_gens);
    let pgl_classes = class_ids(&t, t.generator_indices());

    let order_p: Vec<usize> = (1..t.len()).filter(|&i| t.order_of(i) == p).collect();
    for &i in &order_p {
        rec.check(in_psl[i], || {
            Witness::new("in_psl", "element of order p outside PSL(2,n)").element(i)
        });
    }
    let mut psl_sizes: BTreeMap<u32, u64> = BTreeMap::new();
    let mut pgl_ids = std::collections::BTreeSet::new();
    for &i in &order_p {
        *psl_sizes.entry(psl_classes[i]).or_default() += 1;
        pgl_ids.insert(pgl_classes[i]);
    }
    rec.check(pgl_ids.len() == 1, || {
        Witness::new("pgl_classes", format!("{} PGL-classes of order-p elements", pgl_ids.len()))
    });
    rec.check(psl_sizes.len() == 2, || {
        Witness::new("psl_classes", format!("{} PSL-classes of order-p elements", psl_sizes.len()))
    });
    let class_sizes: Vec<u64> = psl_sizes.values().copied().collect();
    rec.count("order_p_elements", order_p.len());
    rec.count("pgl_classes", pgl_ids.len());
    rec.count("psl_classes", psl_sizes.len());
    rec.count("psl_class_sizes", class_sizes);

    // every outer element swaps the two classes
    if let Some(&r) = order_p.first() {
        let mut outer = 0u64;
        for s in (0..t.len()).filter(|&s| !in_psl[s]) {
            outer += 1;
            let img = t.conjugate(r, s);
            rec.check(psl_classes[img] != psl_classes[r], || {
                Witness::new("merge", "outer element fixes a PSL-class of order-p elements")
                    .element(s)
            });
        }
        rec.count("outer_elements_checked", outer);
    }

    // x -> x+b and x -> x+b' are PSL-conjugate iff b'/b is a square
    let line = pgl.omega();
    let translations: Vec<(crate::ffield::FieldElement, usize)> = f
        .nonzero_elements()
        .map(|b| {
            let g = GroupElement::Frac(FracLinMap::translation(f.clone(), b));
            let perm = to_permutation(&g, line)?;
            Ok((b, t.index_of(&perm).expect("translation lies in PGL")))
        })
        .collect::<Result<_, VerifyError>>()?;
    let mut pairs = 0u64;
    for &(b, i) in &translations {
        for &(b2, j) in &translations {
            pairs += 1;
            let square = f.is_square(f.div(b2, b)?)?;
            let same = psl_classes[i] == psl_classes[j];
            rec.check(square == same, || {
                Witness::new("square_criterion", "conjugacy of translations disagrees with b'/b square")
                    .with("b", b.value())
                    .with("b_prime", b2.value())
                    .with("psl_conjugate", same)
            });
        }
    }
    rec.count("translation_pairs_checked", pairs);
    Ok(rec.finish())
}

/// Classifies every subgroup of PSL(2,n) into one of the nine types.
pub fn dickson_audit(n: u64) -> Result<PropositionReport, VerifyError> {
    let (g, t) = psl_table(n)?;
    let f = g.field();
    let (p, r) = (f.characteristic(), f.degree());
    let mt = MulTable::new(&t)?;
    let subs = all_subgroups(&mt);
    let mut rec = Recorder::new("dickson_audit", Some(Family::Psl2), Some(n), Mode::Exhaustive);
    let mut census: BTreeMap<String, u64> = BTreeMap::new();
    for s in &subs {
        let ty = dickson_classify(&mt, s, p, r);
        let key = match ty.number() {
            Some(k) => format!("({k}) {}", type_name(&ty)),
            None => "unknown".to_string(),
        };
        *census.entry(key).or_default() += 1;
        rec.check(ty != DicksonType::Unknown, || {
            Witness::new("unknown", format!("subgroup of order {} has no type", s.order()))
                .with("generators", s.generators().to_vec())
        });
    }
    rec.count("subgroups", subs.len());
    rec.count("census", census);
    Ok(rec.finish())
}

fn type_name(t: &DicksonType) -> String {
    match t {
        DicksonType::ElementaryAbelian { m } => format!("elementary abelian p^{m}"),
        DicksonType::Cyclic { z } => format!("cyclic {z}"),
        DicksonType::Dihedral { z } => format!("dihedral {}", 2 * z),
        DicksonType::Semidirect { m, t } => format!("p^{m}:{t}"),
        DicksonType::A4 => "A4".to_string(),
        DicksonType::S4 => "S4".to_string(),
        DicksonType::A5 => "A5".to_string(),
        DicksonType::Psl { m } => format!("PSL(2,p^{m})"),
        DicksonType::Pgl { m } => format!("PGL(2,p^{m})"),
        DicksonType::Unknown => "unknown".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_counts() {
        let r = verify_involutions(5).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses());
        assert_eq!(r.count("involutions"), Some(25));
        assert_eq!(r.count("involutions_in_psl"), Some(15));
        let r = verify_involutions(7).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("involutions_outside_psl"), Some(28));
    }

    #[test]
    fn max_cyclic_partition_small() {
        for n in [5, 9] {
            let r = verify_maximal_cyclic_intersection(n).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.witnesses());
        }
    }

    #[test]
    fn order_p_classes() {
        let r = verify_order_p_conjugacy(5).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses());
        assert_eq!(r.counts()["psl_class_sizes"], vec![12u64, 12].into());
    }

    #[test]
    fn dickson_audit_psl25() {
        let r = dickson_audit(5).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("subgroups"), Some(59));
    }
}
