use std::collections::BTreeSet;

use proptest::prelude::*;
use semireg_core::ffield::{FieldElement, FieldSpec, TwistSpec};
use semireg_core::permeng::{PermGroup, Permutation};
use semireg_core::verify::{identity_failures, ClaimInstance, Scalar, Sign, MAX_EXACT_JSON_INT};

const ORDERS: [u64; 9] = [2, 3, 4, 5, 8, 9, 25, 27, 49];

fn field_and_elems(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<FieldElement>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |q| {
        prop::collection::vec(0..q, k).prop_map(move |vals| {
            let f = FieldSpec::of_order(q).unwrap();
            let xs = vals.into_iter().map(|v| f.element(v).unwrap()).collect();
            (f, xs)
        })
    })
}

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Closure under multiplication by the generators.
fn closure_size(gens: &[Permutation], degree: usize) -> usize {
    let id = Permutation::identity(degree);
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([id.images().to_vec()]);
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = g.compose(s);
            if seen.insert(h.images().to_vec()) {
                frontier.push(h);
            }
        }
    }
    seen.len()
}

proptest! {
    #[test]
    fn field_axioms((f, xs) in field_and_elems(3)) {
        let (a, b, c) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        } else {
            prop_assert!(f.inv(a).is_err());
        }
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn frobenius_is_additive((f, xs) in field_and_elems(2)) {
        let p = f.characteristic();
        prop_assert_eq!(f.pow(f.add(xs[0], xs[1]), p), f.add(f.pow(xs[0], p), f.pow(xs[1], p)));
    }

    #[test]
    fn twist_squares_to_frobenius(q in prop::sample::select(vec![8u64, 27, 32]), v in 0u64..32) {
        let f = FieldSpec::of_order(q).unwrap();
        let x = f.element(v % q).unwrap();
        let y = f.element((v * 7 + 3) % q).unwrap();
        let t = if q % 2 == 0 { TwistSpec::suzuki(q) } else { TwistSpec::ree(q) }.unwrap();
        let tx = f.twist(x, &t).unwrap();
        prop_assert_eq!(f.twist(tx, &t).unwrap(), f.pow(x, f.characteristic()));
        prop_assert_eq!(f.twist(f.mul(x, y), &t).unwrap(), f.mul(tx, f.twist(y, &t).unwrap()));
        prop_assert_eq!(f.twist(f.add(x, y), &t).unwrap(), f.add(tx, f.twist(y, &t).unwrap()));
    }

    #[test]
    fn permutation_laws(a in perm(9), b in perm(9), c in perm(9)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        // a first, then b
        for i in 0..9 {
            prop_assert_eq!(a.compose(&b).image(i), b.image(a.image(i)));
        }
        prop_assert!(a.pow(a.order()).is_identity());
        let mut before = a.cycle_lengths();
        let mut after = a.conjugate_by(&b).cycle_lengths();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
        prop_assert_eq!(a.num_fixed_points(), a.fixed_points().len());
    }

    #[test]
    fn chain_order_matches_closure(a in perm(7), b in perm(7), probe in perm(7)) {
        let gens = vec![a.clone(), b.clone()];
        let g = PermGroup::new(7, gens.clone()).unwrap();
        prop_assert_eq!(g.order() as usize, closure_size(&gens, 7));
        prop_assert!(g.contains(&a.compose(&b).inverse()));
        let with_probe = closure_size(&[a, b, probe.clone()], 7);
        prop_assert_eq!(g.contains(&probe), with_probe == g.order() as usize);
    }

    #[test]
    fn claim_identities_hold(u in 0u64..8, v in 0u64..30) {
        prop_assert!(identity_failures(u, v).is_empty());
        for sign in [Sign::Plus, Sign::Minus] {
            prop_assert!(ClaimInstance::new(u, v, sign).holds());
        }
    }

    #[test]
    fn scalars_are_exact_in_json(v in any::<i64>()) {
        let s = serde_json::to_value(Scalar::from(v)).unwrap();
        if v.unsigned_abs() <= MAX_EXACT_JSON_INT {
            prop_assert_eq!(s.as_i64(), Some(v));
        } else {
            prop_assert_eq!(s.as_str().map(str::to_owned), Some(v.to_string()));
        }
    }
}
