mod common;

use liereal::chevalley::{AlgebraElement, ChevalleyAlgebra};
use liereal::linalg::q;
use liereal::realform::RealLabel;
use liereal::rootsys::{RootSystem, Series};
use liereal::ssub::poly::{groebner_basis, reduce, MonomialOrder, Poly};
use proptest::prelude::*;

fn element(alg: &ChevalleyAlgebra, coeffs: &[i64]) -> AlgebraElement {
    AlgebraElement { coefficients: (0..alg.dim()).map(|i| q(coeffs[i % coeffs.len()])).collect() }
}

fn poly(n: usize, terms: &[(u32, u32, i64)]) -> Poly {
    Poly::from_terms(n, MonomialOrder::DegRevLex, terms.iter().map(|&(a, b, c)| (vec![a, b], q(c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_on_random_elements(
        ty in prop::sample::select(vec![(Series::B, 2), (Series::G, 2), (Series::A, 3), (Series::C, 3)]),
        a in prop::collection::vec(-3i64..=3, 1..8),
        b in prop::collection::vec(-3i64..=3, 1..8),
        c in prop::collection::vec(-3i64..=3, 1..8),
    ) {
        let alg = ChevalleyAlgebra::new(&RootSystem::new(ty.0, ty.1).unwrap());
        let (x, y, z) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        let br = |u: &AlgebraElement, v: &AlgebraElement| alg.bracket(u, v).unwrap();
        let sum = &(&br(&br(&x, &y), &z) + &br(&br(&y, &z), &x)) + &br(&br(&z, &x), &y);
        prop_assert!(sum.is_zero());
        // antisymmetry
        prop_assert!((&br(&x, &y) + &br(&y, &x)).is_zero());
    }

    #[test]
    fn signature_order_is_normalized(p in 1usize..9, r in 1usize..9) {
        let a = RealLabel::parse(&format!("so({p},{r})")).unwrap();
        let b = RealLabel::parse(&format!("so({r},{p})")).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(RealLabel::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn ideal_members_reduce_to_zero(
        f in prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 1..4),
        g in prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 1..4),
        m in prop::collection::vec((0u32..2, 0u32..2, -4i64..=4), 1..3),
        k in prop::collection::vec((0u32..2, 0u32..2, -4i64..=4), 1..3),
    ) {
        let (f, g) = (poly(2, &f), poly(2, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let gb = groebner_basis(&[f.clone(), g.clone()], MonomialOrder::DegRevLex, 50_000).unwrap();
        let member = f.mul(&poly(2, &m)).add(&g.mul(&poly(2, &k)));
        prop_assert!(reduce(&member, &gb).is_zero());
        let swapped = groebner_basis(&[g, f], MonomialOrder::DegRevLex, 50_000).unwrap();
        prop_assert_eq!(gb, swapped);
    }
}


#[test]
fn battery_has_twenty_systems_and_catches_a_wrong_basis() {
    let battery = common::gb_battery();
    assert_eq!(battery.len(), 20);
    // circle and line: x - y is in the ideal, x alone is not
    let (n, sys) = &battery[0];
    let gb = groebner_basis(sys, MonomialOrder::DegRevLex, 10_000).unwrap();
    assert!(common::brute_force_members(*n, sys, &gb, MonomialOrder::DegRevLex));
    let mut wrong = gb.clone();
    wrong.push(Poly::var(*n, MonomialOrder::DegRevLex, 0));
    assert!(!common::brute_force_members(*n, sys, &wrong, MonomialOrder::DegRevLex));
}
