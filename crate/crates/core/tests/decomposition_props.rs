use extremal_core::decomposition::{intersect_components, irreducible_decomposition};
use extremal_core::extremal::extremal_power_gens;
use extremal_core::random::{rng, square_free};
use extremal_core::{MonomialIdeal, PsiMap, Ring};
use proptest::prelude::*;

fn gens() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..=3, 4), 1..=5)
        .prop_filter("proper", |g| g.iter().all(|e| e.iter().any(|&x| x > 0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn components_intersect_back_to_the_ideal(g in gens()) {
        let r = Ring::standard(4);
        let i = MonomialIdeal::new(r.clone(), g.iter().map(|e| r.monomial(e.clone()).unwrap()).collect()).unwrap();
        let comps = irreducible_decomposition(&i).unwrap();
        prop_assert_eq!(intersect_components(&r, &comps).unwrap(), i.clone());
        // irredundant: no component contains another, dropping one enlarges the intersection
        for (a, c) in comps.iter().enumerate() {
            for (b, d) in comps.iter().enumerate() {
                prop_assert!(a == b || !c.is_subset_of(d));
            }
            let rest: Vec<_> = comps.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, d)| d.clone()).collect();
            if !rest.is_empty() {
                prop_assert!(intersect_components(&r, &rest).unwrap() != i);
            }
        }
    }
}

#[test]
fn decompositions_transport_through_psi() {
    let mut rng = rng(13);
    for q in 1..=3 {
        let e = extremal_power_gens(q, 2).unwrap();
        let comps = irreducible_decomposition(&e).unwrap();
        for _ in 0..5 {
            let i = square_free(&mut rng, 6, q).unwrap();
            let map = PsiMap::from_ideal(&i).unwrap();
            let moved = map.transport(&comps).unwrap();
            assert_eq!(intersect_components(i.ring(), &moved).unwrap(), i.power(2).unwrap());
            assert_eq!(moved, irreducible_decomposition(&i.power(2).unwrap()).unwrap());
        }
    }
}

#[test]
fn proper_nonzero_ideals_only() {
    let r = Ring::standard(2);
    assert!(irreducible_decomposition(&MonomialIdeal::unit(r.clone())).is_err());
    assert!(irreducible_decomposition(&MonomialIdeal::zero(r)).is_err());
}
