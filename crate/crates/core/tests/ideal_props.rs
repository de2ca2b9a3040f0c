use std::sync::Arc;

use extremal_core::{Monomial, MonomialIdeal, Ring};
use proptest::prelude::*;

const N: usize = 3;

fn ring() -> Arc<Ring> {
    Ring::standard(N)
}

fn exps() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=3, N)
}

fn gens() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(exps(), 1..=4)
}

fn mono(r: &Arc<Ring>, e: &[u32]) -> Monomial {
    r.monomial(e.to_vec()).unwrap()
}

fn ideal(r: &Arc<Ring>, g: &[Vec<u32>]) -> MonomialIdeal {
    MonomialIdeal::new(r.clone(), g.iter().map(|e| mono(r, e)).collect()).unwrap()
}

fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Membership by scanning the raw (non-minimal) generator list.
fn raw_member(g: &[Vec<u32>], b: &[u32]) -> bool {
    g.iter().any(|e| le(e, b))
}

fn box_points(bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_lcm_bracket_and_multiply(a in exps(), b in exps()) {
        let r = ring();
        let (x, y) = (mono(&r, &a), mono(&r, &b));
        let g = x.gcd(&y).unwrap();
        let l = x.lcm(&y).unwrap();
        prop_assert!(g.divides(&x).unwrap() && g.divides(&y).unwrap());
        prop_assert!(x.divides(&l).unwrap() && y.divides(&l).unwrap());
        prop_assert_eq!(g.mul(&l).unwrap(), x.mul(&y).unwrap());
    }

    #[test]
    fn divisibility_is_a_partial_order(a in exps(), b in exps(), c in exps()) {
        let r = ring();
        let (x, y, z) = (mono(&r, &a), mono(&r, &b), mono(&r, &c));
        prop_assert!(x.divides(&x).unwrap());
        if x.divides(&y).unwrap() && y.divides(&x).unwrap() {
            prop_assert_eq!(&x, &y);
        }
        if x.divides(&y).unwrap() && y.divides(&z).unwrap() {
            prop_assert!(x.divides(&z).unwrap());
        }
    }

    #[test]
    fn minimal_generators_form_an_antichain(g in gens()) {
        let r = ring();
        let i = ideal(&r, &g);
        for (k, x) in i.generators().iter().enumerate() {
            for (l, y) in i.generators().iter().enumerate() {
                prop_assert!(k == l || !x.divides(y).unwrap());
            }
        }
        for b in box_points(3) {
            prop_assert_eq!(i.contains(&mono(&r, &b)).unwrap(), raw_member(&g, &b));
        }
    }

    #[test]
    fn intersection_matches_membership(g in gens(), h in gens()) {
        let r = ring();
        let both = ideal(&r, &g).intersect(&ideal(&r, &h)).unwrap();
        for b in box_points(4) {
            prop_assert_eq!(
                both.contains(&mono(&r, &b)).unwrap(),
                raw_member(&g, &b) && raw_member(&h, &b)
            );
        }
    }

    #[test]
    fn square_matches_pairwise_products(g in gens()) {
        let r = ring();
        let sq = ideal(&r, &g).power(2).unwrap();
        let products: Vec<Vec<u32>> = g
            .iter()
            .flat_map(|a| g.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        for b in box_points(6) {
            prop_assert_eq!(sq.contains(&mono(&r, &b)).unwrap(), raw_member(&products, &b));
        }
    }

    #[test]
    fn sum_and_product_are_commutative(g in gens(), h in gens()) {
        let r = ring();
        let (i, j) = (ideal(&r, &g), ideal(&r, &h));
        prop_assert_eq!(i.sum(&j).unwrap(), j.sum(&i).unwrap());
        prop_assert_eq!(i.product(&j).unwrap(), j.product(&i).unwrap());
        prop_assert!(i.product(&j).unwrap().is_subset_of(&i.intersect(&j).unwrap()).unwrap());
    }
}

#[test]
fn rings_are_identified_by_their_names() {
    let (a, b) = (Ring::standard(2), Ring::standard(2));
    assert!(a.var(0).divides(&b.var(0)).unwrap());
    let c = Ring::new(["u", "v"]).unwrap();
    assert!(a.var(0).divides(&c.var(0)).is_err());
}
