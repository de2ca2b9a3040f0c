use std::sync::Arc;

use extremal_core::extremal::{extremal_power_gens, f_x};
use extremal_core::random::{rng, square_free};
use extremal_core::symbolic::{
    in_symbolic, minimal_primes, minimal_set_covers, sdefect, symbolic_power, SymbolicContext,
};
use extremal_core::{ExtremalRing, MonomialIdeal, PsiMap, Ring, SubsetMask};
use proptest::prelude::*;

/// Minimal vertex covers by scanning every subset of the variables.
fn brute_primes(i: &MonomialIdeal) -> Vec<Vec<usize>> {
    let n = i.ring().dim();
    let sup: Vec<u32> = i
        .generators()
        .iter()
        .map(|g| g.support().fold(0, |a, k| a | (1 << k)))
        .collect();
    let hits = |s: u32| sup.iter().all(|&g| g & s != 0);
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .filter(|&s| hits(s) && (0..n).all(|k| s & (1 << k) == 0 || !hits(s & !(1 << k))))
        .map(|s| (0..n).filter(|k| s & (1 << k) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn square_free_gens(n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..=1, n), 1..=4)
        .prop_filter("nonconstant", |g| g.iter().all(|e| e.iter().any(|&x| x > 0)))
}

fn build(g: &[Vec<u32>]) -> (Arc<Ring>, MonomialIdeal) {
    let r = Ring::standard(g[0].len());
    let gens = g.iter().map(|e| r.monomial(e.clone()).unwrap()).collect();
    let i = MonomialIdeal::new(r.clone(), gens).unwrap();
    (r, i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn primes_are_minimal_vertex_covers(g in square_free_gens(5)) {
        let (_, i) = build(&g);
        let got: Vec<Vec<usize>> = minimal_primes(&i).unwrap().iter().map(|p| p.variables().to_vec()).collect();
        prop_assert_eq!(got, brute_primes(&i));
    }

    #[test]
    fn membership_is_the_degree_test(g in square_free_gens(4), b in prop::collection::vec(0u32..=3, 4), r in 1u32..=3) {
        let (ring, i) = build(&g);
        let m = ring.monomial(b.clone()).unwrap();
        let expected = brute_primes(&i).iter().all(|p| p.iter().map(|&k| b[k]).sum::<u32>() >= r);
        prop_assert_eq!(in_symbolic(&i, r, &m).unwrap(), expected);
    }

    #[test]
    fn generators_are_members_and_minimal(g in square_free_gens(4), r in 1u32..=3) {
        let (ring, i) = build(&g);
        let s = symbolic_power(&i, r).unwrap();
        prop_assert!(i.power(r).unwrap().is_subset_of(&s).unwrap());
        for m in s.generators() {
            prop_assert!(in_symbolic(&i, r, m).unwrap());
            for k in m.support() {
                let mut e = m.exponents().to_vec();
                e[k] -= 1;
                prop_assert!(!in_symbolic(&i, r, &ring.monomial(e).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn covers_count() {
    let counts: Vec<usize> = (1..=5).map(|q| minimal_set_covers(q).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 2, 8, 49, 462]);
}

#[test]
fn covers_give_the_primes_of_the_extremal_ideal() {
    for q in 1..=4 {
        let t = ExtremalRing::new(q).unwrap();
        let mut from_covers: Vec<Vec<usize>> = minimal_set_covers(q)
            .unwrap()
            .iter()
            .map(|c| c.prime(&t).variables().to_vec())
            .collect();
        from_covers.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(from_covers, brute_primes(&t.ideal()));
    }
}

#[test]
fn f_x_lies_in_the_square_only_for_small_x() {
    for q in 2..=4 {
        let sq = extremal_power_gens(q, 2).unwrap();
        let ctx = SymbolicContext::extremal(q).unwrap();
        for bits in 1u32..(1 << q) {
            let x = SubsetMask::new(q, bits).unwrap();
            let f = f_x(q, x).unwrap();
            assert!(ctx.contains(2, &f).unwrap());
            assert_eq!(sq.contains(&f).unwrap(), x.len() <= 2, "X = {:?}", x.elements());
        }
    }
}

#[test]
fn symbolic_square_exponents_stay_at_most_two() {
    for q in 2..=4 {
        let s = SymbolicContext::extremal(q).unwrap().power(2).unwrap();
        assert!(s.generators().iter().all(|m| m.exponents().iter().all(|&e| e <= 2)));
    }
}

#[test]
fn symbolic_powers_transport_through_psi() {
    let mut rng = rng(21);
    for q in 1..=3 {
        let ext = SymbolicContext::extremal(q).unwrap();
        for r in 1..=3 {
            let e = ext.power(r).unwrap();
            for _ in 0..4 {
                let i = square_free(&mut rng, 6, q).unwrap();
                let map = PsiMap::from_ideal(&i).unwrap();
                assert_eq!(map.apply_ideal(&e).unwrap(), symbolic_power(&i, r).unwrap());
            }
        }
    }
}

#[test]
fn symbolic_defect_of_images_is_bounded() {
    let mut rng = rng(4);
    for q in 2..=4 {
        let bound = sdefect(&ExtremalRing::new(q).unwrap().ideal(), 2).unwrap();
        for _ in 0..5 {
            let i = square_free(&mut rng, 7, q).unwrap();
            assert!(sdefect(&i, 2).unwrap() <= bound);
        }
    }
}
