//! The simplex solver against Fourier-Motzkin elimination.

use extremal_core::lp::{feasible, rat, FeasibilityProblem, Rational};
use num_traits::Zero;
use proptest::prelude::*;

/// Rows `a·x <= b`.
type Row = (Vec<Rational>, Rational);

/// Feasibility of `{x : a·x <= b}` by eliminating one variable at a time.
fn fourier_motzkin(mut rows: Vec<Row>, dim: usize) -> bool {
    for v in 0..dim {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.0[v] > Rational::zero() {
                pos.push(row);
            } else if row.0[v] < Rational::zero() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (s, t) = (-na[v].clone(), pa[v].clone());
                let a = pa.iter().zip(na).map(|(x, y)| x * &s + y * &t).collect();
                rest.push((a, pb * &s + nb * &t));
            }
        }
        rows = rest;
    }
    rows.iter().all(|(_, b)| *b >= Rational::zero())
}

fn system() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, i64, u8)>)> {
    (1usize..=3).prop_flat_map(|d| {
        let row = (prop::collection::vec(-3i64..=3, d), -4i64..=6, 0u8..3);
        (Just(d), prop::collection::vec(row, 1..=5))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simplex_agrees_with_elimination((d, rows) in system()) {
        let mut p = FeasibilityProblem::new(d).unwrap();
        let mut fm: Vec<Row> = Vec::new();
        for (a, b, sense) in &rows {
            let a: Vec<Rational> = a.iter().map(|&x| rat(x)).collect();
            let neg: Vec<Rational> = a.iter().map(|x| -x.clone()).collect();
            match sense {
                0 => {
                    p.add_le(a.clone(), rat(*b)).unwrap();
                    fm.push((a, rat(*b)));
                }
                1 => {
                    p.add_ge(a.clone(), rat(*b)).unwrap();
                    fm.push((neg, rat(-*b)));
                }
                _ => {
                    p.add_eq(a.clone(), rat(*b)).unwrap();
                    fm.push((a, rat(*b)));
                    fm.push((neg, rat(-*b)));
                }
            }
        }
        // nonnegativity
        for v in 0..d {
            let mut a = vec![rat(0); d];
            a[v] = rat(-1);
            fm.push((a, rat(0)));
        }
        let result = feasible(&p).unwrap();
        prop_assert_eq!(result.is_feasible(), fourier_motzkin(fm, d));
        if let Some(w) = result.witness() {
            prop_assert!(p.is_satisfied_by(w));
        }
    }
}

#[test]
fn free_variables_may_go_negative() {
    let mut p = FeasibilityProblem::new(1).unwrap();
    p.add_le(vec![rat(1)], rat(-2)).unwrap();
    assert!(!feasible(&p).unwrap().is_feasible());
    p.set_free(0).unwrap();
    let w = feasible(&p).unwrap().into_witness().unwrap();
    assert!(w[0] <= rat(-2));
}
