//! Seeded random inputs for the randomized checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{divides_exps, Monomial, Ring};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A square-free ideal in `n` variables with exactly `q` minimal generators,
/// each variable present in a generator with probability `density`.
/// Generators are returned in the order drawn.
pub fn square_free_ideal(
    rng: &mut impl Rng,
    n: usize,
    q: usize,
    density: f64,
) -> Result<(Arc<Ring>, Vec<Monomial>)> {
    if q == 0 || n == 0 {
        return Err(Error::InvalidParameter("need at least one variable and one generator".into()));
    }
    // an antichain of q subsets of [n] must exist
    if q > binomial(n, n / 2) {
        return Err(Error::InvalidParameter(format!(
            "no {q} incomparable square-free monomials in {n} variables"
        )));
    }
    let ring = Ring::standard(n);
    let mut gens: Vec<Vec<u32>> = Vec::with_capacity(q);
    let mut attempts = 0u32;
    while gens.len() < q {
        attempts += 1;
        if attempts > 100_000 {
            // start over rather than get stuck behind an unlucky early draw
            gens.clear();
            attempts = 0;
        }
        let e: Vec<u32> = (0..n).map(|_| u32::from(rng.gen_bool(density))).collect();
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        if gens.iter().any(|g| divides_exps(g, &e) || divides_exps(&e, g)) {
            continue;
        }
        gens.push(e);
    }
    let gens = gens
        .into_iter()
        .map(|e| ring.monomial(e))
        .collect::<Result<Vec<_>>>()?;
    Ok((ring, gens))
}

/// Like [`square_free_ideal`], returning the ideal.
pub fn square_free(rng: &mut impl Rng, n: usize, q: usize) -> Result<MonomialIdeal> {
    let (ring, gens) = square_free_ideal(rng, n, q, 0.5)?;
    MonomialIdeal::from_minimal(ring, gens)
}

/// A square-free ideal with `q` generators built class by class: each
/// nonempty `A ⊆ [q]` receives up to `max_per_class` fresh variables, present
/// with probability `p_nonempty`, and `m_i` is the product of the variables
/// of every class containing `i`. Draws are repeated until the generators
/// form an antichain.
pub fn theta_ideal(
    rng: &mut impl Rng,
    q: usize,
    p_nonempty: f64,
    max_per_class: usize,
) -> Result<(Arc<Ring>, Vec<Monomial>)> {
    if q == 0 || q > 6 || max_per_class == 0 {
        return Err(Error::InvalidParameter("need 1 <= q <= 6 and max_per_class >= 1".into()));
    }
    loop {
        let mut classes: Vec<(u32, usize)> = Vec::new();
        for bits in 1u32..(1 << q) {
            if rng.gen_bool(p_nonempty) {
                classes.push((bits, rng.gen_range(1..=max_per_class)));
            }
        }
        let n: usize = classes.iter().map(|c| c.1).sum();
        if n == 0 {
            continue;
        }
        let mut gens = vec![vec![0u32; n]; q];
        let mut k = 0;
        for (bits, size) in classes {
            for _ in 0..size {
                for (i, g) in gens.iter_mut().enumerate() {
                    if bits & (1 << i) != 0 {
                        g[k] = 1;
                    }
                }
                k += 1;
            }
        }
        let antichain = gens.iter().enumerate().all(|(a, ga)| {
            ga.iter().any(|&e| e > 0)
                && gens
                    .iter()
                    .enumerate()
                    .all(|(b, gb)| a == b || !divides_exps(ga, gb))
        });
        if antichain {
            let ring = Ring::standard(n);
            let gens = gens
                .into_iter()
                .map(|e| ring.monomial(e))
                .collect::<Result<Vec<_>>>()?;
            return Ok((ring, gens));
        }
    }
}

/// A monomial with every exponent drawn uniformly from `0..=bounds[k]`.
pub fn monomial_in_box(rng: &mut impl Rng, ring: &Ring, bounds: &[u32]) -> Monomial {
    let e = bounds.iter().map(|&b| rng.gen_range(0..=b)).collect();
    ring.monomial(e).expect("bounds match the ring")
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_generator_count_and_reproducible() {
        for q in 1..=4 {
            let i = square_free(&mut rng(7), 6, q).unwrap();
            assert_eq!(i.len(), q);
            assert!(i.is_square_free());
            assert_eq!(i, square_free(&mut rng(7), 6, q).unwrap());
        }
        assert!(square_free(&mut rng(1), 2, 3).is_err());
    }

    #[test]
    fn theta_ideal_is_minimal() {
        let mut r = rng(3);
        for _ in 0..20 {
            let (ring, gens) = theta_ideal(&mut r, 4, 0.6, 2).unwrap();
            let i = MonomialIdeal::from_minimal(ring, gens).unwrap();
            assert_eq!(i.len(), 4);
            assert!(i.is_square_free());
        }
    }
}
