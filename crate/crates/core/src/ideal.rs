//! Monomial ideals with canonical minimal generating sets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{divides_exps, Monomial, Ring};

/// A monomial ideal, always stored by its minimal generators in canonical
/// order. The empty generator list is the zero ideal; `{1}` is the unit ideal.
#[derive(Debug, Clone)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.id() == other.ring.id() && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    /// The ideal generated by `gens`, reduced to its minimal generators.
    pub fn new(ring: Arc<Ring>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        check_ring(&ring, &gens)?;
        let gens = minimal_generators(gens);
        Ok(MonomialIdeal { ring, gens })
    }

    /// Accepts `gens` only if it is already a minimal generating set.
    pub fn from_minimal(ring: Arc<Ring>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        check_ring(&ring, &gens)?;
        check_minimal(&gens)?;
        let mut gens = gens;
        gens.sort_by(|a, b| a.canonical_cmp(b));
        Ok(MonomialIdeal { ring, gens })
    }

    pub(crate) fn from_minimal_unchecked(ring: Arc<Ring>, mut gens: Vec<Monomial>) -> Self {
        debug_assert!(check_minimal(&gens).is_ok());
        gens.sort_by(|a, b| a.canonical_cmp(b));
        MonomialIdeal { ring, gens }
    }

    pub fn zero(ring: Arc<Ring>) -> MonomialIdeal {
        MonomialIdeal { ring, gens: vec![] }
    }

    pub fn unit(ring: Arc<Ring>) -> MonomialIdeal {
        let one = ring.one();
        MonomialIdeal {
            ring,
            gens: vec![one],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Monomial> {
        self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_square_free(&self) -> bool {
        self.gens.iter().all(Monomial::is_square_free)
    }

    /// Componentwise maximum of the generator exponents.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.dim()];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring.id() == other.ring.id() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.ring() != self.ring.id() {
            return Err(Error::RingMismatch);
        }
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.contains_exps(m.exponents())
    }

    pub(crate) fn contains_exps(&self, exps: &[u32]) -> bool {
        self.gens.iter().any(|g| divides_exps(g.exponents(), exps))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    /// `I^r` for `r >= 1`.
    pub fn power(&self, r: u32) -> Result<MonomialIdeal> {
        if r == 0 {
            return Err(Error::InvalidParameter(
                "ideal powers start at r = 1".into(),
            ));
        }
        let mut acc = self.clone();
        for _ in 1..r {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection via pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm_unchecked(b));
            }
        }
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    /// Minimal generators of `self` that are not in `other`.
    pub fn generators_outside(&self, other: &MonomialIdeal) -> Result<Vec<Monomial>> {
        self.same_ring(other)?;
        Ok(self
            .gens
            .iter()
            .filter(|g| !other.contains_unchecked(g))
            .cloned()
            .collect())
    }
}

/// Intersection of several ideals, minimalized after every step.
pub fn intersect_all<'a>(
    ring: &Arc<Ring>,
    ideals: impl IntoIterator<Item = &'a MonomialIdeal>,
) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(ring.clone());
    for i in ideals {
        acc = acc.intersect(i)?;
    }
    Ok(acc)
}

fn check_ring(ring: &Ring, gens: &[Monomial]) -> Result<()> {
    if gens.iter().any(|g| g.ring() != ring.id()) {
        Err(Error::RingMismatch)
    } else {
        Ok(())
    }
}

fn check_minimal(gens: &[Monomial]) -> Result<()> {
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            if i != j && divides_exps(a.exponents(), b.exponents()) {
                return Err(Error::NotMinimal(format!(
                    "generator {} divides generator {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Support bit mask for quick rejection in divisibility tests; only exact for
/// rings of at most 64 variables, otherwise zero (no rejection).
fn support_mask(exps: &[u32]) -> u64 {
    if exps.len() > 64 {
        return 0;
    }
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

/// Reduces a generator list to the unique minimal generating set, in
/// canonical order.
pub fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.canonical_cmp(b));
    gens.dedup();
    let mut kept: Vec<(u64, Monomial)> = Vec::with_capacity(gens.len());
    for g in gens {
        let mask = support_mask(g.exponents());
        // kept entries have degree <= deg(g); an equal-degree divisor would be g itself
        let redundant = kept
            .iter()
            .any(|(km, k)| km & !mask == 0 && divides_exps(k.exponents(), g.exponents()));
        if !redundant {
            kept.push((mask, g));
        }
    }
    kept.into_iter().map(|(_, g)| g).collect()
}

/// `minimalize` as a free function: the ideal generated by `gens`.
pub fn minimalize(ring: Arc<Ring>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    MonomialIdeal::new(ring, gens)
}

pub fn ideal_power(i: &MonomialIdeal, r: u32) -> Result<MonomialIdeal> {
    i.power(r)
}

pub fn ideal_intersect(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.intersect(j)
}

pub fn ideal_member(i: &MonomialIdeal, m: &Monomial) -> Result<bool> {
    i.contains(m)
}

pub fn ideal_subset(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<bool> {
    i.is_subset_of(j)
}
