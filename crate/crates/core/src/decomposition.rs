//! Irredundant irreducible decompositions of monomial ideals.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Ring, RingId};

/// An irreducible monomial ideal `(x_{i1}^{a1}, ..., x_{is}^{as})`, stored as
/// `(variable index, power)` pairs sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrreducibleComponent {
    ring: RingId,
    entries: Vec<(usize, u32)>,
}

impl IrreducibleComponent {
    pub fn new(ring: &Ring, mut entries: Vec<(usize, u32)>) -> Result<IrreducibleComponent> {
        entries.sort_unstable();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Malformed(format!(
                    "variable {} repeated in irreducible component",
                    ring.name(w[0].0)
                )));
            }
        }
        for &(v, p) in &entries {
            if v >= ring.dim() {
                return Err(Error::Malformed(format!("variable index {v} out of range")));
            }
            if p == 0 {
                return Err(Error::Malformed("component powers must be positive".into()));
            }
        }
        if entries.is_empty() {
            return Err(Error::Malformed("irreducible component needs a generator".into()));
        }
        Ok(IrreducibleComponent {
            ring: ring.id(),
            entries,
        })
    }

    pub(crate) fn from_sorted(ring: RingId, entries: Vec<(usize, u32)>) -> Self {
        IrreducibleComponent { ring, entries }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    /// Variables of the radical, which is the prime `(x_i : i in entries)`.
    pub fn radical(&self) -> Vec<usize> {
        self.entries.iter().map(|&(v, _)| v).collect()
    }

    /// `self ⊆ other` for irreducible ideals: every `x^a` of `self` is a
    /// multiple of some `x^b` of `other`, i.e. `b <= a` on the same variable.
    pub fn is_subset_of(&self, other: &IrreducibleComponent) -> bool {
        self.entries.iter().all(|&(v, a)| {
            other
                .entries
                .binary_search_by_key(&v, |&(w, _)| w)
                .is_ok_and(|i| other.entries[i].1 <= a)
        })
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> Result<MonomialIdeal> {
        if ring.id() != self.ring {
            return Err(Error::RingMismatch);
        }
        let gens = self
            .entries
            .iter()
            .map(|&(v, p)| {
                let mut e = vec![0; ring.dim()];
                e[v] = p;
                ring.monomial(e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal::from_minimal_unchecked(ring.clone(), gens))
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let vars = |c: &Self| c.entries.iter().map(|e| e.0).collect::<Vec<_>>();
        let pows = |c: &Self| c.entries.iter().map(|e| e.1).collect::<Vec<_>>();
        vars(self)
            .cmp(&vars(other))
            .then_with(|| pows(self).cmp(&pows(other)))
    }
}

/// Drops every component that contains another one, and duplicates; the
/// survivors are returned in canonical order.
pub fn irredundant(components: Vec<IrreducibleComponent>) -> Vec<IrreducibleComponent> {
    let mut comps = components;
    comps.sort_by(|a, b| a.canonical_cmp(b));
    comps.dedup();
    let keep: Vec<bool> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            !comps
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && d.is_subset_of(c))
        })
        .collect();
    comps
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Intersection of the components as a monomial ideal.
pub fn intersect_components(
    ring: &Arc<Ring>,
    components: &[IrreducibleComponent],
) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(ring.clone());
    for c in components {
        acc = acc.intersect(&c.to_ideal(ring)?)?;
    }
    Ok(acc)
}

/// The unique irredundant irreducible decomposition of `J`.
///
/// Splits `J = (J + x_i^a) ∩ (J + m / x_i^a)` on a generator `m` that is not
/// a pure power, until every generator is a pure power.
pub fn irreducible_decomposition(j: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    if j.is_zero() || j.is_unit() {
        return Err(Error::InvalidParameter(
            "decomposition needs a proper nonzero ideal".into(),
        ));
    }
    let mut memo = HashMap::new();
    let mut out = BTreeSet::new();
    split(j, &mut memo, &mut out)?;
    let comps = out
        .into_iter()
        .map(|e| IrreducibleComponent::from_sorted(j.ring().id(), e))
        .collect();
    Ok(irredundant(comps))
}

type Entries = Vec<(usize, u32)>;

fn split(
    j: &MonomialIdeal,
    memo: &mut HashMap<Vec<Monomial>, ()>,
    out: &mut BTreeSet<Entries>,
) -> Result<()> {
    if memo.insert(j.generators().to_vec(), ()).is_some() {
        return Ok(());
    }
    let mixed = j.generators().iter().find(|g| g.support().count() > 1);
    let Some(m) = mixed else {
        let entries = j
            .generators()
            .iter()
            .map(|g| {
                let v = g.support().next().expect("proper ideal has no unit generator");
                (v, g.exponent(v))
            })
            .collect::<Vec<_>>();
        let mut entries = entries;
        entries.sort_unstable();
        out.insert(entries);
        return Ok(());
    };
    let ring = j.ring();
    let v = m
        .support()
        .max_by_key(|&i| (m.exponent(i), std::cmp::Reverse(i)))
        .expect("nonempty support");
    let mut pure = vec![0; ring.dim()];
    pure[v] = m.exponent(v);
    let pure = ring.monomial(pure)?;
    let rest = m.quotient(&pure)?.expect("pure part divides m");
    for extra in [pure, rest] {
        let bigger = j.sum(&MonomialIdeal::from_minimal_unchecked(ring.clone(), vec![extra]))?;
        split(&bigger, memo, out)?;
    }
    Ok(())
}
