//! Polynomial rings, variables and monomials.
//!
//! A [`Monomial`] is stored as a dense exponent vector over the canonical
//! variable order of its [`Ring`]. Only the ring identifier travels with the
//! monomial, so every binary operation can refuse operands from different
//! rings without carrying the variable names around.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Content-derived identifier of a ring: two rings with the same variable
/// names in the same order are the same ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

/// A polynomial ring `k[x_1, ..., x_n]`, identified by its ordered variable
/// names. The coefficient field never enters any computation.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    id: RingId,
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Ring>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::Malformed("empty variable name".into()));
            }
            if lookup.insert(n.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate variable {n}")));
            }
        }
        // FNV-1a over the names, separated by a byte that cannot occur in them.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for n in &names {
            for b in n.bytes().chain(std::iter::once(0xff)) {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        Ok(Arc::new(Ring {
            id: RingId(h),
            names,
            lookup,
        }))
    }

    /// The ring `k[x1, ..., xn]`.
    pub fn standard(n: usize) -> Arc<Ring> {
        Ring::new((1..=n).map(|i| format!("x{i}"))).expect("distinct names")
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn variable(&self, index: usize) -> Variable {
        assert!(index < self.dim(), "variable index out of range");
        Variable {
            ring: self.id,
            index,
        }
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            ring: self.id,
            exps: vec![0; self.dim()],
        }
    }

    /// The monomial `x_index`.
    pub fn var(&self, index: usize) -> Monomial {
        let mut m = self.one();
        m.exps[index] = 1;
        m
    }

    /// Builds a monomial from a dense exponent vector.
    pub fn monomial(&self, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != self.dim() {
            return Err(Error::Malformed(format!(
                "exponent vector has length {}, ring has {} variables",
                exps.len(),
                self.dim()
            )));
        }
        Ok(Monomial { ring: self.id, exps })
    }
}

/// A variable of a ring, addressed by its position in the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub ring: RingId,
    pub index: usize,
}

/// A monomial `x^a`. The all-zero vector is the unit monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    ring: RingId,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// Dense exponent vector in the ring's canonical variable order.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of the variables dividing this monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Sparse view: `(variable index, exponent)` for every nonzero exponent.
    pub fn sparse(&self) -> Vec<(usize, u32)> {
        self.support().map(|i| (i, self.exps[i])).collect()
    }

    fn same_ring(&self, other: &Monomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.same_ring(other)?;
        Ok(divides_exps(&self.exps, &other.exps))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.same_ring(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.same_ring(other)?;
        Ok(Monomial {
            ring: self.ring,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.same_ring(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial {
            ring: self.ring,
            exps,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial {
            ring: self.ring,
            exps,
        })
    }

    /// `self / other` when `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Result<Option<Monomial>> {
        self.same_ring(other)?;
        if !divides_exps(&other.exps, &self.exps) {
            return Ok(None);
        }
        Ok(Some(Monomial {
            ring: self.ring,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            ring: self.ring,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub(crate) fn from_parts(ring: RingId, exps: Vec<u32>) -> Monomial {
        Monomial { ring, exps }
    }

    /// Canonical order: total degree first, then the exponent vectors
    /// compared lexicographically with larger leading exponents first.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .cmp(&other.ring)
            .then_with(|| self.canonical_cmp(other))
    }
}

pub(crate) fn divides_exps(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Free-function forms of the monomial operations.
pub fn divides(m1: &Monomial, m2: &Monomial) -> Result<bool> {
    m1.divides(m2)
}

pub fn mono_lcm(m1: &Monomial, m2: &Monomial) -> Result<Monomial> {
    m1.lcm(m2)
}

pub fn mono_gcd(m1: &Monomial, m2: &Monomial) -> Result<Monomial> {
    m1.gcd(m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ring: &Ring, exps: &[u32]) -> Monomial {
        ring.monomial(exps.to_vec()).unwrap()
    }

    #[test]
    fn divides_examples() {
        let r = Ring::standard(3);
        assert!(r.one().divides(&m(&r, &[3, 0, 0])).unwrap());
        assert!(!m(&r, &[1, 1, 0]).divides(&m(&r, &[1, 0, 1])).unwrap());
    }

    #[test]
    fn lcm_gcd_examples() {
        let r = Ring::standard(7);
        let a = m(&r, &[2, 1, 0, 0, 0, 0, 0]);
        let b = m(&r, &[0, 3, 0, 0, 0, 0, 0]);
        assert_eq!(a.lcm(&a).unwrap(), a);
        assert_eq!(a.lcm(&b).unwrap(), m(&r, &[2, 3, 0, 0, 0, 0, 0]));
        assert!(a.gcd(&r.one()).unwrap().is_one());
        let m1 = m(&r, &[1, 1, 0, 0, 1, 0, 1]);
        let m2 = m(&r, &[0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(m1.gcd(&m2).unwrap(), m(&r, &[0, 1, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = Ring::standard(2);
        let s = Ring::new(["a", "b"]).unwrap();
        assert_eq!(r.one().divides(&s.one()), Err(Error::RingMismatch));
        assert_eq!(Ring::standard(2).id(), r.id());
    }

    #[test]
    fn overflow_is_reported() {
        let r = Ring::standard(1);
        let big = m(&r, &[u32::MAX]);
        assert_eq!(big.mul(&r.var(0)), Err(Error::ExponentOverflow));
        assert_eq!(big.pow(2), Err(Error::ExponentOverflow));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Ring::new(["x", "x"]).is_err());
    }
}
