//! The extremal ideal `E_q` and its companions.
//!
//! `S_[q]` has one variable `y_A` for every nonempty `A ⊆ [q]`, ordered by
//! cardinality and then lexicographically on the sorted elements. `E_q` is
//! generated by `ε_i = ∏_{A ∋ i} y_A`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Ring};

/// Largest supported `q`; `S_[q]` has `2^q - 1` variables.
pub const MAX_Q: usize = 12;

/// A nonempty subset of `[q]` stored as a bit mask (bit `i - 1` for element `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u32,
    q: u8,
}

impl SubsetMask {
    pub fn new(q: usize, bits: u32) -> Result<SubsetMask> {
        check_q(q)?;
        if bits == 0 {
            return Err(Error::InvalidParameter("subset must be nonempty".into()));
        }
        if bits >> q != 0 {
            return Err(Error::InvalidParameter(format!(
                "subset mask {bits:#b} exceeds [{q}]"
            )));
        }
        Ok(SubsetMask { bits, q: q as u8 })
    }

    /// Subset from 1-based elements.
    pub fn from_elements(q: usize, elements: &[usize]) -> Result<SubsetMask> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > q {
                return Err(Error::InvalidParameter(format!(
                    "element {e} is outside [{q}]"
                )));
            }
            bits |= 1 << (e - 1);
        }
        SubsetMask::new(q, bits)
    }

    pub fn full(q: usize) -> Result<SubsetMask> {
        check_q(q)?;
        SubsetMask::new(q, full_bits(q))
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn q(self) -> usize {
        usize::from(self.q)
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= self.q() && self.bits & (1 << (element - 1)) != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: SubsetMask) -> bool {
        self.bits & other.bits != 0
    }

    /// Complement in `[q]`; `None` for `[q]` itself (the complement is `∅`).
    pub fn complement(self) -> Option<SubsetMask> {
        let c = full_bits(self.q()) & !self.bits;
        (c != 0).then_some(SubsetMask { bits: c, q: self.q })
    }

    /// Sorted 1-based elements.
    pub fn elements(self) -> Vec<usize> {
        (1..=self.q()).filter(|&e| self.contains(e)).collect()
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(&other.elements()))
            .then_with(|| self.q.cmp(&other.q))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els = self.elements();
        if self.q() <= 9 {
            for e in els {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = els.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

fn full_bits(q: usize) -> u32 {
    if q == 32 {
        u32::MAX
    } else {
        (1u32 << q) - 1
    }
}

pub(crate) fn check_q(q: usize) -> Result<()> {
    if q == 0 || q > MAX_Q {
        Err(Error::InvalidParameter(format!(
            "q must satisfy 1 <= q <= {MAX_Q}, got {q}"
        )))
    } else {
        Ok(())
    }
}

/// The ring `S_[q]` with its subset bookkeeping.
#[derive(Debug, Clone)]
pub struct ExtremalRing {
    q: usize,
    ring: Arc<Ring>,
    order: Vec<SubsetMask>,
    /// canonical position of each mask, indexed by `bits`
    position: Vec<usize>,
}

impl ExtremalRing {
    pub fn new(q: usize) -> Result<ExtremalRing> {
        check_q(q)?;
        let mut order: Vec<SubsetMask> = (1..=full_bits(q))
            .map(|bits| SubsetMask { bits, q: q as u8 })
            .collect();
        order.sort();
        let mut position = vec![usize::MAX; full_bits(q) as usize + 1];
        for (i, s) in order.iter().enumerate() {
            position[s.bits as usize] = i;
        }
        let ring = Ring::new(order.iter().map(|s| format!("y_{s}")))?;
        Ok(ExtremalRing {
            q,
            ring,
            order,
            position,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Number of variables, `2^q - 1`.
    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Subsets in canonical variable order.
    pub fn subsets(&self) -> &[SubsetMask] {
        &self.order
    }

    pub fn position(&self, s: SubsetMask) -> usize {
        debug_assert_eq!(s.q(), self.q);
        self.position[s.bits as usize]
    }

    pub fn subset_at(&self, position: usize) -> SubsetMask {
        self.order[position]
    }

    pub fn full_position(&self) -> usize {
        self.dim() - 1
    }

    /// `ε_i`, for `1 <= i <= q`.
    pub fn epsilon(&self, i: usize) -> Result<Monomial> {
        if i == 0 || i > self.q {
            return Err(Error::InvalidParameter(format!(
                "epsilon index {i} is outside [{}]",
                self.q
            )));
        }
        let exps = self.order.iter().map(|s| u32::from(s.contains(i))).collect();
        self.ring.monomial(exps)
    }

    /// `E_q` itself.
    pub fn ideal(&self) -> MonomialIdeal {
        let gens = (1..=self.q).map(|i| self.epsilon(i).expect("in range")).collect();
        MonomialIdeal::from_minimal_unchecked(self.ring.clone(), gens)
    }

    pub fn exponent_of(&self, m: &Monomial) -> Result<ExtremalExponent> {
        if m.ring() != self.ring.id() {
            return Err(Error::RingMismatch);
        }
        Ok(ExtremalExponent {
            q: self.q,
            b: m.exponents().to_vec(),
        })
    }

    pub fn monomial_of(&self, b: &ExtremalExponent) -> Result<Monomial> {
        if b.q != self.q {
            return Err(Error::RingMismatch);
        }
        self.ring.monomial(b.b.clone())
    }

    /// Monomial `y^b` whose exponent at `A` is `value(A)`.
    pub fn monomial_from_fn(&self, value: impl Fn(SubsetMask) -> u32) -> Monomial {
        let exps = self.order.iter().map(|&s| value(s)).collect();
        self.ring.monomial(exps).expect("length matches")
    }

    /// Monomial `y_A`.
    pub fn var(&self, s: SubsetMask) -> Monomial {
        self.ring.var(self.position(s))
    }
}

/// Exponent vector `b = Σ b_A e_A` over all nonempty subsets, stored in the
/// canonical subset order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtremalExponent {
    q: usize,
    b: Vec<u32>,
}

impl ExtremalExponent {
    pub fn new(q: usize, b: Vec<u32>) -> Result<ExtremalExponent> {
        check_q(q)?;
        if b.len() != (1usize << q) - 1 {
            return Err(Error::Malformed(format!(
                "extremal exponent for q = {q} needs {} coordinates, got {}",
                (1usize << q) - 1,
                b.len()
            )));
        }
        Ok(ExtremalExponent { q, b })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Coordinates in canonical subset order.
    pub fn values(&self) -> &[u32] {
        &self.b
    }

    pub fn get(&self, ring: &ExtremalRing, s: SubsetMask) -> u32 {
        self.b[ring.position(s)]
    }
}

/// An element `a` of `N_q^r`: `q` nonnegative integers summing to `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    a: Vec<u32>,
}

impl Composition {
    pub fn new(a: Vec<u32>) -> Result<Composition> {
        check_q(a.len())?;
        Ok(Composition { a })
    }

    pub fn parts(&self) -> &[u32] {
        &self.a
    }

    pub fn q(&self) -> usize {
        self.a.len()
    }

    pub fn r(&self) -> u32 {
        self.a.iter().sum()
    }

    /// `|a|_A = Σ_{i ∈ A} a_i`.
    pub fn weight(&self, s: SubsetMask) -> u32 {
        self.a
            .iter()
            .enumerate()
            .filter(|(i, _)| s.contains(i + 1))
            .map(|(_, &v)| v)
            .sum()
    }
}

/// All of `N_q^r`, in lexicographically decreasing order.
pub fn compositions(q: usize, r: u32) -> Vec<Composition> {
    fn rec(q: usize, r: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if prefix.len() + 1 == q {
            prefix.push(r);
            out.push(Composition { a: prefix.clone() });
            prefix.pop();
            return;
        }
        for v in (0..=r).rev() {
            prefix.push(v);
            rec(q, r - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if q > 0 {
        rec(q, r, &mut Vec::with_capacity(q), &mut out);
    }
    out
}

/// `ã`, the exponent of `ε^a`: coordinate `A` is `|a|_A`.
pub fn tilde_exponent(a: &Composition) -> Result<ExtremalExponent> {
    let ring = ExtremalRing::new(a.q())?;
    Ok(ExtremalExponent {
        q: a.q(),
        b: ring.subsets().iter().map(|&s| a.weight(s)).collect(),
    })
}

pub fn epsilon(q: usize, i: usize) -> Result<Monomial> {
    ExtremalRing::new(q)?.epsilon(i)
}

pub fn extremal_ideal(q: usize) -> Result<MonomialIdeal> {
    Ok(ExtremalRing::new(q)?.ideal())
}

/// Generators `ε^a`, `a ∈ N_q^r`, of `E_q^r`. These are already minimal.
pub fn extremal_power_gens(q: usize, r: u32) -> Result<MonomialIdeal> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let ring = ExtremalRing::new(q)?;
    let gens = compositions(q, r)
        .iter()
        .map(|a| ring.monomial_from_fn(|s| a.weight(s)))
        .collect();
    Ok(MonomialIdeal::from_minimal_unchecked(ring.ring().clone(), gens))
}

fn check_test_range(r: u32, q: usize, min_r: u32, min_q: usize, what: &str) -> Result<()> {
    if r < min_r || q < min_q {
        return Err(Error::InvalidParameter(format!(
            "{what} needs r >= {min_r} and q >= {min_q}, got r = {r}, q = {q}"
        )));
    }
    check_q(q)
}

/// `g(r, q) = (∏_A y_A)(∏_{|A| >= 3} y_A) ε_1^{r-2}`, for `r >= 2`, `q >= 4`.
pub fn g_test(r: u32, q: usize) -> Result<Monomial> {
    check_test_range(r, q, 2, 4, "g(r, q)")?;
    let ring = ExtremalRing::new(q)?;
    Ok(ring.monomial_from_fn(|s| {
        1 + u32::from(s.len() >= 3) + if s.contains(1) { r - 2 } else { 0 }
    }))
}

/// `h(r, q) = y^{1 + e_[q]} ε_1^{r-2}`, for `r >= 2`, `q >= 3`.
pub fn h_test(r: u32, q: usize) -> Result<Monomial> {
    check_test_range(r, q, 2, 3, "h(r, q)")?;
    let ring = ExtremalRing::new(q)?;
    Ok(ring.monomial_from_fn(|s| {
        1 + u32::from(s.len() == q) + if s.contains(1) { r - 2 } else { 0 }
    }))
}

/// `f_X`: exponent 2 on `y_A` when `X ⊆ A`, 0 when `A ∩ X = ∅`, 1 otherwise.
pub fn f_x(q: usize, x: SubsetMask) -> Result<Monomial> {
    if x.q() != q {
        return Err(Error::InvalidParameter(format!(
            "subset lives in [{}], expected [{q}]",
            x.q()
        )));
    }
    let ring = ExtremalRing::new(q)?;
    Ok(f_x_in(&ring, x))
}

pub(crate) fn f_x_in(ring: &ExtremalRing, x: SubsetMask) -> Monomial {
    ring.monomial_from_fn(|a| {
        if x.is_subset_of(a) {
            2
        } else if !x.intersects(a) {
            0
        } else {
            1
        }
    })
}

/// `Ω_q^2 = {f_X : ∅ ≠ X ⊆ [q]}` as an ideal (its members are its minimal
/// generators).
pub fn omega2(q: usize) -> Result<MonomialIdeal> {
    let ring = ExtremalRing::new(q)?;
    let gens = ring.subsets().iter().map(|&x| f_x_in(&ring, x)).collect();
    Ok(MonomialIdeal::from_minimal_unchecked(ring.ring().clone(), gens))
}
