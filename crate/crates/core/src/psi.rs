//! The map `ψ_I : S_[q] → R` attached to a square-free ideal
//! `I = (m_1, ..., m_q)`.
//!
//! `θ_I(A)` is the set of variables `x_k` that divide exactly the generators
//! indexed by `A`, and `ψ_I(y_A)` is their product (or `1` when `θ_I(A)` is
//! empty).

use std::sync::Arc;

use crate::decomposition::{irredundant, IrreducibleComponent};
use crate::error::{Error, Result};
use crate::extremal::{ExtremalRing, SubsetMask, MAX_Q};
use crate::ideal::MonomialIdeal;
use crate::monomial::{divides_exps, Monomial, Ring};

#[derive(Debug, Clone)]
pub struct PsiMap {
    source: Arc<Ring>,
    target: ExtremalRing,
    generators: Vec<Monomial>,
    /// `θ(A)` as sorted source variable indices, by canonical position of `A`
    theta: Vec<Vec<usize>>,
}

impl PsiMap {
    /// Builds `θ_I` for the generators in the given order. They must form a
    /// minimal generating set of square-free monomials.
    pub fn new(source: Arc<Ring>, generators: Vec<Monomial>) -> Result<PsiMap> {
        let q = generators.len();
        if q == 0 {
            return Err(Error::InvalidParameter(
                "the zero ideal has no extremal counterpart".into(),
            ));
        }
        if q > MAX_Q {
            return Err(Error::LimitExceeded(format!(
                "{q} generators; at most {MAX_Q} are supported"
            )));
        }
        for (j, g) in generators.iter().enumerate() {
            if g.ring() != source.id() {
                return Err(Error::RingMismatch);
            }
            if !g.is_square_free() {
                return Err(Error::NotSquareFree(format!("generator {} is not square-free", j + 1)));
            }
        }
        for (a, ga) in generators.iter().enumerate() {
            for (b, gb) in generators.iter().enumerate() {
                if a != b && divides_exps(ga.exponents(), gb.exponents()) {
                    return Err(Error::NotMinimal(format!(
                        "generator {} divides generator {}",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        let target = ExtremalRing::new(q)?;
        let mut theta = vec![Vec::new(); target.dim()];
        for k in 0..source.dim() {
            let bits = generators
                .iter()
                .enumerate()
                .filter(|(_, g)| g.exponent(k) > 0)
                .fold(0u32, |acc, (j, _)| acc | (1 << j));
            if bits != 0 {
                let s = SubsetMask::new(q, bits)?;
                theta[target.position(s)].push(k);
            }
        }
        Ok(PsiMap {
            source,
            target,
            generators,
            theta,
        })
    }

    /// `θ_I` for the minimal generators of `I` in canonical order.
    pub fn from_ideal(i: &MonomialIdeal) -> Result<PsiMap> {
        PsiMap::new(i.ring().clone(), i.generators().to_vec())
    }

    pub fn q(&self) -> usize {
        self.target.q()
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &ExtremalRing {
        &self.target
    }

    /// The generators `m_1, ..., m_q` in the order `θ` was built with.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// The ideal `I` generated by the source generators.
    pub fn source_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::from_minimal_unchecked(self.source.clone(), self.generators.clone())
    }

    pub fn theta(&self, s: SubsetMask) -> &[usize] {
        &self.theta[self.target.position(s)]
    }

    /// Nonempty `θ` classes in canonical subset order.
    pub fn classes(&self) -> impl Iterator<Item = (SubsetMask, &[usize])> + '_ {
        self.target
            .subsets()
            .iter()
            .zip(&self.theta)
            .filter(|(_, t)| !t.is_empty())
            .map(|(&s, t)| (s, t.as_slice()))
    }

    /// `ψ_I(y_A)`.
    pub fn image_of_var(&self, s: SubsetMask) -> Monomial {
        let mut e = vec![0; self.source.dim()];
        for &k in self.theta(s) {
            e[k] = 1;
        }
        Monomial::from_parts(self.source.id(), e)
    }

    pub fn apply(&self, m: &Monomial) -> Result<Monomial> {
        if m.ring() != self.target.ring().id() {
            return Err(Error::RingMismatch);
        }
        let mut e = vec![0; self.source.dim()];
        for (pos, &b) in m.exponents().iter().enumerate() {
            // the classes are disjoint, so every x_k is written at most once
            for &k in &self.theta[pos] {
                e[k] = b;
            }
        }
        Ok(Monomial::from_parts(self.source.id(), e))
    }

    /// `ψ_I(J)R`, minimalized.
    pub fn apply_ideal(&self, j: &MonomialIdeal) -> Result<MonomialIdeal> {
        if j.ring().id() != self.target.ring().id() {
            return Err(Error::RingMismatch);
        }
        let gens = j
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.source.clone(), gens)
    }

    /// Transports an irreducible decomposition in `S_[q]` to `R`.
    ///
    /// A component hitting an empty `θ` class maps to the unit ideal and is
    /// dropped; the others split into one component per choice of a variable
    /// from each class, with powers preserved.
    pub fn transport(&self, components: &[IrreducibleComponent]) -> Result<Vec<IrreducibleComponent>> {
        let mut out = Vec::new();
        for c in components {
            if c.ring() != self.target.ring().id() {
                return Err(Error::RingMismatch);
            }
            let classes: Vec<(&[usize], u32)> = c
                .entries()
                .iter()
                .map(|&(pos, p)| (self.theta[pos].as_slice(), p))
                .collect();
            if classes.iter().any(|(t, _)| t.is_empty()) {
                continue;
            }
            let mut choice = vec![0usize; classes.len()];
            loop {
                let entries = classes
                    .iter()
                    .zip(&choice)
                    .map(|(&(t, p), &i)| (t[i], p))
                    .collect();
                out.push(IrreducibleComponent::new(&self.source, entries)?);
                // odometer over the cartesian product
                let mut d = 0;
                while d < choice.len() {
                    choice[d] += 1;
                    if choice[d] < classes[d].0.len() {
                        break;
                    }
                    choice[d] = 0;
                    d += 1;
                }
                if d == choice.len() {
                    break;
                }
            }
        }
        Ok(irredundant(out))
    }
}

pub fn build_theta(i: &MonomialIdeal) -> Result<PsiMap> {
    PsiMap::from_ideal(i)
}

pub fn psi_apply(map: &PsiMap, m: &Monomial) -> Result<Monomial> {
    map.apply(m)
}

pub fn psi_ideal(map: &PsiMap, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    map.apply_ideal(j)
}

pub fn psi_primary(
    map: &PsiMap,
    components: &[IrreducibleComponent],
) -> Result<Vec<IrreducibleComponent>> {
    map.transport(components)
}
