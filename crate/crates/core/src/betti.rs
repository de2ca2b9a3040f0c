//! Multigraded Betti numbers of small monomial ideals.
//!
//! `β_{i,m}(J)` is read off the Taylor complex tensored with the residue
//! field: in multidegree `m` the chains are the generator subsets with lcm
//! exactly `m`, and a face boundary keeps only the facets with the same lcm.

use std::collections::{BTreeMap, HashMap};

use crate::closure::{closure_extremal, closure_of_power};
use crate::error::{Error, Result};
use crate::extremal::extremal_power_gens;
use crate::ideal::MonomialIdeal;
use crate::linalg::rank;
use crate::monomial::Monomial;
use crate::psi::PsiMap;
use crate::symbolic::{symbolic2_general, symbolic_power, SymbolicContext};

/// Largest generator count accepted by [`taylor_betti`].
pub const MAX_TAYLOR_GENERATORS: usize = 12;

/// Largest generator count accepted by [`lcm_lattice_betti`].
pub const MAX_LATTICE_GENERATORS: usize = 6;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, m: &Monomial) -> u64 {
        self.entries.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    /// Nonzero entries, ordered by homological index then multidegree.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> + '_ {
        self.entries.iter().map(|((i, m), &b)| (*i, m, b))
    }

    /// Total Betti numbers `β_0, β_1, ...` up to the last nonzero one.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for ((i, _), &b) in &self.entries {
            if out.len() <= *i {
                out.resize(i + 1, 0);
            }
            out[*i] += b;
        }
        out
    }

    pub fn total(&self, i: usize) -> u64 {
        self.totals().get(i).copied().unwrap_or(0)
    }

    fn insert(&mut self, i: usize, m: Monomial, b: u64) {
        if b > 0 {
            *self.entries.entry((i, m)).or_insert(0) += b;
        }
    }
}

fn check_ideal(j: &MonomialIdeal, cap: usize) -> Result<()> {
    if j.is_zero() {
        return Err(Error::InvalidParameter("the zero ideal has no resolution".into()));
    }
    if j.len() > cap {
        return Err(Error::LimitExceeded(format!(
            "{} generators; Betti tables are limited to {cap}",
            j.len()
        )));
    }
    Ok(())
}

/// Multigraded Betti numbers of `J` from the Taylor complex.
pub fn taylor_betti(j: &MonomialIdeal) -> Result<BettiTable> {
    check_ideal(j, MAX_TAYLOR_GENERATORS)?;
    let gens = j.generators();
    let g = gens.len();
    let faces = 1usize << g;
    // lcm of every face, built from the face minus its lowest bit
    let mut lcms: Vec<Option<Monomial>> = vec![None; faces];
    for f in 1..faces {
        let low = f.trailing_zeros() as usize;
        let rest = f & (f - 1);
        lcms[f] = Some(match &lcms[rest] {
            None => gens[low].clone(),
            Some(l) => l.lcm(&gens[low])?,
        });
    }
    let mut by_degree: HashMap<&Monomial, Vec<usize>> = HashMap::new();
    for f in 1..faces {
        by_degree.entry(lcms[f].as_ref().unwrap()).or_default().push(f);
    }
    let mut table = BettiTable::default();
    for (m, group) in by_degree {
        for (i, b) in face_homology(&group, g).into_iter().enumerate() {
            table.insert(i, m.clone(), b);
        }
    }
    Ok(table)
}

/// Homology ranks of the chain complex on `faces` (all sharing one lcm),
/// indexed by face size minus one.
fn face_homology(faces: &[usize], g: usize) -> Vec<u64> {
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); g + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    // rank of the boundary from size k to size k - 1
    let boundary_rank = |k: usize| -> usize {
        if k < 2 || by_size[k].is_empty() || by_size[k - 1].is_empty() {
            return 0;
        }
        let index: HashMap<usize, usize> =
            by_size[k - 1].iter().enumerate().map(|(p, &f)| (f, p)).collect();
        let rows: Vec<Vec<i64>> = by_size[k]
            .iter()
            .map(|&f| {
                let mut row = vec![0i64; by_size[k - 1].len()];
                let mut sign = 1;
                for bit in 0..g {
                    if f & (1 << bit) != 0 {
                        if let Some(&p) = index.get(&(f & !(1 << bit))) {
                            row[p] = sign;
                        }
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        rank(&rows)
    };
    let ranks: Vec<usize> = (0..=g + 1).map(|k| if k <= g { boundary_rank(k) } else { 0 }).collect();
    let mut out: Vec<u64> = (1..=g)
        .map(|k| (by_size[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Multigraded Betti numbers from the lcm lattice: `β_{i,m}(J)` is the rank
/// of the reduced homology in degree `i - 1` of the order complex of the open
/// interval below `m`. Independent of the Taylor computation; meant for small
/// generator counts.
pub fn lcm_lattice_betti(j: &MonomialIdeal) -> Result<BettiTable> {
    check_ideal(j, MAX_LATTICE_GENERATORS)?;
    let gens = j.generators();
    let mut lattice: Vec<Monomial> = Vec::new();
    for f in 1usize..(1 << gens.len()) {
        let mut l: Option<Monomial> = None;
        for (k, g) in gens.iter().enumerate() {
            if f & (1 << k) != 0 {
                l = Some(match l {
                    None => g.clone(),
                    Some(l) => l.lcm(g)?,
                });
            }
        }
        lattice.push(l.unwrap());
    }
    lattice.sort();
    lattice.dedup();
    let n = lattice.len();
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            below[a][b] = a != b && lattice[a].divides(&lattice[b])?;
        }
    }
    let mut table = BettiTable::default();
    for top in 0..n {
        let interval: Vec<usize> = (0..n).filter(|&a| below[a][top]).collect();
        let chains = chains_of(&interval, &below);
        for (dim, h) in reduced_homology(&chains).into_iter().enumerate() {
            // reduced homology starts in degree -1
            table.insert(dim, lattice[top].clone(), h);
        }
    }
    Ok(table)
}

/// All chains of the poset restricted to `elements`, grouped by length, with
/// the empty chain at index 0.
fn chains_of(elements: &[usize], below: &[Vec<bool>]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for &e in elements {
                if c.last().is_none_or(|&l| below[l][e]) {
                    let mut d = c.clone();
                    d.push(e);
                    next.push(d);
                }
            }
        }
        if !next.is_empty() {
            out.push(next.clone());
        }
        frontier = next;
    }
    out
}

/// Reduced homology ranks of a simplicial complex given by its faces grouped
/// by vertex count (index 0 is the empty face).
fn reduced_homology(faces: &[Vec<Vec<usize>>]) -> Vec<u64> {
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k >= faces.len() {
            return 0;
        }
        let index: HashMap<&[usize], usize> = faces[k - 1]
            .iter()
            .enumerate()
            .map(|(p, f)| (f.as_slice(), p))
            .collect();
        let rows: Vec<Vec<i64>> = faces[k]
            .iter()
            .map(|f| {
                let mut row = vec![0i64; faces[k - 1].len()];
                for drop in 0..f.len() {
                    let facet: Vec<usize> =
                        f.iter().enumerate().filter(|&(p, _)| p != drop).map(|(_, &v)| v).collect();
                    row[index[facet.as_slice()]] = if drop % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        rank(&rows)
    };
    let ranks: Vec<usize> = (0..=faces.len()).map(boundary_rank).collect();
    let mut out: Vec<u64> = (0..faces.len())
        .map(|k| (faces[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    /// `I^r` against `E_q^r`
    Ordinary,
    /// `closure(I^r)` against `closure(E_q^r)`
    Closure,
    /// `I^(r)` against `E_q^(r)`
    Symbolic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiComparison {
    pub kind: PowerKind,
    pub r: u32,
    /// Total Betti numbers of the power of `I`.
    pub image: Vec<u64>,
    /// Total Betti numbers of the matching power of `E_q`.
    pub extremal: Vec<u64>,
    /// `β_i(image) <= β_i(extremal)` for every `i`.
    pub holds: bool,
}

/// The power of `I` of the given kind together with its extremal counterpart.
pub fn power_pair(i: &MonomialIdeal, r: u32, kind: PowerKind) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let map = PsiMap::from_ideal(i)?;
    let q = map.q();
    Ok(match kind {
        PowerKind::Ordinary => (i.power(r)?, extremal_power_gens(q, r)?),
        PowerKind::Closure => (closure_of_power(i, r)?, closure_extremal(q, r)?),
        PowerKind::Symbolic if r == 2 => (
            symbolic2_general(i)?,
            crate::extremal::omega2(q)?,
        ),
        PowerKind::Symbolic => (
            symbolic_power(i, r)?,
            SymbolicContext::extremal(q)?.power(r)?,
        ),
    })
}

/// Compares total Betti numbers of a power of the square-free ideal `I`
/// with those of the same power of `E_q`.
pub fn betti_compare(i: &MonomialIdeal, r: u32, kind: PowerKind) -> Result<BettiComparison> {
    let (small, big) = power_pair(i, r, kind)?;
    let image = taylor_betti(&small)?.totals();
    let extremal = taylor_betti(&big)?.totals();
    let holds = image
        .iter()
        .enumerate()
        .all(|(k, &b)| b <= extremal.get(k).copied().unwrap_or(0));
    Ok(BettiComparison {
        kind,
        r,
        image,
        extremal,
        holds,
    })
}

/// The multigraded refinement: every `β_{i,m}` of `ψ(𝒥)` is bounded by the
/// sum of `β_{i,u}(𝒥)` over the multidegrees `u` with `ψ(u) = m`. Returns
/// the first violating `(i, m)`, if any.
pub fn fiber_bound_violation(
    map: &PsiMap,
    extremal: &MonomialIdeal,
) -> Result<Option<(usize, Monomial)>> {
    let image = map.apply_ideal(extremal)?;
    let small = taylor_betti(&image)?;
    let big = taylor_betti(extremal)?;
    let mut fibers: HashMap<(usize, Monomial), u64> = HashMap::new();
    for (i, u, b) in big.entries() {
        *fibers.entry((i, map.apply(u)?)).or_insert(0) += b;
    }
    for (i, m, b) in small.entries() {
        if b > fibers.get(&(i, m.clone())).copied().unwrap_or(0) {
            return Ok(Some((i, m.clone())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::ExtremalRing;
    use crate::monomial::Ring;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        let ring = Ring::standard(n);
        let gens = gens.iter().map(|e| ring.monomial(e.to_vec()).unwrap()).collect();
        MonomialIdeal::new(ring, gens).unwrap()
    }

    #[test]
    fn principal_ideal() {
        let j = ideal(2, &[&[2, 1]]);
        let t = taylor_betti(&j).unwrap();
        assert_eq!(t.totals(), vec![1]);
        assert_eq!(t.get(0, &j.generators()[0]), 1);
    }

    #[test]
    fn extremal_two_has_one_syzygy() {
        let t = ExtremalRing::new(2).unwrap();
        let e2 = t.ideal();
        let table = taylor_betti(&e2).unwrap();
        assert_eq!(table.totals(), vec![2, 1]);
        let top = t.epsilon(1).unwrap().lcm(&t.epsilon(2).unwrap()).unwrap();
        assert_eq!(table.get(1, &top), 1);
    }

    #[test]
    fn triangle() {
        let j = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(taylor_betti(&j).unwrap().totals(), vec![3, 2]);
        assert_eq!(lcm_lattice_betti(&j).unwrap(), taylor_betti(&j).unwrap());
    }

    #[test]
    fn variables_give_koszul_numbers() {
        let j = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(taylor_betti(&j).unwrap().totals(), vec![3, 3, 1]);
        assert_eq!(lcm_lattice_betti(&j).unwrap().totals(), vec![3, 3, 1]);
    }

    #[test]
    fn identity_map_gives_equality() {
        let e3 = ExtremalRing::new(3).unwrap().ideal();
        for kind in [PowerKind::Ordinary, PowerKind::Closure, PowerKind::Symbolic] {
            let c = betti_compare(&e3, 2, kind).unwrap();
            assert!(c.holds);
            assert_eq!(c.image, c.extremal);
        }
    }

    #[test]
    fn caps_are_enforced() {
        let e4 = ExtremalRing::new(4).unwrap();
        let e43 = extremal_power_gens(4, 3).unwrap();
        assert!(matches!(taylor_betti(&e43), Err(Error::LimitExceeded(_))));
        assert!(matches!(
            lcm_lattice_betti(&e4.ideal().power(2).unwrap()),
            Err(Error::LimitExceeded(_))
        ));
        assert!(taylor_betti(&MonomialIdeal::zero(Ring::standard(1))).is_err());
    }
}
