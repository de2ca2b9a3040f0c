//! Minimal primes, symbolic powers and containment checks for square-free
//! monomial ideals.
//!
//! The minimal primes of a square-free ideal are generated by the minimal
//! vertex covers of its generator supports; `I^(r)` is the intersection of
//! their `r`-th powers, so `x^b ∈ I^(r)` iff `b` has degree at least `r` on
//! every minimal prime.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::closure::in_closure_of_power;
use crate::error::{Error, Result};
use crate::extremal::{check_q, f_x_in, omega2, ExtremalRing, SubsetMask};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::monomial::{divides_exps, Monomial, Ring, RingId};
use crate::psi::PsiMap;

/// A prime generated by variables, stored as sorted variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    ring: RingId,
    vars: Vec<usize>,
}

impl PrimeIdeal {
    pub fn new(ring: &Ring, mut vars: Vec<usize>) -> Result<PrimeIdeal> {
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() {
            return Err(Error::InvalidParameter("a prime needs a variable".into()));
        }
        if vars.iter().any(|&v| v >= ring.dim()) {
            return Err(Error::Malformed("prime variable out of range".into()));
        }
        Ok(PrimeIdeal {
            ring: ring.id(),
            vars,
        })
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn variables(&self) -> &[usize] {
        &self.vars
    }

    /// Total degree of `m` in the variables of the prime.
    pub fn degree_of(&self, m: &Monomial) -> u64 {
        self.vars.iter().map(|&v| u64::from(m.exponent(v))).sum()
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> Result<MonomialIdeal> {
        if ring.id() != self.ring {
            return Err(Error::RingMismatch);
        }
        let gens = self.vars.iter().map(|&v| ring.var(v)).collect();
        Ok(MonomialIdeal::from_minimal_unchecked(ring.clone(), gens))
    }
}

/// A minimal set cover of `[q]`: the union is `[q]` and no member can be
/// dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalCover {
    sets: Vec<SubsetMask>,
}

impl MinimalCover {
    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    /// The minimal prime `(y_A : A ∈ C)` of `E_q`.
    pub fn prime(&self, ring: &ExtremalRing) -> PrimeIdeal {
        let vars = self.sets.iter().map(|&s| ring.position(s)).collect();
        PrimeIdeal::new(ring.ring(), vars).expect("covers are nonempty")
    }
}

fn check_square_free(i: &MonomialIdeal) -> Result<()> {
    if i.is_zero() || i.is_unit() {
        return Err(Error::InvalidParameter(
            "symbolic powers need a proper nonzero ideal".into(),
        ));
    }
    if !i.is_square_free() {
        return Err(Error::NotSquareFree(
            "symbolic powers are computed for square-free ideals".into(),
        ));
    }
    Ok(())
}

/// Bit set over variable indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn meets(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// All inclusion-minimal vertex covers of the generator supports, in
/// order of size and then lexicographically.
pub fn minimal_primes(i: &MonomialIdeal) -> Result<Vec<PrimeIdeal>> {
    check_square_free(i)?;
    let n = i.ring().dim();
    let edges: Vec<(Bits, Vec<usize>)> = i
        .generators()
        .iter()
        .map(|g| {
            let mut b = Bits::new(n);
            let vars: Vec<usize> = g.support().collect();
            for &v in &vars {
                b.set(v);
            }
            (b, vars)
        })
        .collect();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    let mut bits = Bits::new(n);
    hitting_sets(&edges, &mut chosen, &mut bits, &mut found);
    let mut primes: Vec<PrimeIdeal> = found
        .into_iter()
        .map(|vars| PrimeIdeal {
            ring: i.ring().id(),
            vars,
        })
        .collect();
    primes.sort_by(|a, b| a.vars.len().cmp(&b.vars.len()).then_with(|| a.vars.cmp(&b.vars)));
    Ok(primes)
}

/// Branches on the variables of the first edge not yet hit. A branch dies as
/// soon as some chosen variable becomes redundant, since adding variables
/// never makes it necessary again.
fn hitting_sets(
    edges: &[(Bits, Vec<usize>)],
    chosen: &mut Vec<usize>,
    bits: &mut Bits,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let redundant = |v: usize, bits: &Bits| {
        edges.iter().all(|(e, vars)| {
            !e.get(v) || vars.iter().any(|&w| w != v && bits.get(w))
        })
    };
    if chosen.iter().any(|&v| redundant(v, bits)) {
        return;
    }
    let Some((_, vars)) = edges.iter().find(|(e, _)| !e.meets(bits)) else {
        let mut c = chosen.clone();
        c.sort_unstable();
        found.insert(c);
        return;
    };
    for &v in vars {
        chosen.push(v);
        bits.set(v);
        hitting_sets(edges, chosen, bits, found);
        bits.clear(v);
        chosen.pop();
    }
}

/// Largest `q` accepted by [`minimal_set_covers`].
pub const MAX_COVER_Q: usize = 6;

/// All minimal set covers of `[q]`, in canonical order.
pub fn minimal_set_covers(q: usize) -> Result<Vec<MinimalCover>> {
    check_q(q)?;
    if q > MAX_COVER_Q {
        return Err(Error::LimitExceeded(format!(
            "minimal set covers are enumerated for q <= {MAX_COVER_Q}"
        )));
    }
    let full = (1u32 << q) - 1;
    let mut found = BTreeSet::new();
    covers(full, &mut Vec::new(), 0, &mut found);
    let mut out: Vec<MinimalCover> = found
        .into_iter()
        .map(|bits: Vec<u32>| {
            let mut sets: Vec<SubsetMask> = bits
                .into_iter()
                .map(|b| SubsetMask::new(q, b).expect("nonempty"))
                .collect();
            sets.sort();
            MinimalCover { sets }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Picks the smallest uncovered element and branches on the sets containing
/// it; every chosen set must keep an element no other chosen set covers.
fn covers(full: u32, chosen: &mut Vec<u32>, covered: u32, found: &mut BTreeSet<Vec<u32>>) {
    let private = |i: usize, chosen: &[u32]| {
        let others = chosen
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0, |acc, (_, &s)| acc | s);
        chosen[i] & !others != 0
    };
    if (0..chosen.len()).any(|i| !private(i, chosen)) {
        return;
    }
    if covered == full {
        let mut c = chosen.clone();
        c.sort_unstable();
        found.insert(c);
        return;
    }
    let e = (!covered & full).trailing_zeros();
    for s in 1..=full {
        if s & (1 << e) != 0 {
            chosen.push(s);
            covers(full, chosen, covered | s, found);
            chosen.pop();
        }
    }
}

/// `I` together with its minimal primes, for repeated membership tests.
#[derive(Debug, Clone)]
pub struct SymbolicContext {
    ideal: MonomialIdeal,
    primes: Vec<PrimeIdeal>,
}

impl SymbolicContext {
    pub fn new(i: &MonomialIdeal) -> Result<SymbolicContext> {
        let primes = minimal_primes(i)?;
        Ok(SymbolicContext {
            ideal: i.clone(),
            primes,
        })
    }

    /// For `E_q` the primes come straight from the minimal set covers.
    pub fn extremal(q: usize) -> Result<SymbolicContext> {
        let ring = ExtremalRing::new(q)?;
        let mut primes: Vec<PrimeIdeal> = minimal_set_covers(q)?
            .iter()
            .map(|c| c.prime(&ring))
            .collect();
        primes.sort_by(|a, b| a.vars.len().cmp(&b.vars.len()).then_with(|| a.vars.cmp(&b.vars)));
        Ok(SymbolicContext {
            ideal: ring.ideal(),
            primes,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn contains(&self, r: u32, m: &Monomial) -> Result<bool> {
        if m.ring() != self.ideal.ring().id() {
            return Err(Error::RingMismatch);
        }
        Ok(self.primes.iter().all(|p| p.degree_of(m) >= u64::from(r)))
    }

    pub fn power(&self, r: u32) -> Result<MonomialIdeal> {
        self.power_with(r, &Limits::default())
    }

    /// `∩ P^r`, intersecting primes by increasing size. Each generator `g`
    /// of the running intersection that is short on `P` is replaced by the
    /// products `g·x^c` with `c` supported on `P` of the missing degree.
    pub fn power_with(&self, r: u32, limits: &Limits) -> Result<MonomialIdeal> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        let ring = self.ideal.ring().clone();
        let mut acc = vec![ring.one()];
        let mut pending: Vec<&PrimeIdeal> = self.primes.iter().collect();
        while !pending.is_empty() {
            limits.check_time()?;
            // next prime: the one producing the fewest new products
            let (best, _) = pending
                .iter()
                .enumerate()
                .map(|(k, p)| (k, expansion_count(&acc, p, r)))
                .min_by_key(|&(k, c)| (c, k))
                .expect("nonempty");
            let p = pending.remove(best);
            // generators already deep enough in `P` stay minimal: a new
            // product g·x^c dividing one of them would force g to divide it
            let mut kept = Vec::new();
            let mut fresh = Vec::new();
            for g in acc {
                let d = p.degree_of(&g);
                if d >= u64::from(r) {
                    kept.push(Keyed::new(g));
                    continue;
                }
                let missing = (u64::from(r) - d) as u32;
                let mut e = g.exponents().to_vec();
                spread(&p.vars, 0, missing, &mut e, &mut |e| {
                    fresh.push(Monomial::from_parts(ring.id(), e.to_vec()));
                });
                limits.check_generators(kept.len() + fresh.len(), "symbolic power")?;
            }
            fresh.sort_by(|a, b| a.canonical_cmp(b));
            fresh.dedup();
            for n in fresh {
                let n = Keyed::new(n);
                if !kept.iter().any(|k| k.divides(&n)) {
                    kept.push(n);
                }
            }
            acc = kept.into_iter().map(|k| k.m).collect();
        }
        Ok(MonomialIdeal::from_minimal_unchecked(ring, acc))
    }
}

/// Number of products `g·x^c` the expansion along `p` would create.
fn expansion_count(acc: &[Monomial], p: &PrimeIdeal, r: u32) -> u64 {
    let k = p.vars.len() as u64;
    acc.iter()
        .map(|g| {
            let d = p.degree_of(g);
            if d >= u64::from(r) {
                0
            } else {
                multichoose(k, u64::from(r) - d)
            }
        })
        .fold(0u64, u64::saturating_add)
}

/// Number of ways to place `m` units on `k` variables.
fn multichoose(k: u64, m: u64) -> u64 {
    (1..k).fold(1u64, |acc, i| acc.saturating_mul(m + i) / i)
}

/// A monomial with its support mask and degree cached for divisibility scans.
struct Keyed {
    mask: u128,
    degree: u64,
    m: Monomial,
}

impl Keyed {
    fn new(m: Monomial) -> Keyed {
        let mask = if m.exponents().len() <= 128 {
            m.support().fold(0u128, |acc, k| acc | (1 << k))
        } else {
            0
        };
        Keyed {
            mask,
            degree: m.degree(),
            m,
        }
    }

    fn divides(&self, other: &Keyed) -> bool {
        self.degree <= other.degree
            && self.mask & !other.mask == 0
            && divides_exps(self.m.exponents(), other.m.exponents())
    }
}

/// Calls `f` on `e` plus every distribution of `k` extra units over `vars[i..]`.
fn spread(vars: &[usize], i: usize, k: u32, e: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if k == 0 {
        f(e);
        return;
    }
    if i == vars.len() {
        return;
    }
    if i + 1 == vars.len() {
        e[vars[i]] += k;
        f(e);
        e[vars[i]] -= k;
        return;
    }
    for t in (0..=k).rev() {
        e[vars[i]] += t;
        spread(vars, i + 1, k - t, e, f);
        e[vars[i]] -= t;
    }
}

pub fn symbolic_power(i: &MonomialIdeal, r: u32) -> Result<MonomialIdeal> {
    SymbolicContext::new(i)?.power(r)
}

pub fn in_symbolic(i: &MonomialIdeal, r: u32, m: &Monomial) -> Result<bool> {
    SymbolicContext::new(i)?.contains(r, m)
}

/// `E_q^(2)`, minimally generated by `Ω_q^2`.
pub fn symbolic2_extremal(q: usize) -> Result<MonomialIdeal> {
    omega2(q)
}

/// `I^(2)` as the ideal generated by the images `ψ_I(f_X)`.
pub fn symbolic2_general(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    check_square_free(i)?;
    let map = PsiMap::from_ideal(i)?;
    let ring = map.target();
    let gens = ring
        .subsets()
        .iter()
        .map(|&x| map.apply(&f_x_in(ring, x)))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(i.ring().clone(), gens)
}

/// Number of minimal generators of `I^(r)` outside `I^r`. At `r = 2` the
/// generators come from the `Ω_q^2` images and only membership in `I^2` is
/// tested.
pub fn sdefect(i: &MonomialIdeal, r: u32) -> Result<usize> {
    check_square_free(i)?;
    let symbolic = if r == 2 {
        symbolic2_general(i)?
    } else {
        symbolic_power(i, r)?
    };
    let power = i.power(r)?;
    Ok(symbolic.generators_outside(&power)?.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainmentMode {
    /// `I^(s) ⊆ I^r`
    Ordinary,
    /// `I^(s) ⊆ closure(I^r)`, decided per generator without forming the closure
    Closure,
}

/// Decides `I^(s) ⊆ I^r` or `I^(s) ⊆ closure(I^r)`.
pub fn containment(i: &MonomialIdeal, s: u32, r: u32, mode: ContainmentMode) -> Result<bool> {
    containment_in(&SymbolicContext::new(i)?, s, r, mode)
}

pub fn containment_in(
    ctx: &SymbolicContext,
    s: u32,
    r: u32,
    mode: ContainmentMode,
) -> Result<bool> {
    let symbolic = ctx.power(s)?;
    let i = ctx.ideal();
    match mode {
        ContainmentMode::Ordinary => symbolic.is_subset_of(&i.power(r)?),
        ContainmentMode::Closure => {
            let failures = symbolic
                .generators()
                .par_iter()
                .map(|g| in_closure_of_power(i, r, g).map(|c| !c.member))
                .collect::<Result<Vec<bool>>>()?;
            Ok(!failures.into_iter().any(|f| f))
        }
    }
}

/// One `(s, r)` point of a containment grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub s: u32,
    pub r: u32,
    pub contained: bool,
}

/// Containment over `1 <= r <= r_max`, `r <= s <= s_max`. The largest
/// ratio `s / r` of a failing pair is a lower bound for the resurgence
/// (ordinary mode) or the asymptotic resurgence (closure mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResurgenceReport {
    pub points: Vec<GridPoint>,
}

impl ResurgenceReport {
    /// The failing pair with the largest `s / r`.
    pub fn max_violation(&self) -> Option<(u32, u32)> {
        self.points
            .iter()
            .filter(|p| !p.contained)
            .map(|p| (p.s, p.r))
            .max_by(|a, b| (u64::from(a.0) * u64::from(b.1)).cmp(&(u64::from(b.0) * u64::from(a.1))))
    }
}

pub fn resurgence_grid(
    i: &MonomialIdeal,
    s_max: u32,
    r_max: u32,
    mode: ContainmentMode,
) -> Result<ResurgenceReport> {
    let ctx = SymbolicContext::new(i)?;
    let mut points = Vec::new();
    let mut symbolic = Vec::new();
    for s in 1..=s_max {
        symbolic.push(ctx.power(s)?);
    }
    let mut power = i.clone();
    for r in 1..=r_max {
        if r > 1 {
            power = power.product(i)?;
        }
        for s in r..=s_max {
            let sym = &symbolic[(s - 1) as usize];
            let contained = match mode {
                ContainmentMode::Ordinary => sym.is_subset_of(&power)?,
                ContainmentMode::Closure => {
                    let mut ok = true;
                    for g in sym.generators() {
                        if !in_closure_of_power(i, r, g)?.member {
                            ok = false;
                            break;
                        }
                    }
                    ok
                }
            };
            points.push(GridPoint { s, r, contained });
        }
    }
    Ok(ResurgenceReport { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{extremal_ideal, extremal_power_gens, h_test};

    fn sq(ring: &Arc<Ring>, vars: &[usize]) -> Monomial {
        let mut e = vec![0; ring.dim()];
        for &v in vars {
            e[v - 1] += 1;
        }
        ring.monomial(e).unwrap()
    }

    fn triangle() -> MonomialIdeal {
        let r = Ring::standard(3);
        MonomialIdeal::new(r.clone(), vec![sq(&r, &[1, 2]), sq(&r, &[1, 3]), sq(&r, &[2, 3])]).unwrap()
    }

    #[test]
    fn primes_of_small_ideals() {
        let t = triangle();
        let p: Vec<Vec<usize>> = minimal_primes(&t).unwrap().iter().map(|p| p.variables().to_vec()).collect();
        assert_eq!(p, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let e2 = extremal_ideal(2).unwrap();
        let p: Vec<Vec<usize>> = minimal_primes(&e2).unwrap().iter().map(|p| p.variables().to_vec()).collect();
        // y_1, y_2, y_12 sit at positions 0, 1, 2
        assert_eq!(p, vec![vec![2], vec![0, 1]]);
    }

    #[test]
    fn cover_counts() {
        let counts: Vec<usize> = (1..=4).map(|q| minimal_set_covers(q).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 8, 49]);
        assert!(minimal_set_covers(7).is_err());
    }

    #[test]
    fn triangle_symbolic_square() {
        let t = triangle();
        let r = t.ring().clone();
        let s2 = symbolic_power(&t, 2).unwrap();
        let expected = t.power(2).unwrap().sum(&MonomialIdeal::new(r.clone(), vec![sq(&r, &[1, 2, 3])]).unwrap()).unwrap();
        assert_eq!(s2, expected);
        assert_eq!(symbolic2_general(&t).unwrap(), expected);
        assert_eq!(sdefect(&t, 2).unwrap(), 1);
        assert!(in_symbolic(&t, 2, &sq(&r, &[1, 2, 3])).unwrap());
        assert_eq!(symbolic_power(&t, 1).unwrap(), t);
    }

    #[test]
    fn e3_symbolic_square() {
        let e3 = extremal_ideal(3).unwrap();
        let s2 = symbolic_power(&e3, 2).unwrap();
        let h = h_test(2, 3).unwrap();
        let expected = extremal_power_gens(3, 2)
            .unwrap()
            .sum(&MonomialIdeal::new(e3.ring().clone(), vec![h.clone()]).unwrap())
            .unwrap();
        assert_eq!(s2, expected);
        assert_eq!(symbolic2_extremal(3).unwrap(), s2);
        assert!(!containment(&e3, 2, 2, ContainmentMode::Ordinary).unwrap());
        assert!(containment(&e3, 1, 1, ContainmentMode::Closure).unwrap());
    }

    #[test]
    fn extremal_context_matches_hitting_sets() {
        for q in 1..=3 {
            let a = SymbolicContext::extremal(q).unwrap();
            let b = SymbolicContext::new(&extremal_ideal(q).unwrap()).unwrap();
            assert_eq!(a.primes(), b.primes());
        }
    }
}
