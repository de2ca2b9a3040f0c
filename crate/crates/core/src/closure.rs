//! Integral closures of monomial ideals.
//!
//! `x^b` lies in the closure of `J = (x^{a_1}, ..., x^{a_s})` iff there are
//! rational `γ_j >= 0` with `Σ γ_j = 1` and `b >= Σ γ_j a_j`. For a power
//! `I^r` the same test reads `Σ λ_j = r` over the generators of `I`, and for
//! `E_q^r` it becomes `Σ α_i = r`, `b_A >= Σ_{i ∈ A} α_i`. Every decision is
//! an exact feasibility problem solved by [`crate::lp`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::extremal::{compositions, ExtremalExponent, ExtremalRing, SubsetMask};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::linalg::rank;
use crate::lp::{feasible, rat, FeasibilityProblem, Rational};
use crate::monomial::{divides_exps, Monomial};
use crate::psi::PsiMap;

/// Outcome of a closure membership test. A member comes with a rational
/// witness: `γ` over the generators of `J`, `λ` over the generators of `I`
/// for a power `I^r`, or `α` for the extremal form.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureCertificate {
    pub member: bool,
    pub witness: Option<Vec<Rational>>,
}

impl ClosureCertificate {
    fn yes(witness: Vec<Rational>) -> Self {
        ClosureCertificate {
            member: true,
            witness: Some(witness),
        }
    }

    fn no() -> Self {
        ClosureCertificate {
            member: false,
            witness: None,
        }
    }
}

/// `∃ λ >= 0, Σ λ = scale, Σ λ_j a_j <= b`.
fn newton_problem(gens: &[&[u32]], scale: u32, b: &[u32]) -> Result<FeasibilityProblem> {
    let mut p = FeasibilityProblem::new(gens.len())?;
    p.add_eq(vec![rat(1); gens.len()], rat(i64::from(scale)))?;
    for (k, &bk) in b.iter().enumerate() {
        let col: Vec<u32> = gens.iter().map(|g| g[k]).collect();
        // Σ λ_j a_jk <= scale * max_j a_jk, so small enough columns are slack.
        if u64::from(*col.iter().max().unwrap_or(&0)) * u64::from(scale) <= u64::from(bk) {
            continue;
        }
        p.add_le(col.iter().map(|&a| rat(i64::from(a))).collect(), rat(i64::from(bk)))?;
    }
    Ok(p)
}

fn newton_member(gens: &[&[u32]], scale: u32, b: &[u32]) -> Result<ClosureCertificate> {
    Ok(match feasible(&newton_problem(gens, scale, b)?)?.into_witness() {
        Some(w) => ClosureCertificate::yes(w),
        None => ClosureCertificate::no(),
    })
}

fn check_nonzero(j: &MonomialIdeal) -> Result<()> {
    if j.is_zero() {
        Err(Error::InvalidParameter(
            "the closure of the zero ideal is not modeled".into(),
        ))
    } else {
        Ok(())
    }
}

/// Is `m` in the integral closure of `J`?
pub fn in_closure(j: &MonomialIdeal, m: &Monomial) -> Result<ClosureCertificate> {
    check_nonzero(j)?;
    if m.ring() != j.ring().id() {
        return Err(Error::RingMismatch);
    }
    if let Some(pos) = j
        .generators()
        .iter()
        .position(|g| divides_exps(g.exponents(), m.exponents()))
    {
        let mut w = vec![rat(0); j.len()];
        w[pos] = rat(1);
        return Ok(ClosureCertificate::yes(w));
    }
    let gens: Vec<&[u32]> = j.generators().iter().map(Monomial::exponents).collect();
    newton_member(&gens, 1, m.exponents())
}

/// Is `m` in the integral closure of `I^r`? Decided over the generators of
/// `I` without forming the power.
pub fn in_closure_of_power(i: &MonomialIdeal, r: u32, m: &Monomial) -> Result<ClosureCertificate> {
    check_nonzero(i)?;
    check_power(r)?;
    if m.ring() != i.ring().id() {
        return Err(Error::RingMismatch);
    }
    let gens: Vec<&[u32]> = i.generators().iter().map(Monomial::exponents).collect();
    newton_member(&gens, r, m.exponents())
}

/// Is `y^b` in the integral closure of `E_q^r`? The witness is `α ∈ Q^q`.
pub fn in_closure_extremal(q: usize, r: u32, b: &ExtremalExponent) -> Result<ClosureCertificate> {
    check_power(r)?;
    if b.q() != q {
        return Err(Error::InvalidParameter(format!(
            "exponent lives over [{}], expected [{q}]",
            b.q()
        )));
    }
    let ring = ExtremalRing::new(q)?;
    extremal_member(&ring, r, b.values())
}

fn extremal_member(ring: &ExtremalRing, r: u32, b: &[u32]) -> Result<ClosureCertificate> {
    let q = ring.q();
    let mut p = FeasibilityProblem::new(q)?;
    p.add_eq(vec![rat(1); q], rat(i64::from(r)))?;
    let subsets = ring.subsets();
    for (&s, &bs) in subsets.iter().zip(b) {
        // α(A) <= α([q]) = r holds automatically, and α(A) <= α(B) <= b_B
        // makes the row of A redundant when some B ⊋ A has b_B <= b_A
        if bs >= r
            || subsets
                .iter()
                .zip(b)
                .any(|(&t, &bt)| t != s && s.is_subset_of(t) && bt <= bs)
        {
            continue;
        }
        let coeffs = (1..=q).map(|i| rat(i64::from(s.contains(i)))).collect();
        p.add_le(coeffs, rat(i64::from(bs)))?;
    }
    Ok(match feasible(&p)?.into_witness() {
        Some(w) => ClosureCertificate::yes(w),
        None => ClosureCertificate::no(),
    })
}

fn check_power(r: u32) -> Result<()> {
    if r == 0 {
        Err(Error::InvalidParameter("r must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Minimal generators of the integral closure of `J`.
pub fn closure(j: &MonomialIdeal) -> Result<MonomialIdeal> {
    closure_with(j, &Limits::default())
}

/// Box search: minimal closure generators have exponents bounded by the
/// componentwise maximum of the generators of `J`. Points are visited in
/// mixed-radix order, so every `b - e_k` is settled before `b`; a point with
/// a member predecessor is a member without an LP, and a branch whose
/// largest completion fails is skipped entirely.
pub fn closure_with(j: &MonomialIdeal, limits: &Limits) -> Result<MonomialIdeal> {
    check_nonzero(j)?;
    if j.is_unit() {
        return Ok(j.clone());
    }
    let top = j.max_exponents();
    let n = top.len();
    let mut size: u64 = 1;
    for &t in &top {
        size = size.saturating_mul(u64::from(t) + 1);
    }
    limits.check_candidates(size, "closure box")?;
    let mut stride = vec![1usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * (top[k + 1] as usize + 1);
    }
    // tail[k]: index offset of coordinates k.. all at their maxima
    let mut tail = vec![0usize; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] + top[k] as usize * stride[k];
    }
    let gens: Vec<&[u32]> = j.generators().iter().map(Monomial::exponents).collect();
    let mut search = BoxSearch {
        gens,
        top: &top,
        stride,
        tail,
        member: vec![false; size as usize],
        cache: HashMap::new(),
        found: Vec::new(),
        limits,
        j,
    };
    let mut b = top.clone();
    search.visit(0, 0, &mut b)?;
    let ring = j.ring().clone();
    let found = search
        .found
        .into_iter()
        .map(|e| ring.monomial(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonomialIdeal::from_minimal_unchecked(ring, found))
}

struct BoxSearch<'a> {
    gens: Vec<&'a [u32]>,
    top: &'a [u32],
    stride: Vec<usize>,
    tail: Vec<usize>,
    member: Vec<bool>,
    cache: HashMap<usize, bool>,
    found: Vec<Vec<u32>>,
    limits: &'a Limits,
    j: &'a MonomialIdeal,
}

impl BoxSearch<'_> {
    fn lp(&mut self, index: usize, b: &[u32]) -> Result<bool> {
        if let Some(&v) = self.cache.get(&index) {
            return Ok(v);
        }
        let v = self.j.contains_exps(b) || newton_member(&self.gens, 1, b)?.member;
        self.cache.insert(index, v);
        Ok(v)
    }

    /// Coordinates before `k` are fixed in `b`; the rest hold their maxima.
    fn visit(&mut self, k: usize, index: usize, b: &mut Vec<u32>) -> Result<()> {
        let n = self.top.len();
        if k == n {
            return self.leaf(index, b);
        }
        self.limits.check_time()?;
        // lowest value of b_k whose largest completion is a member
        let mut lo = None;
        for v in 0..=self.top[k] {
            b[k] = v;
            if self.lp(index + v as usize * self.stride[k] + self.tail[k + 1], b)? {
                lo = Some(v);
                break;
            }
        }
        if let Some(lo) = lo {
            for v in lo..=self.top[k] {
                b[k] = v;
                self.visit(k + 1, index + v as usize * self.stride[k], b)?;
                // restore the tail to its maxima for the next sibling
                b[k + 1..n].copy_from_slice(&self.top[k + 1..n]);
            }
        }
        b[k] = self.top[k];
        Ok(())
    }

    fn leaf(&mut self, index: usize, b: &[u32]) -> Result<()> {
        let inherited = (0..b.len()).any(|k| b[k] > 0 && self.member[index - self.stride[k]]);
        if inherited {
            self.member[index] = true;
            return Ok(());
        }
        if self.lp(index, b)? {
            self.member[index] = true;
            self.found.push(b.to_vec());
        }
        Ok(())
    }
}

/// Largest `r` accepted by [`closure_extremal`] for a given `q`.
pub fn closure_extremal_limit(q: usize) -> u32 {
    match q {
        0 => 0,
        1..=3 => 6,
        4 => 3,
        5 => 2,
        _ => 0,
    }
}

/// Minimal generators of the integral closure of `E_q^r`.
///
/// Candidates are exponents with `b_S <= b_T` for `S ⊆ T`, `b_A <= r` and
/// `b_[q] = r`; every minimal generator has this shape. They are assigned in
/// decreasing cardinality, so each subtree has a least completion (unassigned
/// coordinates 0) and a greatest one (each unassigned coordinate at the
/// minimum over its assigned supersets). A subtree whose greatest completion
/// fails is empty; one whose least completion is a member contributes at
/// most that point.
pub fn closure_extremal(q: usize, r: u32) -> Result<MonomialIdeal> {
    check_power(r)?;
    if q == 0 || r > closure_extremal_limit(q) {
        return Err(Error::LimitExceeded(format!(
            "closure_extremal supports q <= 3 with r <= 6, q = 4 with r <= 3 and q = 5 with r <= 2; got q = {q}, r = {r}"
        )));
    }
    let ring = ExtremalRing::new(q)?;
    let dim = ring.dim();
    // processing order: decreasing cardinality
    let order: Vec<usize> = (0..dim).rev().collect();
    let supersets: Vec<Vec<usize>> = (0..dim)
        .map(|p| {
            let s = ring.subset_at(p);
            (0..dim)
                .filter(|&t| t != p && s.is_subset_of(ring.subset_at(t)))
                .collect()
        })
        .collect();
    let power_gens: Vec<Vec<u32>> = compositions(q, r)
        .iter()
        .map(|a| ring.subsets().iter().map(|&s| a.weight(s)).collect())
        .collect();
    let mut search = ExtremalSearch {
        ring: &ring,
        r,
        order,
        supersets,
        power_gens,
        candidates: Vec::new(),
        symmetry: Symmetry::new(&ring),
        memo: HashMap::new(),
    };
    let mut b = vec![0u32; dim];
    let mut assigned = vec![false; dim];
    search.node(0, &mut b, &mut assigned, false, false)?;
    let ExtremalSearch { candidates, .. } = search;
    // every candidate is a member and every minimal generator is a
    // candidate, so the minimal candidates are exactly the minimal generators
    let gens = candidates
        .into_iter()
        .map(|c| ring.ring().monomial(c))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(ring.ring().clone(), gens)
}

struct ExtremalSearch<'a> {
    ring: &'a ExtremalRing,
    r: u32,
    order: Vec<usize>,
    supersets: Vec<Vec<usize>>,
    power_gens: Vec<Vec<u32>>,
    candidates: Vec<Vec<u32>>,
    symmetry: Symmetry,
    memo: HashMap<Vec<u8>, bool>,
}

/// The action of the symmetric group on the coordinates of `S_[q]`.
struct Symmetry {
    /// per permutation `σ`: `inverse[k]` is the position sent to `k`
    inverses: Vec<Vec<usize>>,
}

impl Symmetry {
    fn new(ring: &ExtremalRing) -> Symmetry {
        let q = ring.q();
        let mut perms = Vec::new();
        permutations(&mut (0..q).collect(), 0, &mut perms);
        let inverses = perms
            .iter()
            .map(|sigma| {
                let mut inv = vec![0; ring.dim()];
                for (p, &s) in ring.subsets().iter().enumerate() {
                    let bits = (0..q)
                        .filter(|&i| s.bits() & (1 << i) != 0)
                        .fold(0u32, |acc, i| acc | (1 << sigma[i]));
                    let image = SubsetMask::new(q, bits).expect("nonempty");
                    inv[ring.position(image)] = p;
                }
                inv
            })
            .collect();
        Symmetry { inverses }
    }

    /// Lexicographically least image of `b` over the group.
    fn canonical(&self, b: &[u32]) -> Vec<u8> {
        let mut best = &self.inverses[0];
        for inv in &self.inverses[1..] {
            for (x, y) in inv.iter().zip(best.iter()) {
                match b[*x].cmp(&b[*y]) {
                    std::cmp::Ordering::Less => {
                        best = inv;
                        break;
                    }
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        best.iter().map(|&p| b[p] as u8).collect()
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

impl ExtremalSearch<'_> {
    fn member(&mut self, b: &[u32]) -> Result<bool> {
        if self.power_gens.iter().any(|g| divides_exps(g, b)) {
            return Ok(true);
        }
        // membership is invariant under permutations of [q]
        let key = self.symmetry.canonical(b);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = extremal_member(self.ring, self.r, b)?.member;
        self.memo.insert(key, v);
        Ok(v)
    }

    fn upper(&self, p: usize, b: &[u32], assigned: &[bool]) -> u32 {
        self.supersets[p]
            .iter()
            .filter(|&&t| assigned[t])
            .map(|&t| b[t])
            .min()
            .unwrap_or(self.r)
    }

    fn least(&self, b: &[u32], assigned: &[bool]) -> Vec<u32> {
        b.iter()
            .zip(assigned)
            .map(|(&v, &a)| if a { v } else { 0 })
            .collect()
    }

    fn greatest(&self, b: &[u32], assigned: &[bool]) -> Vec<u32> {
        let mut u = b.to_vec();
        for &p in &self.order {
            if !assigned[p] {
                u[p] = self.upper(p, &u, assigned);
            }
        }
        u
    }

    /// Keeps `candidates` an antichain of members.
    fn record(&mut self, c: Vec<u32>) {
        self.candidates.retain(|d| !divides_exps(&c, d));
        self.candidates.push(c);
    }

    /// `least_known`: the least completion is already known to fail.
    /// `greatest_known`: the greatest completion is already known to pass.
    fn node(
        &mut self,
        t: usize,
        b: &mut Vec<u32>,
        assigned: &mut Vec<bool>,
        least_known: bool,
        greatest_known: bool,
    ) -> Result<()> {
        let dim = self.order.len();
        let l = self.least(b, assigned);
        // everything below is a multiple of the least completion
        if self.candidates.iter().any(|c| divides_exps(c, &l)) {
            return Ok(());
        }
        if !least_known && self.member(&l)? {
            self.record(l);
            return Ok(());
        }
        if t == dim {
            return Ok(());
        }
        if !greatest_known && !self.member(&self.greatest(b, assigned))? {
            return Ok(());
        }
        let p = self.order[t];
        let full = p == dim - 1;
        let hi = if full { self.r } else { self.upper(p, b, assigned) };
        let lo = if full { self.r } else { 0 };
        assigned[p] = true;
        for v in lo..=hi {
            b[p] = v;
            self.node(t + 1, b, assigned, v == 0, v == hi)?;
        }
        assigned[p] = false;
        b[p] = 0;
        Ok(())
    }
}

/// Integral closure of `I^r`. For a square-free `I` whose generator count is
/// within the extremal limits, this is `ψ_I` of the closure of `E_q^r`;
/// otherwise the box search runs on `I^r` directly.
pub fn closure_of_power(i: &MonomialIdeal, r: u32) -> Result<MonomialIdeal> {
    check_nonzero(i)?;
    check_power(r)?;
    if i.is_square_free() && !i.is_unit() && r <= closure_extremal_limit(i.len()) {
        let map = PsiMap::from_ideal(i)?;
        return map.apply_ideal(&closure_extremal(i.len(), r)?);
    }
    closure(&i.power(r)?)
}

/// Analytic spread of an ideal generated in a single degree: the rank of the
/// generator exponent matrix (for square-free generators, the 0/1 incidence
/// matrix).
pub fn analytic_spread(j: &MonomialIdeal) -> Result<usize> {
    check_nonzero(j)?;
    let d = j.generators()[0].degree();
    if j.generators().iter().any(|g| g.degree() != d) {
        return Err(Error::UnequalDegrees);
    }
    let rows: Vec<Vec<i64>> = j
        .generators()
        .iter()
        .map(|g| g.exponents().iter().map(|&e| i64::from(e)).collect())
        .collect();
    Ok(rank(&rows))
}

/// Upper bound for the analytic spread used by the normality test: the exact
/// rank when all generators share a degree, otherwise `min(μ(J), dim R)`.
pub fn spread_bound(j: &MonomialIdeal) -> Result<usize> {
    match analytic_spread(j) {
        Ok(l) => Ok(l),
        Err(Error::UnequalDegrees) => Ok(j.len().min(j.ring().dim())),
        Err(e) => Err(e),
    }
}

/// Normality of a square-free ideal: `closure(J^r) = J^r` for
/// `2 <= r <= ℓ(J) - 1`.
pub fn is_normal(j: &MonomialIdeal) -> Result<bool> {
    check_square_free(j)?;
    let l = spread_bound(j)? as u32;
    for r in 2..l {
        if integral_defect(j, r)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_square_free(j: &MonomialIdeal) -> Result<()> {
    check_nonzero(j)?;
    if !j.is_square_free() {
        return Err(Error::NotSquareFree(
            "normality test needs square-free generators".into(),
        ));
    }
    Ok(())
}

/// Number of minimal generators of `closure(J^r)` outside `J^r`.
pub fn integral_defect(j: &MonomialIdeal, r: u32) -> Result<usize> {
    let power = j.power(r)?;
    Ok(closure_of_power(j, r)?.generators_outside(&power)?.len())
}

/// One oriented pairing check `gcd(m_a, m_b) | lcm(m_c, m_d)` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingCheck {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q4Report {
    pub checks: Vec<PairingCheck>,
    /// Pairs `{i, j}` (1-based) with `ψ_I(y_ij) = 1`.
    pub trivial_pairs: Vec<(usize, usize)>,
    pub normal: bool,
}

/// The four-generator normality criterion: `I` is normal iff
/// `gcd(m_a, m_b) | lcm(m_c, m_d)` for some `{a, b, c, d} = {1, 2, 3, 4}`.
pub fn q4_normality(i: &MonomialIdeal) -> Result<Q4Report> {
    check_square_free(i)?;
    if i.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "the four-generator criterion needs exactly 4 generators, got {}",
            i.len()
        )));
    }
    let m = i.generators();
    let mut checks = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let (c, d) = match (a, b) {
            (0, 1) => (2, 3),
            (0, 2) => (1, 3),
            (0, 3) => (1, 2),
            (1, 2) => (0, 3),
            (1, 3) => (0, 2),
            _ => (0, 1),
        };
        let holds = m[a].gcd(&m[b])?.divides(&m[c].lcm(&m[d])?)?;
        checks.push(PairingCheck {
            a: a + 1,
            b: b + 1,
            c: c + 1,
            d: d + 1,
            holds,
        });
    }
    let map = PsiMap::from_ideal(i)?;
    let mut trivial_pairs = Vec::new();
    for x in 1..=4 {
        for y in (x + 1)..=4 {
            let s = SubsetMask::from_elements(4, &[x, y])?;
            if map.theta(s).is_empty() {
                trivial_pairs.push((x, y));
            }
        }
    }
    let normal = checks.iter().any(|c| c.holds);
    Ok(Q4Report {
        checks,
        trivial_pairs,
        normal,
    })
}

/// Evidence for the low-power normality question on one ideal: whether
/// `closure(I^r) = I^r` for `2 <= r <= q - 2`, and whether `I` is normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowPowerRecord {
    pub low_powers_closed: bool,
    pub normal: bool,
}

impl LowPowerRecord {
    /// Low powers closed while the ideal is not normal.
    pub fn is_counterexample(&self) -> bool {
        self.low_powers_closed && !self.normal
    }
}

pub fn explore_low_powers(i: &MonomialIdeal) -> Result<LowPowerRecord> {
    check_square_free(i)?;
    let q = i.len() as u32;
    let mut low = true;
    for r in 2..=q.saturating_sub(2) {
        if integral_defect(i, r)? > 0 {
            low = false;
            break;
        }
    }
    Ok(LowPowerRecord {
        low_powers_closed: low,
        normal: is_normal(i)?,
    })
}
