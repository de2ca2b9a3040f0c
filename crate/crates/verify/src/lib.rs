//! Brute-force oracles for the extremal-ideal computations.
//!
//! Everything here works on raw exponent vectors over the subsets of `[q]`
//! and deliberately avoids the algorithms of `extremal-core`: covers are
//! found by enumerating all set families, symbolic powers by scanning a box,
//! ordinary powers by enumerating compositions and integral closure by the
//! integer-power criterion `m^t ∈ J^t`.

/// Nonempty subsets of `[q]` as bit masks, ordered by cardinality and then
/// lexicographically on their sorted elements.
pub fn subsets(q: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (1..(1u32 << q)).collect();
    all.sort_by_key(|&s| {
        let els: Vec<u32> = (0..q as u32).filter(|i| s & (1 << i) != 0).collect();
        (els.len(), els)
    });
    all
}

/// Minimal set covers of `[q]`, each as a list of subset masks, found by
/// scanning every family of nonempty subsets. Practical for `q <= 4`.
pub fn minimal_covers(q: usize) -> Vec<Vec<u32>> {
    assert!(q <= 4, "family scan is exponential in 2^q");
    let sets = subsets(q);
    let full = (1u32 << q) - 1;
    let mut out = Vec::new();
    for family in 1u64..(1u64 << sets.len()) {
        let members: Vec<u32> = (0..sets.len())
            .filter(|k| family & (1 << k) != 0)
            .map(|k| sets[k])
            .collect();
        let union = members.iter().fold(0, |a, &s| a | s);
        if union != full {
            continue;
        }
        let irredundant = (0..members.len()).all(|skip| {
            members
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .fold(0, |a, (_, &s)| a | s)
                != full
        });
        if irredundant {
            out.push(members);
        }
    }
    out
}

/// Degree-sum test: `Σ_{A ∈ C} b_A >= s` for every cover `C`.
pub fn cover_member(q: usize, covers: &[Vec<u32>], s: u32, b: &[u32]) -> bool {
    let order = subsets(q);
    let pos = |m: u32| order.iter().position(|&x| x == m).unwrap();
    covers
        .iter()
        .all(|c| c.iter().map(|&m| b[pos(m)]).sum::<u32>() >= s)
}

/// Minimal exponent vectors of `E_q^(s)`, by scanning `[0, s]^(2^q - 1)`.
pub fn symbolic_generators(q: usize, covers: &[Vec<u32>], s: u32) -> Vec<Vec<u32>> {
    let order = subsets(q);
    let n = order.len();
    // cover rows as position lists
    let rows: Vec<Vec<usize>> = covers
        .iter()
        .map(|c| c.iter().map(|&m| order.iter().position(|&x| x == m).unwrap()).collect())
        .collect();
    let member = |b: &[u32]| rows.iter().all(|r| r.iter().map(|&p| b[p]).sum::<u32>() >= s);
    let mut out = Vec::new();
    let mut b = vec![0u32; n];
    loop {
        if member(&b) {
            let minimal = (0..n).all(|k| {
                if b[k] == 0 {
                    return true;
                }
                let mut c = b.clone();
                c[k] -= 1;
                !member(&c)
            });
            if minimal {
                out.push(b.clone());
            }
        }
        let mut k = 0;
        while k < n && b[k] == s {
            b[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        b[k] += 1;
    }
    out
}

/// `ε^a` exponents for every composition `a` of `r` into `q` parts.
pub fn power_generators(q: usize, r: u32) -> Vec<Vec<u32>> {
    let order = subsets(q);
    let mut out = Vec::new();
    let mut a = vec![0u32; q];
    fn rec(k: usize, left: u32, a: &mut Vec<u32>, order: &[u32], out: &mut Vec<Vec<u32>>) {
        if k + 1 == a.len() {
            a[k] = left;
            out.push(
                order
                    .iter()
                    .map(|&m| (0..a.len()).filter(|i| m & (1 << i) != 0).map(|i| a[i]).sum())
                    .collect(),
            );
            return;
        }
        for v in 0..=left {
            a[k] = v;
            rec(k + 1, left - v, a, order, out);
        }
    }
    rec(0, r, &mut a, &order, &mut out);
    out
}

/// Membership of `y^b` in `E_q^r` by comparison with every `ε^a`.
pub fn power_member(q: usize, r: u32, b: &[u32]) -> bool {
    power_generators(q, r)
        .iter()
        .any(|g| g.iter().zip(b).all(|(x, y)| x <= y))
}

/// Smallest `t <= t_max` with `x^{t b}` divisible by a product of `t`
/// generators, i.e. `m^t ∈ J^t`.
pub fn integer_closure_power(gens: &[Vec<u32>], b: &[u32], t_max: u32) -> Option<u32> {
    fn fits(gens: &[Vec<u32>], from: usize, left: u32, slack: &mut Vec<i64>) -> bool {
        if left == 0 {
            return true;
        }
        for j in from..gens.len() {
            let ok = gens[j].iter().zip(slack.iter()).all(|(&g, &s)| i64::from(g) <= s);
            if !ok {
                continue;
            }
            for (s, &g) in slack.iter_mut().zip(&gens[j]) {
                *s -= i64::from(g);
            }
            let found = fits(gens, j, left - 1, slack);
            for (s, &g) in slack.iter_mut().zip(&gens[j]) {
                *s += i64::from(g);
            }
            if found {
                return true;
            }
        }
        false
    }
    (1..=t_max).find(|&t| {
        let mut slack: Vec<i64> = b.iter().map(|&x| i64::from(x) * i64::from(t)).collect();
        fits(gens, 0, t, &mut slack)
    })
}
