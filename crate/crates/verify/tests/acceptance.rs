//! Acceptance suite: one PASS/FAIL/SKIPPED line per criterion.
//!
//! Library results are cross-checked against the brute-force oracles of
//! `extremal_verify`. All comparisons are exact. Criterion 13 is a long
//! computation and runs only when `EXTREMAL_STRETCH=1`.

use std::process::ExitCode;
use std::time::Instant;

use extremal_core::betti::{lcm_lattice_betti, power_pair, taylor_betti, PowerKind};
use extremal_core::closure::{
    analytic_spread, closure, closure_extremal, in_closure_extremal, integral_defect, is_normal,
    q4_normality,
};
use extremal_core::extremal::{extremal_power_gens, g_test, h_test, omega2};
use extremal_core::format::parse_monomial_in;
use extremal_core::random::{rng, square_free_ideal, theta_ideal};
use extremal_core::symbolic::{
    containment, resurgence_grid, sdefect, symbolic_power, ContainmentMode, SymbolicContext,
};
use extremal_core::{ExtremalRing, Monomial, MonomialIdeal, PsiMap, Result};
use extremal_verify as oracle;
use rand::Rng;

const SEED: u64 = 2024;

const G24: &str = "y_1*y_2*y_3*y_4*y_12*y_13*y_14*y_23*y_24*y_34\
                   *y_123^2*y_124^2*y_134^2*y_234^2*y_1234^2";
const E3_EXTRA: &str = "y_1*y_2*y_3*y_12*y_13*y_23*y_123^2";

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn exps(i: &MonomialIdeal) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = i.generators().iter().map(|m| m.exponents().to_vec()).collect();
    v.sort();
    v
}

fn sorted(mut v: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    v.sort();
    v
}

fn literal(q: usize, text: &str) -> Result<Monomial> {
    parse_monomial_in(text, ExtremalRing::new(q)?.ring())
}

fn random_ideal(k: usize, q: usize, rng: &mut impl Rng) -> Result<MonomialIdeal> {
    let n = q.max(3) + k % (8 - q.max(3));
    let (ring, gens) = square_free_ideal(rng, n, q, 0.5)?;
    MonomialIdeal::from_minimal(ring, gens)
}

fn c1() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for r in 2..=4u32 {
        let c = closure_extremal(3, r)?;
        let same = c == extremal_power_gens(3, r)?;
        // oracle: every closure generator is an ordinary product of r generators
        let oracle_ok = c.generators().iter().all(|m| oracle::power_member(3, r, m.exponents()));
        notes.push(format!("r={r}:{}", same && oracle_ok));
        ok &= same && oracle_ok;
    }
    // independent direction: nothing in a small box is integral over E_3^2 without lying in it
    let gens = oracle::power_generators(3, 2);
    let mut b = vec![0u32; 7];
    let mut stray = 0;
    loop {
        if !oracle::power_member(3, 2, &b) && oracle::integer_closure_power(&gens, &b, 3).is_some() {
            stray += 1;
        }
        let mut k = 0;
        while k < 7 && b[k] == 2 {
            b[k] = 0;
            k += 1;
        }
        if k == 7 {
            break;
        }
        b[k] += 1;
    }
    notes.push(format!("box stray elements {stray}"));
    Ok(verdict(ok && stray == 0, notes.join(", ")))
}

fn c2() -> Result<Outcome> {
    let power = extremal_power_gens(4, 2)?;
    let c = closure_extremal(4, 2)?;
    let added = c.generators_outside(&power)?;
    let g = literal(4, G24)?;
    let witness = oracle::integer_closure_power(&oracle::power_generators(4, 2), g.exponents(), 4);
    let outside = !oracle::power_member(4, 2, g.exponents());
    let ok = power.is_subset_of(&c)?
        && c.len() == power.len() + 1
        && added == vec![g.clone()]
        && g == g_test(2, 4)?
        && witness.is_some()
        && outside;
    Ok(verdict(
        ok,
        format!(
            "{} generators, {} added, integer witness t={:?}",
            c.len(),
            added.len(),
            witness
        ),
    ))
}

fn c3() -> Result<Outcome> {
    let e4 = ExtremalRing::new(4)?.ideal();
    let e3 = ExtremalRing::new(3)?.ideal();
    let d4 = integral_defect(&e4, 2)?;
    let d3: Vec<usize> = (1..=3).map(|r| integral_defect(&e3, r)).collect::<Result<_>>()?;
    Ok(verdict(
        d4 == 1 && d3.iter().all(|&d| d == 0),
        format!("idefect(2,E_4)={d4}, idefect(r,E_3)={d3:?}"),
    ))
}

/// Rank over Q by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let (a, b) = (rows[r][c], rows[i][c]);
            for k in 0..cols {
                rows[i][k] = rows[i][k] * a - rows[r][k] * b;
            }
            let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c4() -> Result<Outcome> {
    let mut got = Vec::new();
    let mut ok = true;
    for q in 1..=6 {
        let l = analytic_spread(&ExtremalRing::new(q)?.ideal())?;
        // the generators share a degree, so the spread is the exponent-matrix rank
        let rows = oracle::power_generators(q, 1)
            .into_iter()
            .map(|v| v.into_iter().map(i128::from).collect())
            .collect();
        let r = rank(rows);
        ok &= l == q && r == q;
        got.push(l);
    }
    Ok(verdict(ok, format!("l(E_q) for q=1..6: {got:?}")))
}

fn c5() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for q in 2..=4usize {
        let s = symbolic_power(&ExtremalRing::new(q)?.ideal(), 2)?;
        let omega = omega2(q)?;
        let brute = oracle::symbolic_generators(q, &oracle::minimal_covers(q), 2);
        let same = s == omega && exps(&s) == sorted(brute);
        notes.push(format!("q={q}: {} generators {same}", s.len()));
        ok &= same;
    }
    Ok(verdict(ok, notes.join(", ")))
}

fn c6() -> Result<Outcome> {
    let mut ok = true;
    let mut got = Vec::new();
    for q in 3..=5usize {
        let d = sdefect(&ExtremalRing::new(q)?.ideal(), 2)?;
        let expected = (1usize << q) - 1 - q - q * (q - 1) / 2;
        if q <= 4 {
            let brute = oracle::symbolic_generators(q, &oracle::minimal_covers(q), 2);
            let extra = brute.iter().filter(|b| !oracle::power_member(q, 2, b)).count();
            ok &= extra == expected;
        }
        ok &= d == expected;
        got.push(d);
    }
    Ok(verdict(ok && got == vec![1, 5, 16], format!("sdefect(2,E_q) for q=3,4,5: {got:?}")))
}

fn c7() -> Result<Outcome> {
    let t = ExtremalRing::new(3)?;
    let s = symbolic_power(&t.ideal(), 2)?;
    let extra = literal(3, E3_EXTRA)?;
    let expected = extremal_power_gens(3, 2)?.sum(&MonomialIdeal::new(t.ring().clone(), vec![extra.clone()])?)?;
    let brute = sorted(oracle::symbolic_generators(3, &oracle::minimal_covers(3), 2));
    let ok = s == expected && exps(&s) == brute && extra == h_test(2, 3)?;
    Ok(verdict(ok, format!("{} generators", s.len())))
}

fn c8() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (r, q) in [(2u32, 3usize), (3, 3), (2, 4)] {
        let h = h_test(r, q)?;
        let inside = SymbolicContext::extremal(q)?.contains(r, &h)?;
        let outside = !extremal_power_gens(q, r)?.contains(&h)?;
        let covers = if q <= 4 { Some(oracle::minimal_covers(q)) } else { None };
        let oracle_ok = covers.is_none_or(|c| oracle::cover_member(q, &c, r, h.exponents()))
            && !oracle::power_member(q, r, h.exponents());
        notes.push(format!("h({r},{q}):{}", inside && outside && oracle_ok));
        ok &= inside && outside && oracle_ok;
    }
    for (r, q) in [(2u32, 4usize), (3, 4), (2, 5)] {
        let g = g_test(r, q)?;
        let t = ExtremalRing::new(q)?;
        let inside = in_closure_extremal(q, r, &t.exponent_of(&g)?)?.member;
        let outside = !extremal_power_gens(q, r)?.contains(&g)?;
        let witness =
            oracle::integer_closure_power(&oracle::power_generators(q, r), g.exponents(), q as u32);
        let oracle_ok = witness.is_some() && !oracle::power_member(q, r, g.exponents());
        notes.push(format!("g({r},{q}):{}", inside && outside && oracle_ok));
        ok &= inside && outside && oracle_ok;
    }
    let g = literal(4, G24)?;
    let certified = extremal_power_gens(4, 8)?.contains(&g.pow(4)?)?
        && oracle::power_member(4, 8, g.pow(4)?.exponents());
    notes.push(format!("g(2,4)^4 in E_4^8:{certified}"));
    Ok(verdict(ok && certified, notes.join(" ")))
}

/// `ψ(g(2,4)) ∈ I²` checked directly against the products `m_i m_j`.
fn image_in_square(map: &PsiMap, gens: &[Monomial]) -> Result<bool> {
    let image = map.apply(&literal(4, G24)?)?;
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a..] {
            if x.mul(y)?.divides(&image)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn c9() -> Result<Outcome> {
    let mut rng = rng(SEED);
    let (mut agree, mut normal) = (0, 0);
    for _ in 0..50 {
        let (ring, gens) = theta_ideal(&mut rng, 4, 0.85, 2)?;
        let i = MonomialIdeal::from_minimal(ring, gens.clone())?;
        let a = is_normal(&i)?;
        let b = q4_normality(&i)?.normal;
        let c = image_in_square(&PsiMap::new(i.ring().clone(), gens)?, i.generators())?;
        agree += usize::from(a == b && b == c);
        normal += usize::from(a);
    }
    Ok(verdict(agree == 50 && normal > 0 && normal < 50, format!("{agree}/50 agree, {normal} normal")))
}

/// Minimal primes of a square-free ideal as minimal hitting sets, by subset scan.
fn hitting_sets(i: &MonomialIdeal) -> Vec<u32> {
    let n = i.ring().dim();
    let supports: Vec<u32> = i
        .generators()
        .iter()
        .map(|m| m.support().fold(0, |a, k| a | (1 << k)))
        .collect();
    let hits = |s: u32| supports.iter().all(|&g| g & s != 0);
    (1u32..(1 << n))
        .filter(|&s| hits(s) && (0..n).all(|k| s & (1 << k) == 0 || !hits(s & !(1 << k))))
        .collect()
}

fn c10() -> Result<Outcome> {
    let mut rng = rng(SEED);
    let mut good = 0;
    for k in 0..50 {
        let q = 1 + k % 4;
        let i = random_ideal(k, q, &mut rng)?;
        let map = PsiMap::from_ideal(&i)?;
        let closure_ok = map.apply_ideal(&closure_extremal(q, 2)?)? == closure(&i.power(2)?)?;
        let symbolic = symbolic_power(&i, 2)?;
        let symbolic_ok = map.apply_ideal(&SymbolicContext::extremal(q)?.power(2)?)? == symbolic;
        // oracle: each generator meets every minimal prime in degree >= 2
        let primes = hitting_sets(&i);
        let oracle_ok = symbolic.generators().iter().all(|m| {
            primes.iter().all(|&p| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| p & (1 << k) != 0)
                    .map(|(_, &e)| e)
                    .sum::<u32>()
                    >= 2
            })
        });
        good += usize::from(closure_ok && symbolic_ok && oracle_ok);
    }
    Ok(verdict(good == 50, format!("{good}/50 ideals transport")))
}

fn c11() -> Result<Outcome> {
    let e3 = ExtremalRing::new(3)?.ideal();
    let report = resurgence_grid(&e3, 8, 6, ContainmentMode::Ordinary)?;
    // oracle grid from box-scanned symbolic generators
    let covers = oracle::minimal_covers(3);
    let mut agree = true;
    for s in 1..=8u32 {
        let gens = oracle::symbolic_generators(3, &covers, s);
        for r in 1..=6u32.min(s) {
            let contained = gens.iter().all(|b| oracle::power_member(3, r, b));
            let lib = report.points.iter().find(|p| p.s == s && p.r == r).map(|p| p.contained);
            agree &= lib == Some(contained);
        }
    }
    let violations: Vec<(u32, u32)> =
        report.points.iter().filter(|p| !p.contained).map(|p| (p.s, p.r)).collect();
    let above = report.points.iter().filter(|p| 3 * p.s > 4 * p.r).all(|p| p.contained);
    let witness = violations.iter().any(|&(s, r)| 4 * s >= 5 * r);
    let list: Vec<String> = violations.iter().map(|(s, r)| format!("({s},{r})")).collect();
    Ok(verdict(
        agree && above && witness,
        format!(
            "oracle agrees {agree}, all s/r>4/3 contained {above}, violation with s/r>=5/4 {witness}; violations {}",
            list.join(" ")
        ),
    ))
}

fn c12() -> Result<Outcome> {
    let mut rng = rng(SEED);
    let mut good = 0;
    for k in 0..20 {
        let q = 1 + k % 3;
        let i = random_ideal(k, q, &mut rng)?;
        let mut ok = true;
        for (r, kind) in [(1, PowerKind::Ordinary), (2, PowerKind::Ordinary), (2, PowerKind::Symbolic)] {
            let (image, ext) = power_pair(&i, r, kind)?;
            let (bi, be) = (taylor_betti(&image)?, taylor_betti(&ext)?);
            let (ti, te) = (bi.totals(), be.totals());
            ok &= ti.len() <= te.len() && ti.iter().zip(&te).all(|(a, b)| a <= b);
            // lattice oracle where it is cheap
            if image.len() <= 6 {
                ok &= lcm_lattice_betti(&image)?.totals() == ti;
            }
            if ext.len() <= 6 {
                ok &= lcm_lattice_betti(&ext)?.totals() == te;
            }
        }
        good += usize::from(ok);
    }
    Ok(verdict(good == 20, format!("{good}/20 ideals satisfy the bounds")))
}

fn c13() -> Result<Outcome> {
    if std::env::var("EXTREMAL_STRETCH").as_deref() != Ok("1") {
        return Ok(Outcome::Skipped("set EXTREMAL_STRETCH=1 to run".into()));
    }
    let e4 = ExtremalRing::new(4)?.ideal();
    let ok = containment(&e4, 7, 5, ContainmentMode::Closure)?;
    Ok(verdict(ok, format!("E_4^(7) in closure(E_4^5): {ok}")))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Result<Outcome>); 13] = [
        (1, "E_3 is normal up to r = 4", c1),
        (2, "closure(E_4^2) adds exactly g(2,4)", c2),
        (3, "integral defects of E_4 and E_3", c3),
        (4, "analytic spread of E_q", c4),
        (5, "E_q^(2) generated by the f_X", c5),
        (6, "symbolic defect of E_q^(2)", c6),
        (7, "E_3^(2) as E_3^2 plus one monomial", c7),
        (8, "test elements h and g", c8),
        (9, "q = 4 normality criteria agree", c9),
        (10, "transport of closure and symbolic square", c10),
        (11, "E_3 containment grid", c11),
        (12, "Betti number transfer", c12),
        (13, "E_4^(7) in closure(E_4^5)", c13),
    ];
    let mut failed = 0;
    for (n, title, f) in criteria {
        let start = Instant::now();
        let (label, detail) = match f() {
            Ok(Outcome::Pass(d)) => ("PASS", d),
            Ok(Outcome::Fail(d)) => ("FAIL", d),
            Ok(Outcome::Skipped(d)) => ("SKIPPED", d),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if label == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {label:<7} {title} [{:.1}s] {detail}",
            start.elapsed().as_secs_f64()
        );
    }
    println!("{failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
