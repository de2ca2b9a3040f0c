//! Reading and writing ideals, monomials and irreducible components.
//!
//! Text format: one monomial per line, factors joined by `*`, exponents
//! after `^`, e.g. `x1^2*x3`. `1` is the unit monomial, `#` starts a comment.
//! Two comment directives are recognised:
//!
//! * `# ring: x1 x2 x3` fixes the variables and their order;
//! * `# q: 4` places `y_...` variables in `S_[4]`.
//!
//! Without a `ring:` directive, a file whose variables are all of the form
//! `y_123` or `y_{1,10}` lives in `S_[q]` (with `q` the largest element seen),
//! and any other file lives in the ring of its variables in natural order
//! (`x2` before `x10`).
//!
//! JSON format: `{"ring": [names...], "generators": [[[index, exp], ...], ...]}`
//! with 0-based indices into `ring`; components use the key `"components"`
//! with `[index, power]` pairs.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::decomposition::IrreducibleComponent;
use crate::error::{Error, Result};
use crate::extremal::ExtremalRing;
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Ring};

/// An ideal as read from a file: generators keep the file order, since the
/// indexing of `m_1, ..., m_q` matters to `ψ_I`.
#[derive(Debug, Clone)]
pub struct ParsedIdeal {
    pub ring: Arc<Ring>,
    pub generators: Vec<Monomial>,
}

impl ParsedIdeal {
    /// The ideal generated, reduced to minimal generators.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.ring.clone(), self.generators.clone())
    }
}

type Factors = Vec<(String, u32)>;

struct RawFile {
    ring: Option<Vec<String>>,
    q: Option<usize>,
    lines: Vec<(usize, Factors)>,
}

fn parse_factor(text: &str, line: usize) -> Result<(String, u32)> {
    let err = |message: String| Error::Parse { line, message };
    let (name, exp) = match text.split_once('^') {
        None => (text.trim(), 1),
        Some((name, exp)) => {
            let exp = exp.trim();
            if exp.is_empty() {
                return Err(err(format!("missing exponent after '^' in '{text}'")));
            }
            let e: u32 = exp
                .parse()
                .map_err(|_| err(format!("exponent '{exp}' is not a non-negative integer")))?;
            (name.trim(), e)
        }
    };
    if name.is_empty() {
        return Err(err(format!("missing variable in factor '{text}'")));
    }
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '{' | '}' | ','));
    if !valid {
        return Err(err(format!("invalid variable name '{name}'")));
    }
    Ok((name.to_string(), exp))
}

fn parse_line(text: &str, line: usize) -> Result<Factors> {
    let text = text.trim();
    if text == "1" {
        return Ok(vec![]);
    }
    text.split('*')
        .map(|f| {
            if f.trim() == "1" {
                Ok(None)
            } else {
                parse_factor(f, line).map(Some)
            }
        })
        .filter_map(Result::transpose)
        .collect()
}

fn read_raw(text: &str) -> Result<RawFile> {
    let mut raw = RawFile {
        ring: None,
        q: None,
        lines: Vec::new(),
    };
    for (k, l) in text.lines().enumerate() {
        let line = k + 1;
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(comment) = l.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(names) = comment.strip_prefix("ring:") {
                raw.ring = Some(names.split_whitespace().map(str::to_string).collect());
            } else if let Some(q) = comment.strip_prefix("q:") {
                raw.q = Some(q.trim().parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad q directive '{}'", q.trim()),
                })?);
            }
            continue;
        }
        raw.lines.push((line, parse_line(l, line)?));
    }
    Ok(raw)
}

/// Elements of a `y_...` name: `y_123` or `y_{1,10}`.
pub fn parse_subset_name(name: &str) -> Option<Vec<usize>> {
    let body = name.strip_prefix("y_")?;
    let elements: Vec<usize> = if let Some(inner) = body.strip_prefix('{') {
        let inner = inner.strip_suffix('}')?;
        inner
            .split(',')
            .map(|p| p.trim().parse().ok())
            .collect::<Option<_>>()?
    } else {
        if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        body.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    };
    if elements.is_empty() || elements.contains(&0) {
        return None;
    }
    let mut sorted = elements.clone();
    sorted.sort_unstable();
    sorted.dedup();
    (sorted == elements).then_some(elements)
}

/// Orders `x2` before `x10`: digit runs compare numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let o = if *da && *db {
            let (ta, tb) = (sa.trim_start_matches('0'), sb.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then(ta.cmp(tb)).then(sa.len().cmp(&sb.len()))
        } else {
            sa.cmp(sb)
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    ca.len().cmp(&cb.len())
}

fn monomial_in(ring: &Ring, factors: &Factors, line: usize) -> Result<Monomial> {
    let mut e = vec![0u32; ring.dim()];
    for (name, exp) in factors {
        let k = ring
            .index_of(name)
            .or_else(|| subset_spellings(name).iter().find_map(|n| ring.index_of(n)))
            .ok_or_else(|| Error::Parse {
                line,
                message: format!("unknown variable '{name}'"),
            })?;
        e[k] = e[k].checked_add(*exp).ok_or(Error::ExponentOverflow)?;
    }
    ring.monomial(e)
}

/// Spellings a subset variable may have in `S_[q]`, so `y_{1,2}` finds `y_12`.
fn subset_spellings(name: &str) -> Vec<String> {
    let Some(els) = parse_subset_name(name) else {
        return vec![];
    };
    let parts: Vec<String> = els.iter().map(usize::to_string).collect();
    let mut out = vec![format!("y_{{{}}}", parts.join(","))];
    if els.iter().all(|&e| e <= 9) {
        out.push(format!("y_{}", parts.concat()));
    }
    out
}

fn ring_for(raw: &RawFile) -> Result<Arc<Ring>> {
    if let Some(names) = &raw.ring {
        return Ring::new(names.clone());
    }
    let mut names: Vec<&str> = raw
        .lines
        .iter()
        .flat_map(|(_, f)| f.iter().map(|(n, _)| n.as_str()))
        .collect();
    let subsets: Option<Vec<Vec<usize>>> = names.iter().map(|n| parse_subset_name(n)).collect();
    match subsets {
        Some(sets) if !names.is_empty() || raw.q.is_some() => {
            let seen = sets.iter().flatten().copied().max().unwrap_or(1);
            let q = raw.q.unwrap_or(seen);
            if q < seen {
                return Err(Error::Malformed(format!(
                    "subset element {seen} exceeds the declared q = {q}"
                )));
            }
            Ok(ExtremalRing::new(q)?.ring().clone())
        }
        _ => {
            names.sort_by(|a, b| natural_cmp(a, b));
            names.dedup();
            Ring::new(names)
        }
    }
}

/// Reads an ideal in the text format, or in JSON when the text starts with `{`.
pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    if text.trim_start().starts_with('{') {
        return ideal_from_json(text);
    }
    let raw = read_raw(text)?;
    let ring = ring_for(&raw)?;
    let generators = raw
        .lines
        .iter()
        .map(|(line, f)| monomial_in(&ring, f, *line))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedIdeal { ring, generators })
}

/// Reads monomials (text or JSON) that must live in `ring`.
pub fn parse_in_ring(text: &str, ring: &Arc<Ring>) -> Result<Vec<Monomial>> {
    if text.trim_start().starts_with('{') {
        let parsed = ideal_from_json(text)?;
        if parsed.ring.id() != ring.id() {
            return Err(Error::RingMismatch);
        }
        return Ok(parsed.generators);
    }
    let raw = read_raw(text)?;
    raw.lines
        .iter()
        .map(|(line, f)| monomial_in(ring, f, *line))
        .collect()
}

/// Reads exactly one monomial in `ring`.
pub fn parse_monomial_in(text: &str, ring: &Arc<Ring>) -> Result<Monomial> {
    let mut ms = parse_in_ring(text, ring)?;
    match ms.len() {
        1 => Ok(ms.pop().unwrap()),
        n => Err(Error::Malformed(format!("expected one monomial, found {n}"))),
    }
}

/// `x1^2*x3`, or `1` for the unit monomial.
pub fn monomial_to_text(ring: &Ring, m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut s = String::new();
    for (k, e) in m.sparse() {
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(ring.name(k));
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

/// One generator per line, in canonical order.
pub fn ideal_to_text(i: &MonomialIdeal) -> String {
    i.generators()
        .iter()
        .map(|g| monomial_to_text(i.ring(), g) + "\n")
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: Vec<String>,
    pub generators: Vec<Vec<(usize, u32)>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ComponentsJson {
    pub ring: Vec<String>,
    pub components: Vec<Vec<(usize, u32)>>,
}

pub fn monomials_to_json(ring: &Ring, gens: &[Monomial]) -> IdealJson {
    IdealJson {
        ring: ring.names().to_vec(),
        generators: gens.iter().map(Monomial::sparse).collect(),
    }
}

pub fn ideal_to_json(i: &MonomialIdeal) -> IdealJson {
    monomials_to_json(i.ring(), i.generators())
}

fn ideal_from_json(text: &str) -> Result<ParsedIdeal> {
    let data: IdealJson =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("ideal JSON: {e}")))?;
    let ring = Ring::new(data.ring)?;
    let generators = data
        .generators
        .iter()
        .map(|g| sparse_monomial(&ring, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedIdeal { ring, generators })
}

fn sparse_monomial(ring: &Ring, pairs: &[(usize, u32)]) -> Result<Monomial> {
    let mut e = vec![0u32; ring.dim()];
    for &(k, p) in pairs {
        let slot = e
            .get_mut(k)
            .ok_or_else(|| Error::Malformed(format!("variable index {k} out of range")))?;
        *slot = slot.checked_add(p).ok_or(Error::ExponentOverflow)?;
    }
    ring.monomial(e)
}

pub fn components_to_json(ring: &Ring, components: &[IrreducibleComponent]) -> ComponentsJson {
    ComponentsJson {
        ring: ring.names().to_vec(),
        components: components.iter().map(|c| c.entries().to_vec()).collect(),
    }
}

/// Reads components written by [`components_to_json`]; they must live in `ring`.
pub fn components_from_json(text: &str, ring: &Arc<Ring>) -> Result<Vec<IrreducibleComponent>> {
    let data: ComponentsJson = serde_json::from_str(text)
        .map_err(|e| Error::Malformed(format!("components JSON: {e}")))?;
    if Ring::new(data.ring)?.id() != ring.id() {
        return Err(Error::RingMismatch);
    }
    data.components
        .into_iter()
        .map(|c| IrreducibleComponent::new(ring, c))
        .collect()
}

/// `(x1^2, x3)`.
pub fn component_to_text(ring: &Ring, c: &IrreducibleComponent) -> String {
    let parts: Vec<String> = c
        .entries()
        .iter()
        .map(|&(k, p)| {
            if p == 1 {
                ring.name(k).to_string()
            } else {
                format!("{}^{p}", ring.name(k))
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}
