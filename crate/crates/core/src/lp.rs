//! Exact rational feasibility for small linear systems.
//!
//! Phase-one simplex on a dense tableau of [`Rational`]s with Bland's
//! anti-cycling rule. No floating point is involved anywhere, so a returned
//! witness satisfies every constraint exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// `find x ∈ Q^d` subject to linear (in)equalities and per-variable sign
/// restrictions.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityProblem {
    dim: usize,
    constraints: Vec<Constraint>,
    nonneg: Vec<bool>,
}

impl FeasibilityProblem {
    /// A problem in `dim` variables, all constrained to be nonnegative.
    pub fn new(dim: usize) -> Result<FeasibilityProblem> {
        if dim == 0 {
            return Err(Error::Malformed("feasibility problem needs d >= 1".into()));
        }
        Ok(FeasibilityProblem {
            dim,
            constraints: Vec::new(),
            nonneg: vec![true; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    pub fn set_free(&mut self, var: usize) -> Result<()> {
        if var >= self.dim {
            return Err(Error::Malformed(format!("variable {var} out of range")));
        }
        self.nonneg[var] = false;
        Ok(())
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.dim {
            return Err(Error::Malformed(format!(
                "constraint has {} coefficients, problem has {} variables",
                coeffs.len(),
                self.dim
            )));
        }
        self.constraints.push(Constraint { coeffs, sense, rhs });
        Ok(())
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.add(coeffs, Sense::Eq, rhs)
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.add(coeffs, Sense::Le, rhs)
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.add(coeffs, Sense::Ge, rhs)
    }

    /// Checks a candidate point against every constraint exactly.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && x
                .iter()
                .zip(&self.nonneg)
                .all(|(v, &nn)| !nn || !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }

    pub fn into_witness(self) -> Option<Vec<Rational>> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides feasibility exactly; on success the witness satisfies every
/// constraint of `p`.
pub fn feasible(p: &FeasibilityProblem) -> Result<Feasibility> {
    for c in &p.constraints {
        if c.coeffs.len() != p.dim {
            return Err(Error::Malformed("constraint dimension mismatch".into()));
        }
    }
    if p.nonneg.len() != p.dim {
        return Err(Error::Malformed("sign flags do not match dimension".into()));
    }
    Ok(Tableau::build(p).solve(p))
}

/// Column layout: structural columns (free variables split into a positive
/// and a negative part), then one slack per inequality, then artificials.
struct Tableau {
    rows: Vec<Vec<Rational>>, // each row: coefficients followed by the rhs
    basis: Vec<usize>,
    n_cols: usize,
    first_artificial: usize,
    structural: Vec<(usize, Option<usize>)>, // per original variable: (pos, neg)
}

impl Tableau {
    fn build(p: &FeasibilityProblem) -> Tableau {
        let mut structural = Vec::with_capacity(p.dim);
        let mut col = 0;
        for &nn in &p.nonneg {
            if nn {
                structural.push((col, None));
                col += 1;
            } else {
                structural.push((col, Some(col + 1)));
                col += 2;
            }
        }
        let n_slack = p
            .constraints
            .iter()
            .filter(|c| c.sense != Sense::Eq)
            .count();
        let first_slack = col;
        let first_artificial = first_slack + n_slack;

        // Decide which rows need an artificial: a row whose (sign-normalized)
        // slack has coefficient +1 can start with the slack basic.
        let mut rows = Vec::with_capacity(p.constraints.len());
        let mut basis = Vec::with_capacity(p.constraints.len());
        let mut slack = first_slack;
        let mut n_art = 0;
        let mut pending: Vec<(Vec<Rational>, Option<usize>)> = Vec::new();
        for c in &p.constraints {
            let mut row = vec![Rational::zero(); first_artificial];
            for (j, a) in c.coeffs.iter().enumerate() {
                let (pos, neg) = structural[j];
                row[pos] = a.clone();
                if let Some(neg) = neg {
                    row[neg] = -a.clone();
                }
            }
            let slack_col = match c.sense {
                Sense::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                    Some(slack - 1)
                }
                Sense::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    Some(slack - 1)
                }
                Sense::Eq => None,
            };
            let mut rhs = c.rhs.clone();
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                rhs = -rhs;
            }
            row.push(rhs);
            let basic_slack = slack_col.filter(|&s| row[s].is_one());
            if basic_slack.is_none() {
                n_art += 1;
            }
            pending.push((row, basic_slack));
        }
        let n_cols = first_artificial + n_art;
        let mut art = first_artificial;
        for (mut row, basic_slack) in pending {
            let rhs = row.pop().expect("rhs present");
            row.resize(n_cols, Rational::zero());
            match basic_slack {
                Some(s) => basis.push(s),
                None => {
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            row.push(rhs);
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            n_cols,
            first_artificial,
            structural,
        }
    }

    fn solve(mut self, p: &FeasibilityProblem) -> Feasibility {
        let m = self.rows.len();
        let n = self.n_cols;
        // Phase-one objective: minimize the sum of artificials. Reduced costs
        // are kept in `cost`, with the negated objective value in the last slot.
        let mut cost = vec![Rational::zero(); n + 1];
        for j in self.first_artificial..n {
            cost[j] = Rational::one();
        }
        for i in 0..m {
            if self.basis[i] >= self.first_artificial {
                for (c, v) in cost.iter_mut().zip(&self.rows[i]) {
                    *c -= v;
                }
            }
        }
        loop {
            // Bland: lowest-index column with negative reduced cost enters.
            let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) else {
                break;
            };
            // Ratio test; ties broken by the lowest basic variable index.
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..m {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = &self.rows[i][n] / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                // Unbounded direction; cannot happen for a phase-one objective
                // bounded below by zero.
                unreachable!("phase-one objective is bounded below");
            };
            self.pivot(row, enter, &mut cost);
        }
        if !cost[n].is_zero() {
            return Feasibility::Infeasible;
        }
        let mut value = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            value[b] = self.rows[i][n].clone();
        }
        let x: Vec<Rational> = self
            .structural
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &value[pos] - &value[neg],
                None => value[pos].clone(),
            })
            .collect();
        debug_assert!(p.is_satisfied_by(&x));
        Feasibility::Feasible(x)
    }

    fn pivot(&mut self, row: usize, col: usize, cost: &mut [Rational]) {
        let piv = self.rows[row][col].clone();
        if !piv.is_one() {
            for v in self.rows[row].iter_mut() {
                if !v.is_zero() {
                    *v /= &piv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[row]);
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            eliminate(r, &pivot_row, col);
        }
        eliminate(cost, &pivot_row, col);
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }
}

fn eliminate(target: &mut [Rational], pivot_row: &[Rational], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    for (t, p) in target.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *t -= &factor * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_equality() {
        let mut p = FeasibilityProblem::new(1).unwrap();
        p.add_eq(vec![rat(1)], rat(1)).unwrap();
        assert_eq!(feasible(&p).unwrap(), Feasibility::Feasible(vec![rat(1)]));
    }

    #[test]
    fn contradictory_bounds() {
        let mut p = FeasibilityProblem::new(2).unwrap();
        p.add_ge(vec![rat(1), rat(1)], rat(3)).unwrap();
        p.add_le(vec![rat(1), rat(0)], rat(1)).unwrap();
        p.add_le(vec![rat(0), rat(1)], rat(1)).unwrap();
        assert_eq!(feasible(&p).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn free_variables_can_go_negative() {
        let mut p = FeasibilityProblem::new(2).unwrap();
        p.set_free(0).unwrap();
        p.add_eq(vec![rat(1), rat(1)], rat(-2)).unwrap();
        p.add_le(vec![rat(0), rat(1)], rat(0)).unwrap();
        let w = feasible(&p).unwrap().into_witness().unwrap();
        assert!(p.is_satisfied_by(&w));
        assert!(w[0].is_negative());
    }

    #[test]
    fn fractional_witness() {
        // 3x = 1, x >= 0
        let mut p = FeasibilityProblem::new(1).unwrap();
        p.add_eq(vec![rat(3)], rat(1)).unwrap();
        assert_eq!(feasible(&p).unwrap(), Feasibility::Feasible(vec![r(1, 3)]));
    }

    #[test]
    fn malformed_dimensions() {
        let mut p = FeasibilityProblem::new(2).unwrap();
        assert!(p.add_eq(vec![rat(1)], rat(1)).is_err());
        assert!(FeasibilityProblem::new(0).is_err());
    }

    #[test]
    fn degenerate_system_terminates() {
        // Many redundant constraints through the origin.
        let mut p = FeasibilityProblem::new(3).unwrap();
        for i in 0..3 {
            let mut c = vec![rat(0); 3];
            c[i] = rat(1);
            p.add_le(c.clone(), rat(0)).unwrap();
            p.add_ge(c, rat(0)).unwrap();
        }
        p.add_eq(vec![rat(1), rat(1), rat(1)], rat(0)).unwrap();
        assert_eq!(
            feasible(&p).unwrap(),
            Feasibility::Feasible(vec![rat(0), rat(0), rat(0)])
        );
    }
}
