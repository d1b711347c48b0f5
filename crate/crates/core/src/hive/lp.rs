//! Exact rational feasibility for systems `A x ≤ b` with `A` in `{−1, 0, 1}`.
//!
//! Two independent deciders: Phase-I simplex with Bland's rule, and
//! Fourier-Motzkin elimination (equalities substituted first, Chernikov's
//! history rule and duplicate removal during elimination).

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub variables: Vec<String>,
    pub a: Vec<Vec<i8>>,
    #[serde(serialize_with = "ser_rationals")]
    pub b: Vec<Q>,
    pub labels: Vec<String>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize as _;
    v.iter().map(|q| q.to_string()).collect::<Vec<_>>().serialize(s)
}

impl LinearSystem {
    pub fn new(variables: Vec<String>) -> Self {
        LinearSystem { variables, a: Vec::new(), b: Vec::new(), labels: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.variables.len()
    }

    pub fn row_count(&self) -> usize {
        self.a.len()
    }

    /// Adds `Σ coeff·x ≤ rhs`; repeated variables are merged.
    pub fn push(&mut self, terms: &[(usize, i64)], rhs: Q, label: impl Into<String>) -> Result<()> {
        let mut row = vec![0i64; self.var_count()];
        for &(v, c) in terms {
            row[v] += c;
        }
        let row = row
            .into_iter()
            .map(|c| {
                i8::try_from(c)
                    .ok()
                    .filter(|c| c.abs() <= 1)
                    .ok_or_else(|| Error::invalid(format!("coefficient {c} outside {{-1, 0, 1}}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.a.push(row);
        self.b.push(rhs);
        self.labels.push(label.into());
        Ok(())
    }

    /// Adds `Σ coeff·x = rhs` as two opposite inequalities.
    pub fn push_eq(&mut self, terms: &[(usize, i64)], rhs: Q, label: &str) -> Result<()> {
        let neg: Vec<(usize, i64)> = terms.iter().map(|&(v, c)| (v, -c)).collect();
        self.push(terms, rhs.clone(), format!("{label}.le"))?;
        self.push(&neg, -rhs, format!("{label}.ge"))
    }

    /// True iff `x` satisfies every row exactly.
    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        self.a.iter().zip(&self.b).all(|(row, b)| {
            let lhs: Q = row.iter().zip(x).filter(|(c, _)| **c != 0).map(|(&c, v)| v * Q::from_integer(c.into())).sum();
            lhs <= *b
        })
    }

    fn rational_rows(&self) -> Vec<(Vec<Q>, Q)> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, b)| (row.iter().map(|&c| Q::from_integer(c.into())).collect(), b.clone()))
            .collect()
    }

    /// CPLEX LP text, rows scaled to integer coefficients.
    pub fn to_lp_format(&self) -> String {
        let name = |v: usize| {
            let cleaned: String = self.variables[v]
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
                .collect();
            format!("x{v}_{cleaned}")
        };
        let mut out = String::from("\\ feasibility system\nMinimize\n obj: 0\nSubject To\n");
        for (r, (row, b)) in self.a.iter().zip(&self.b).enumerate() {
            let scale = b.denom().clone();
            let mut line = String::new();
            for (v, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let coeff = BigInt::from(c) * &scale;
                let sign = if coeff.is_negative() { "-" } else { "+" };
                let mag = coeff.abs();
                if mag.is_one() {
                    write!(line, " {sign} {}", name(v)).unwrap();
                } else {
                    write!(line, " {sign} {mag} {}", name(v)).unwrap();
                }
            }
            if line.is_empty() {
                line.push_str(" 0 x0_zero");
            }
            let rhs = b * Q::from_integer(scale);
            writeln!(out, " r{r}:{line} <= {}", rhs.to_integer()).unwrap();
        }
        out.push_str("Bounds\n");
        for v in 0..self.var_count() {
            writeln!(out, " {} free", name(v)).unwrap();
        }
        if self.a.iter().any(|row| row.iter().all(|&c| c == 0)) {
            out.push_str(" x0_zero = 0\n");
        }
        out.push_str("End\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Simplex,
    FourierMotzkin,
}

/// Exact feasibility by Phase-I simplex.
pub fn lp_feasible(s: &LinearSystem) -> bool {
    simplex_witness(s).is_some()
}

pub fn lp_feasible_with(s: &LinearSystem, backend: Backend) -> bool {
    match backend {
        Backend::Simplex => simplex_witness(s).is_some(),
        Backend::FourierMotzkin => fourier_motzkin_feasible(s),
    }
}

/// A feasible point, found by Phase-I simplex over `x = x⁺ − x⁻`.
pub fn simplex_witness(s: &LinearSystem) -> Option<Vec<Q>> {
    let n = s.var_count();
    let m = s.row_count();
    let rows = s.rational_rows();
    let negative: Vec<usize> = (0..m).filter(|&r| rows[r].1.is_negative()).collect();
    let art_base = 2 * n + m;
    let cols = art_base + negative.len();
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 0;
    for (r, (coeffs, b)) in rows.into_iter().enumerate() {
        let mut row = vec![Q::zero(); cols + 1];
        let sign = if b.is_negative() { -Q::one() } else { Q::one() };
        for (v, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                row[v] = &c * &sign;
                row[n + v] = -(&c * &sign);
            }
        }
        row[2 * n + r] = sign.clone();
        row[cols] = b * &sign;
        if sign.is_negative() {
            row[art_base + art] = Q::one();
            basis.push(art_base + art);
            art += 1;
        } else {
            basis.push(2 * n + r);
        }
        t.push(row);
    }
    // reduced costs of min Σ artificials
    let mut obj = vec![Q::zero(); cols + 1];
    for c in obj.iter_mut().take(cols).skip(art_base) {
        *c = Q::one();
    }
    for r in 0..m {
        if basis[r] >= art_base {
            for c in 0..=cols {
                obj[c] = &obj[c] - &t[r][c];
            }
        }
    }
    while let Some(enter) = (0..cols).find(|&c| obj[c].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pr, _) = leave.expect("phase one objective is bounded below");
        let piv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for c in 0..=cols {
                    if !prow[c].is_zero() {
                        row[c] = &row[c] - &f * &prow[c];
                    }
                }
            }
        }
        let f = obj[enter].clone();
        for c in 0..=cols {
            if !prow[c].is_zero() {
                obj[c] = &obj[c] - &f * &prow[c];
            }
        }
        basis[pr] = enter;
    }
    if !obj[cols].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] += &t[r][cols];
        } else if bv < 2 * n {
            x[bv - n] -= &t[r][cols];
        }
    }
    Some(x)
}

#[derive(Clone)]
struct FmRow {
    coeffs: Vec<Q>,
    b: Q,
    history: Vec<u64>,
}

impl FmRow {
    /// Scales so the first nonzero coefficient has absolute value 1.
    fn normalize(&mut self) {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c = &*c / &lead;
            }
            self.b = &self.b / &lead;
        }
    }

    fn history_len(&self) -> u32 {
        self.history.iter().map(|w| w.count_ones()).sum()
    }
}

/// Fourier-Motzkin feasibility.
pub fn fourier_motzkin_feasible(s: &LinearSystem) -> bool {
    let n = s.var_count();
    let rows = s.rational_rows();
    // pair up opposite rows into equalities
    let mut used = vec![false; rows.len()];
    let mut index: HashMap<(Vec<Q>, Q), Vec<usize>> = HashMap::new();
    for (r, row) in rows.iter().enumerate() {
        index.entry(row.clone()).or_default().push(r);
    }
    let mut eqs: Vec<(Vec<Q>, Q)> = Vec::new();
    for r in 0..rows.len() {
        if used[r] {
            continue;
        }
        let neg = (rows[r].0.iter().map(|c| -c).collect::<Vec<_>>(), -rows[r].1.clone());
        if let Some(partner) = index.get(&neg).and_then(|v| v.iter().copied().find(|&p| !used[p] && p != r)) {
            used[r] = true;
            used[partner] = true;
            eqs.push(rows[r].clone());
        }
    }
    let mut ineqs: Vec<(Vec<Q>, Q)> = (0..rows.len()).filter(|&r| !used[r]).map(|r| rows[r].clone()).collect();

    // Gaussian substitution of equalities.
    let mut eliminated = vec![false; n];
    while let Some((coeffs, b)) = eqs.pop() {
        let Some(v) = coeffs.iter().position(|c| !c.is_zero()) else {
            if !b.is_zero() {
                return false;
            }
            continue;
        };
        let pivot = coeffs[v].clone();
        let subst = |row: &mut (Vec<Q>, Q)| {
            if row.0[v].is_zero() {
                return;
            }
            let f = &row.0[v] / &pivot;
            for (c, e) in row.0.iter_mut().zip(&coeffs) {
                *c = &*c - &f * e;
            }
            row.1 = &row.1 - &f * &b;
        };
        eqs.iter_mut().for_each(subst);
        ineqs.iter_mut().for_each(subst);
        eliminated[v] = true;
    }

    let words = ineqs.len().div_ceil(64).max(1);
    let mut current: Vec<FmRow> = ineqs
        .into_iter()
        .enumerate()
        .map(|(k, (coeffs, b))| {
            let mut history = vec![0u64; words];
            history[k / 64] |= 1 << (k % 64);
            let mut row = FmRow { coeffs, b, history };
            row.normalize();
            row
        })
        .collect();
    let mut steps = 0u32;
    loop {
        if current.iter().any(|r| r.coeffs.iter().all(Q::is_zero) && r.b.is_negative()) {
            return false;
        }
        current.retain(|r| !r.coeffs.iter().all(Q::is_zero));
        // pick the variable with the fewest new rows
        let choice = (0..n)
            .filter(|&v| !eliminated[v])
            .map(|v| {
                let pos = current.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let neg = current.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (pos * neg, pos + neg, v)
            })
            .filter(|&(_, touched, _)| touched > 0)
            .min();
        let Some((_, _, v)) = choice else { return true };
        eliminated[v] = true;
        steps += 1;
        let (touching, mut next): (Vec<FmRow>, Vec<FmRow>) = current.into_iter().partition(|r| !r.coeffs[v].is_zero());
        let (pos, neg): (Vec<&FmRow>, Vec<&FmRow>) = touching.iter().partition(|r| r.coeffs[v].is_positive());
        let mut seen: HashMap<Vec<Q>, usize> = next.iter().enumerate().map(|(i, r)| (r.coeffs.clone(), i)).collect();
        for p in &pos {
            for q in &neg {
                let fp = -&q.coeffs[v];
                let fq = p.coeffs[v].clone();
                let history: Vec<u64> = p.history.iter().zip(&q.history).map(|(a, b)| a | b).collect();
                let mut row = FmRow {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a * &fp + b * &fq).collect(),
                    b: &p.b * &fp + &q.b * &fq,
                    history,
                };
                row.coeffs[v] = Q::zero();
                if row.history_len() > steps + 1 {
                    continue;
                }
                row.normalize();
                match seen.get(&row.coeffs) {
                    Some(&i) if next[i].b <= row.b => {}
                    Some(&i) => next[i] = row,
                    None => {
                        seen.insert(row.coeffs.clone(), next.len());
                        next.push(row);
                    }
                }
            }
        }
        current = next;
    }
}

/// Least common multiple of the denominators, for integer scaling.
pub fn common_denominator(values: &[Q]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
