//! The generalized coefficients `f`, `f₁`, `f₂` by chain summation, and the
//! closed form for level-1 weights.

use std::collections::HashMap;

use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lr::lr;
use crate::partitions::{partitions_inside, IntSequence, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainKind {
    #[serde(rename = "f_sun")]
    FSun,
    #[serde(rename = "f1")]
    F1,
    #[serde(rename = "f2")]
    F2,
}

impl ChainKind {
    pub fn name(self) -> &'static str {
        match self {
            ChainKind::FSun => "f_sun",
            ChainKind::F1 => "f1",
            ChainKind::F2 => "f2",
        }
    }

    fn check_m(self, m: usize) -> Result<()> {
        let ok = match self {
            ChainKind::FSun => m >= 4 && m.is_multiple_of(2),
            ChainKind::F1 => m >= 4,
            ChainKind::F2 => m >= 3,
        };
        if ok {
            return Ok(());
        }
        let need = match self {
            ChainKind::FSun => "an even m >= 4",
            ChainKind::F1 => "m >= 4",
            ChainKind::F2 => "m >= 3",
        };
        Err(Error::shape(format!("{} needs {need}, got m = {m}", self.name())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainProblem {
    pub kind: ChainKind,
    pub n: usize,
    pub lambdas: Vec<IntSequence>,
}

impl ChainProblem {
    pub fn new(kind: ChainKind, n: usize, lambdas: Vec<IntSequence>) -> Result<Self> {
        let p = ChainProblem { kind, n, lambdas };
        p.validate()?;
        Ok(p)
    }

    pub fn from_partitions(kind: ChainKind, n: usize, lambdas: &[Partition]) -> Result<Self> {
        ChainProblem::new(kind, n, lambdas.iter().map(IntSequence::from).collect())
    }

    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("rank n must be positive"));
        }
        self.kind.check_m(self.m())?;
        for (i, l) in self.lambdas.iter().enumerate() {
            IntSequence::new(l.parts().to_vec())?;
            if l.len() > self.n {
                return Err(Error::invalid(format!("lambda({}) = {:?} has more than n = {} parts", i + 1, l, self.n)));
            }
        }
        Ok(())
    }

    /// The same problem with every sequence multiplied by `r`.
    pub fn stretched(&self, r: i64) -> Result<ChainProblem> {
        let lambdas = self.lambdas.iter().map(|l| crate::partitions::stretch(l, r)).collect::<Result<_>>()?;
        Ok(ChainProblem { kind: self.kind, n: self.n, lambdas })
    }

    fn partitions(&self) -> Option<Vec<Partition>> {
        self.lambdas.iter().map(IntSequence::to_partition).collect()
    }
}

/// Dispatches on the problem kind.
pub fn evaluate(p: &ChainProblem) -> Result<u64> {
    match p.kind {
        ChainKind::FSun => f_sun(p),
        ChainKind::F1 => f1(p),
        ChainKind::F2 => f2(p),
    }
}

fn expect_kind(p: &ChainProblem, kind: ChainKind) -> Result<()> {
    if p.kind != kind {
        return Err(Error::invalid(format!("expected a {} problem, got {}", kind.name(), p.kind.name())));
    }
    p.validate()
}

/// Sparse vector over partitions.
type Weights = HashMap<Partition, u64>;

/// Tracks the largest single LR factor met during a chain sum.
#[derive(Default)]
struct Stats {
    max_factor: u64,
}

/// One step of a chain: `out[β] = Σ_α w[α] · c^{target}_{α,β}` over
/// `β ⊆ target ∩ bound`.
fn step(w: &Weights, target: &Partition, bound: Option<&Partition>, stats: &mut Stats) -> Weights {
    step_with(w, target, bound, stats, &lr)
}

fn step_with<F>(w: &Weights, target: &Partition, bound: Option<&Partition>, stats: &mut Stats, coeff: &F) -> Weights
where
    F: Fn(&Partition, &Partition, &Partition) -> u64,
{
    let mut out = Weights::new();
    let region = bound.map_or_else(|| target.clone(), |b| target.meet(b));
    let mut by_size: HashMap<u64, Vec<Partition>> = HashMap::new();
    for (a, &wa) in w {
        let Some(s) = target.size().checked_sub(a.size()) else { continue };
        let cands = by_size.entry(s).or_insert_with(|| partitions_inside(&region, Some(s)));
        for b in cands.iter() {
            let c = coeff(a, b, target);
            if c != 0 {
                stats.max_factor = stats.max_factor.max(c);
                *out.entry(b.clone()).or_insert(0) += wa * c;
            }
        }
    }
    out
}

/// Cyclic chain sum over partition input; returns the value and the
/// largest LR factor encountered.
fn sun_sum(lambdas: &[Partition]) -> (u64, u64) {
    sun_sum_with(lambdas, &lr)
}

/// Cyclic chain sum with an arbitrary coefficient `coeff(α, β, λ)` standing
/// in for `c^λ_{α,β}`.
pub(crate) fn sun_sum_with<F>(lambdas: &[Partition], coeff: &F) -> (u64, u64)
where
    F: Fn(&Partition, &Partition, &Partition) -> u64 + Sync,
{
    let m = lambdas.len();
    let (even, odd) = lambdas.iter().enumerate().fold((0, 0), |(e, o), (i, l)| {
        // i is 0-based, so λ(i+1) is odd when i is even
        if i % 2 == 0 {
            (e, o + l.size())
        } else {
            (e + l.size(), o)
        }
    });
    if even != odd {
        return (0, 0);
    }
    let anchors = partitions_inside(&lambdas[m - 1].meet(&lambdas[0]), None);
    anchors
        .par_iter()
        .map(|a1| {
            let mut stats = Stats::default();
            let mut w = Weights::from([(a1.clone(), 1)]);
            for i in 0..m - 1 {
                w = step_with(&w, &lambdas[i], Some(&lambdas[i + 1]), &mut stats, coeff);
                if w.is_empty() {
                    return (0, stats.max_factor);
                }
            }
            let last = &lambdas[m - 1];
            let mut total = 0;
            for (am, &wm) in &w {
                let c = coeff(am, a1, last);
                if c != 0 {
                    stats.max_factor = stats.max_factor.max(c);
                    total += wm * c;
                }
            }
            (total, stats.max_factor)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1.max(y.1)))
}

/// `f(λ(1),…,λ(m)) = Σ Π c^{λ(i)}_{α(i),α(i+1)}` over cyclic chains.
/// Non-partition input gives 0.
pub fn f_sun(p: &ChainProblem) -> Result<u64> {
    expect_kind(p, ChainKind::FSun)?;
    Ok(p.partitions().map_or(0, |ls| sun_sum(&ls).0))
}

/// `f_sun` on partitions, skipping problem validation.
pub fn f_sun_partitions(lambdas: &[Partition]) -> u64 {
    sun_sum(lambdas).0
}

/// `f_sun` together with the largest single LR factor used in the sum.
pub fn f_sun_with_max_factor(p: &ChainProblem) -> Result<(u64, u64)> {
    expect_kind(p, ChainKind::FSun)?;
    Ok(p.partitions().map_or((0, 0), |ls| sun_sum(&ls)))
}

fn require_partitions(p: &ChainProblem) -> Result<Vec<Partition>> {
    p.partitions().ok_or_else(|| Error::invalid(format!("{} is only defined on partitions", p.kind.name())))
}

/// Partitions `α` with `c^α_{a,b}` possibly nonzero.
fn products(a: &Partition, b: &Partition) -> Vec<Partition> {
    let rows = a.len() + b.len();
    let width = a.get(0) + b.get(0);
    let bound = Partition::rectangle(width, rows);
    partitions_inside(&bound, Some(a.size() + b.size()))
        .into_iter()
        .filter(|al| al.contains(a) && al.contains(b))
        .collect()
}

/// `f₁ = Σ c^{α(1)}_{λ(1),λ(2)} c^{λ(3)}_{α(1),α(2)} ⋯ c^{α(m-3)}_{λ(m-1),λ(m)}`.
pub fn f1(p: &ChainProblem) -> Result<u64> {
    expect_kind(p, ChainKind::F1)?;
    let ls = require_partitions(p)?;
    let m = ls.len();
    let mut stats = Stats::default();
    let mut w = Weights::new();
    for a in products(&ls[0], &ls[1]) {
        if m > 4 && !ls[2].contains(&a) {
            continue;
        }
        let c = lr(&ls[0], &ls[1], &a);
        if c != 0 {
            w.insert(a, c);
        }
    }
    for i in 2..m - 2 {
        let bound = if i + 1 < m - 2 { Some(&ls[i + 1]) } else { None };
        w = step(&w, &ls[i], bound, &mut stats);
    }
    Ok(w.iter().map(|(a, &wa)| wa * lr(&ls[m - 2], &ls[m - 1], a)).sum())
}

/// `f₂ = Σ c^{λ(2)}_{λ(1),α(1)} c^{λ(3)}_{α(1),α(2)} ⋯ c^{λ(m-1)}_{α(m-3),λ(m)}`.
pub fn f2(p: &ChainProblem) -> Result<u64> {
    expect_kind(p, ChainKind::F2)?;
    let ls = require_partitions(p)?;
    let m = ls.len();
    let mut stats = Stats::default();
    let mut w = Weights::from([(ls[0].clone(), 1)]);
    for i in 1..m - 2 {
        w = step(&w, &ls[i], Some(&ls[i + 1]), &mut stats);
    }
    Ok(w.iter().map(|(a, &wa)| wa * lr(a, &ls[m - 1], &ls[m - 2])).sum())
}

/// A level-1 weight: on flag `i` the single unit sits at vertex `j_i`
/// (0 for an empty flag). The matching tuple is `λ(i) = (N^{j_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelOneSpec {
    pub jumps: Vec<usize>,
}

impl LevelOneSpec {
    pub fn new(jumps: Vec<usize>) -> Self {
        LevelOneSpec { jumps }
    }

    /// `J_i = j_i − j_{i+1} + j_{i+2}`, indices cyclic.
    pub fn big_j(&self) -> Vec<i64> {
        let m = self.jumps.len();
        let j = |i: usize| self.jumps[i % m] as i64;
        (0..m).map(|i| j(i) - j(i + 1) + j(i + 2)).collect()
    }

    /// `λ(i) = (N^{j_i})`.
    pub fn lambdas(&self, big_n: u32) -> Vec<Partition> {
        self.jumps.iter().map(|&j| Partition::rectangle(big_n, j)).collect()
    }

    pub fn problem(&self, big_n: u32, n: usize) -> Result<ChainProblem> {
        ChainProblem::from_partitions(ChainKind::FSun, n, &self.lambdas(big_n))
    }
}

/// Closed form `C(N+s, N)` with `s = min{j_i, J_i}`, or 0 when the balance
/// or the `J_i ≥ 0` condition fails.
pub fn level1_f(spec: &LevelOneSpec, big_n: u64, m: usize) -> Result<u64> {
    if m < 4 || m % 2 == 1 {
        return Err(Error::shape(format!("level-1 formula needs an even m >= 4, got {m}")));
    }
    if spec.jumps.len() != m {
        return Err(Error::invalid(format!("expected {m} jumps, got {}", spec.jumps.len())));
    }
    let odd: usize = spec.jumps.iter().step_by(2).sum();
    let even: usize = spec.jumps.iter().skip(1).step_by(2).sum();
    let big_j = spec.big_j();
    if odd != even || big_j.iter().any(|&x| x < 0) {
        return Ok(0);
    }
    let s = spec.jumps.iter().map(|&x| x as i64).chain(big_j).min().unwrap_or(0) as u64;
    Ok(binomial(big_n + s, big_n))
}

/// `[f(N·λ)]` for `N = 1..=n_max`, each evaluated from scratch.
pub fn stretched_table(p: &ChainProblem, n_max: u32) -> Result<Vec<u64>> {
    if n_max == 0 {
        return Err(Error::invalid("N_max must be at least 1"));
    }
    (1..=n_max as i64).map(|r| evaluate(&p.stretched(r)?)).collect()
}
