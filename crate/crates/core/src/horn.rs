//! Horn-type inequalities for `f`: subset tuples, `underline-λ`, the tuple
//! set `T(n,m)`, cone membership, saturation and factorization reports, and
//! the embedded `n = 2, m = 6` facet list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generalized::{f_sun, f_sun_partitions, ChainKind, ChainProblem};
use crate::hive::lp::{lp_feasible, LinearSystem};
use crate::partitions::{conjugate, lambda_of_set, IntSequence, Partition, Subset, MAX_SUBSET_RANK};
use crate::quiver::{beta_from_subsets, DimensionVector, SunQuiver};

/// Default cap on the number of subset tuples `generate_t` may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

/// An `m`-tuple of subsets of `{1..n}`, flags numbered from 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTuple", into = "RawTuple")]
pub struct SubsetTuple {
    n: usize,
    subsets: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct RawTuple {
    n: usize,
    subsets: Vec<Subset>,
}

impl TryFrom<RawTuple> for SubsetTuple {
    type Error = Error;

    fn try_from(raw: RawTuple) -> Result<Self> {
        SubsetTuple::new(raw.n, raw.subsets)
    }
}

impl From<SubsetTuple> for RawTuple {
    fn from(t: SubsetTuple) -> Self {
        RawTuple { n: t.n, subsets: t.subsets }
    }
}

impl SubsetTuple {
    pub fn new(n: usize, subsets: Vec<Subset>) -> Result<Self> {
        let m = subsets.len();
        if m < 4 || m % 2 == 1 {
            return Err(Error::shape(format!("subset tuples need an even m >= 4, got m = {m}")));
        }
        if n == 0 || n > MAX_SUBSET_RANK {
            return Err(Error::invalid(format!("n must lie in 1..={MAX_SUBSET_RANK}, got {n}")));
        }
        for s in &subsets {
            s.check_rank(n)?;
        }
        Ok(SubsetTuple { n, subsets })
    }

    pub fn from_masks(n: usize, masks: &[u64]) -> Result<Self> {
        SubsetTuple::new(n, masks.iter().map(|&mk| Subset::from_mask(mk)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.subsets.len()
    }

    /// `I_i` for `i` in `1..=m`; `0` and `m + 1` wrap around.
    pub fn subset(&self, i: usize) -> &Subset {
        let m = self.m();
        &self.subsets[(i + m - 1) % m]
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn total_size(&self) -> usize {
        self.subsets.iter().map(Subset::len).sum()
    }

    pub fn is_full(&self) -> bool {
        self.subsets.iter().all(|s| s.len() == self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.iter().all(Subset::is_empty)
    }

    /// `J_i = I_{σ(i)}` for a permutation `σ` of 0-based flag indices.
    pub fn permuted(&self, sigma: &[usize]) -> SubsetTuple {
        SubsetTuple { n: self.n, subsets: sigma.iter().map(|&k| self.subsets[k].clone()).collect() }
    }

    /// Smallest tuple in the orbit under [`flag_symmetries`].
    pub fn orbit_representative(&self) -> SubsetTuple {
        flag_symmetries(self.m()).iter().map(|s| self.permuted(s)).min().expect("group is nonempty")
    }
}

impl PartialOrd for SubsetTuple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetTuple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.total_size(), &self.subsets).cmp(&(other.n, other.total_size(), &other.subsets))
    }
}

impl fmt::Debug for SubsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.subsets).finish()
    }
}

/// Flag permutations preserving the sun quiver: rotations by two and the
/// reflections fixing the parity of every flag.
pub fn flag_symmetries(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(m);
    for s in (0..m).step_by(2) {
        out.push((0..m).map(|i| (i + s) % m).collect());
        out.push((0..m).map(|i| (m - i + s) % m).collect());
    }
    out
}

/// All images of `tuples` under [`flag_symmetries`].
pub fn symmetry_closure<'a>(tuples: impl IntoIterator<Item = &'a SubsetTuple>) -> BTreeSet<SubsetTuple> {
    let mut out = BTreeSet::new();
    for t in tuples {
        for s in flag_symmetries(t.m()) {
            out.insert(t.permuted(&s));
        }
    }
    out
}

/// `Σ_{i even} Σ_{j ∈ I_i} λ(i)_j ≤ Σ_{i odd} Σ_{j ∈ I_i} λ(i)_j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HornInequality {
    pub tuple: SubsetTuple,
}

impl HornInequality {
    pub fn new(tuple: SubsetTuple) -> Self {
        HornInequality { tuple }
    }

    /// Coefficient of `λ(i)_j` (1-based) in `lhs − rhs`.
    pub fn coefficient(&self, i: usize, j: usize) -> i64 {
        if !self.tuple.subset(i).contains(j) {
            0
        } else if i.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `rhs − lhs`; the inequality holds iff this is nonnegative.
    pub fn slack(&self, lambdas: &[Vec<BigRational>]) -> BigRational {
        let mut total = BigRational::zero();
        for (idx, l) in lambdas.iter().enumerate() {
            for (jdx, v) in l.iter().enumerate() {
                match self.coefficient(idx + 1, jdx + 1) {
                    1 => total -= v,
                    -1 => total += v,
                    _ => {}
                }
            }
        }
        total
    }

    pub fn slack_int(&self, lambdas: &[Vec<i64>]) -> i64 {
        let mut total = 0;
        for (idx, l) in lambdas.iter().enumerate() {
            for (jdx, v) in l.iter().enumerate() {
                total -= self.coefficient(idx + 1, jdx + 1) * v;
            }
        }
        total
    }

    fn side(&self, parity: usize) -> String {
        let n = self.tuple.n();
        let mut terms = Vec::new();
        for i in (1..=self.tuple.m()).filter(|i| i % 2 == parity) {
            let s = self.tuple.subset(i);
            if n > 1 && s.len() == n {
                terms.push(format!("|λ({i})|"));
            } else {
                terms.extend(s.elements().iter().map(|j| format!("λ({i})_{j}")));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for HornInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≤ {}", self.side(0), self.side(1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `f(underline-λ) = 1`
    #[serde(alias = "one")]
    EqualOne,
    /// `f(underline-λ) ≠ 0`
    Nonzero,
}

/// The sequences `underline-λ(I_i)`; entry `i` has `n − |I_i|` slots and
/// may contain negative parts.
pub fn underline_lambda(t: &SubsetTuple) -> Vec<IntSequence> {
    let n = t.n();
    (1..=t.m())
        .map(|i| {
            let s = t.subset(i);
            let slots = n - s.len();
            let base = conjugate(&lambda_of_set(s, n).expect("tuple subsets are in range"));
            let shift = if i % 2 == 0 {
                0
            } else {
                s.len() as i64 - t.subset(i - 1).len() as i64 - t.subset(i + 1).len() as i64
            };
            let parts = (0..slots).map(|k| i64::from(base.get(k)) - shift).collect();
            IntSequence::new(parts).expect("a partition minus a constant is decreasing")
        })
        .collect()
}

fn underline_partitions(t: &SubsetTuple) -> Option<Vec<Partition>> {
    underline_lambda(t).iter().map(IntSequence::to_partition).collect()
}

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if m < 4 || m % 2 == 1 {
        return Err(Error::shape(format!("m must be even and at least 4, got {m}")));
    }
    Ok(())
}

/// Number of subset tuples `generate_t` would visit.
pub fn tuple_count(n: usize, m: usize) -> Option<u128> {
    1u128.checked_shl(u32::try_from(n * m).ok()?)
}

/// `T(n,m)` (or its `≠ 0` relaxation), sorted by total size and then
/// lexicographically.
pub fn generate_t(n: usize, m: usize, variant: Variant, budget: u128) -> Result<Vec<SubsetTuple>> {
    check_nm(n, m)?;
    let needed = tuple_count(n, m).unwrap_or(u128::MAX);
    if needed > budget || n > MAX_SUBSET_RANK {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let memo: DashMap<Vec<Partition>, u64> = DashMap::new();
    let width = 1u64 << n;
    let mut out: Vec<SubsetTuple> = (0..needed as u64)
        .into_par_iter()
        .filter_map(|code| {
            let masks: Vec<u64> = (0..m).map(|i| (code >> (i * n)) % width).collect();
            let t = SubsetTuple::from_masks(n, &masks).expect("masks are in range");
            if t.is_full() {
                return None;
            }
            let under = underline_partitions(&t)?;
            let value = match memo.get(&under) {
                Some(v) => *v,
                None => {
                    let v = f_sun_partitions(&under);
                    memo.insert(under, v);
                    v
                }
            };
            let keep = match variant {
                Variant::EqualOne => value == 1,
                Variant::Nonzero => value != 0,
            };
            keep.then_some(t)
        })
        .collect();
    out.sort();
    Ok(out)
}

type TCache = DashMap<(usize, usize, Variant), Arc<Vec<SubsetTuple>>>;

static T_CACHE: Lazy<TCache> = Lazy::new(DashMap::new);

/// Cached [`generate_t`] under [`DEFAULT_BUDGET`].
pub fn t_set(n: usize, m: usize, variant: Variant) -> Result<Arc<Vec<SubsetTuple>>> {
    t_set_with_budget(n, m, variant, DEFAULT_BUDGET)
}

pub fn t_set_with_budget(n: usize, m: usize, variant: Variant, budget: u128) -> Result<Arc<Vec<SubsetTuple>>> {
    check_nm(n, m)?;
    let needed = tuple_count(n, m).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if let Some(v) = T_CACHE.get(&(n, m, variant)) {
        return Ok(v.clone());
    }
    let list = Arc::new(generate_t(n, m, variant, budget)?);
    T_CACHE.insert((n, m, variant), list.clone());
    Ok(list)
}

/// `m` weakly decreasing sequences of `n` exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTuple {
    n: usize,
    lambdas: Vec<Vec<BigRational>>,
}

impl RationalTuple {
    /// Pads each sequence with zeros to length `n`.
    pub fn new(n: usize, lambdas: Vec<Vec<BigRational>>) -> Result<Self> {
        let mut padded = Vec::with_capacity(lambdas.len());
        for (i, mut l) in lambdas.into_iter().enumerate() {
            if l.len() > n {
                return Err(Error::invalid(format!("lambda({}) has more than n = {n} entries", i + 1)));
            }
            l.resize(n, BigRational::zero());
            if l.windows(2).any(|w| w[0] < w[1]) {
                let shown: Vec<String> = l.iter().map(|q| q.to_string()).collect();
                return Err(Error::invalid(format!(
                    "lambda({}) = [{}] is not weakly decreasing (after padding to n = {n})",
                    i + 1,
                    shown.join(", ")
                )));
            }
            padded.push(l);
        }
        Ok(RationalTuple { n, lambdas: padded })
    }

    pub fn from_sequences(n: usize, seqs: &[IntSequence]) -> Result<Self> {
        let lambdas =
            seqs.iter().map(|s| s.parts().iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        RationalTuple::new(n, lambdas)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[Vec<BigRational>] {
        &self.lambdas
    }

    /// `Σ_{i odd}|λ(i)| − Σ_{i even}|λ(i)|`.
    pub fn imbalance(&self) -> BigRational {
        self.lambdas
            .iter()
            .enumerate()
            .map(|(idx, l)| {
                let s: BigRational = l.iter().sum();
                if idx % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum()
    }

    pub fn scaled(&self, c: &BigRational) -> RationalTuple {
        let lambdas = self.lambdas.iter().map(|l| l.iter().map(|v| v * c).collect()).collect();
        RationalTuple { n: self.n, lambdas }
    }

    pub fn add(&self, other: &RationalTuple) -> Result<RationalTuple> {
        if self.n != other.n || self.m() != other.m() {
            return Err(Error::invalid("tuples have different shapes"));
        }
        let lambdas = self
            .lambdas
            .iter()
            .zip(&other.lambdas)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(RationalTuple { n: self.n, lambdas })
    }
}

/// Balance plus every inequality indexed by `T(n,m)` of the given variant.
pub fn in_cone(t: &RationalTuple, variant: Variant) -> Result<bool> {
    in_cone_with_budget(t, variant, DEFAULT_BUDGET)
}

pub fn in_cone_with_budget(t: &RationalTuple, variant: Variant, budget: u128) -> Result<bool> {
    check_nm(t.n(), t.m())?;
    if !t.imbalance().is_zero() {
        return Ok(false);
    }
    let tuples = t_set_with_budget(t.n(), t.m(), variant, budget)?;
    Ok(tuples.iter().all(|i| !HornInequality::new(i.clone()).slack(t.lambdas()).is_negative()))
}

/// The first violated inequality, if any.
pub fn violated_inequality(t: &RationalTuple, variant: Variant) -> Result<Option<HornInequality>> {
    check_nm(t.n(), t.m())?;
    let tuples = t_set(t.n(), t.m(), variant)?;
    Ok(tuples.iter().map(|i| HornInequality::new(i.clone())).find(|h| h.slack(t.lambdas()).is_negative()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub passed: bool,
    pub values: Vec<u64>,
    /// Stretch factors whose zero/nonzero status differs from `r = 1`.
    pub witnesses: Vec<u32>,
}

/// `f(rλ)` for `r = 1..=r_max`, checking that zero/nonzero never changes.
pub fn saturation_report(p: &ChainProblem, r_max: u32) -> Result<SaturationReport> {
    if r_max < 2 {
        return Err(Error::invalid(format!("r_max must be at least 2, got {r_max}")));
    }
    let values = (1..=r_max as i64).map(|r| f_sun(&p.stretched(r)?)).collect::<Result<Vec<_>>>()?;
    let base = values[0] != 0;
    let witnesses: Vec<u32> = (1..=r_max).filter(|&r| (values[r as usize - 1] != 0) != base).collect();
    Ok(SaturationReport { passed: witnesses.is_empty(), values, witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub passed: bool,
    /// `[f(λ), f(λ*), f(λ#)]`
    pub values: Vec<u64>,
    pub tuple: SubsetTuple,
    pub star: Vec<Partition>,
    pub sharp: Vec<Partition>,
}

fn integer_rows(p: &ChainProblem) -> Result<Vec<Vec<i64>>> {
    p.lambdas.iter().map(|l| l.padded(p.n)).collect()
}

fn chain_partitions(p: &ChainProblem) -> Result<Vec<Partition>> {
    if p.kind != ChainKind::FSun {
        return Err(Error::invalid(format!("expected an f_sun problem, got {}", p.kind.name())));
    }
    p.validate()?;
    p.lambdas
        .iter()
        .enumerate()
        .map(|(i, l)| {
            l.to_partition().ok_or_else(|| Error::invalid(format!("lambda({}) = {:?} is not a partition", i + 1, l)))
        })
        .collect()
}

/// `f(λ) = f(λ*)·f(λ#)` for a tuple `I ∈ T(n,m)` whose inequality is tight.
pub fn factorization_check(p: &ChainProblem, tuple: &SubsetTuple) -> Result<FactorizationReport> {
    let ps = chain_partitions(p)?;
    if tuple.n() != p.n || tuple.m() != p.m() {
        return Err(Error::invalid(format!(
            "tuple has (n={}, m={}), problem has (n={}, m={})",
            tuple.n(),
            tuple.m(),
            p.n,
            p.m()
        )));
    }
    if !t_set(p.n, p.m(), Variant::EqualOne)?.contains(tuple) {
        return Err(Error::Precondition(format!("{tuple:?} is not in T({}, {})", p.n, p.m())));
    }
    let slack = HornInequality::new(tuple.clone()).slack_int(&integer_rows(p)?);
    if slack != 0 {
        return Err(Error::Precondition(format!("{tuple:?} is not a wall for this tuple: slack {slack}")));
    }
    let mut star = Vec::with_capacity(ps.len());
    let mut sharp = Vec::with_capacity(ps.len());
    for (idx, l) in ps.iter().enumerate() {
        let s = tuple.subset(idx + 1);
        let inside: Vec<usize> = s.elements().iter().map(|j| j - 1).collect();
        let outside: Vec<usize> = s.complement(p.n).elements().iter().map(|j| j - 1).collect();
        star.push(l.select(&inside));
        sharp.push(l.select(&outside));
    }
    let values = vec![f_sun_partitions(&ps), f_sun_partitions(&star), f_sun_partitions(&sharp)];
    Ok(FactorizationReport { passed: values[0] == values[1] * values[2], values, tuple: tuple.clone(), star, sharp })
}

/// Nontrivial tuples of `T(n,m)` whose inequality is tight on `p`.
pub fn wall_search(p: &ChainProblem) -> Result<Vec<SubsetTuple>> {
    chain_partitions(p)?;
    let rows = integer_rows(p)?;
    Ok(t_set(p.n, p.m(), Variant::EqualOne)?
        .iter()
        .filter(|t| !t.is_empty() && HornInequality::new((*t).clone()).slack_int(&rows) == 0)
        .cloned()
        .collect())
}

/// The cone `{λ : balance, λ(i) weakly decreasing and nonnegative, all given
/// inequalities}`
/// as a linear system over the `n·m` entries.
fn cone_system(n: usize, m: usize, tuples: &[&SubsetTuple]) -> Result<LinearSystem> {
    let var = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let names = (1..=m).flat_map(|i| (1..=n).map(move |j| format!("l{i}_{j}"))).collect();
    let mut s = LinearSystem::new(names);
    let zero = BigRational::zero();
    for i in 1..=m {
        for j in 1..n {
            s.push(&[(var(i, j + 1), 1), (var(i, j), -1)], zero.clone(), format!("chamber{i}_{j}"))?;
        }
        s.push(&[(var(i, n), -1)], zero.clone(), format!("nonneg{i}"))?;
    }
    let balance: Vec<(usize, i64)> =
        (1..=m).flat_map(|i| (1..=n).map(move |j| (var(i, j), if i % 2 == 0 { 1 } else { -1 }))).collect();
    s.push_eq(&balance, zero.clone(), "balance")?;
    for (k, t) in tuples.iter().enumerate() {
        let h = HornInequality::new((*t).clone());
        let terms: Vec<(usize, i64)> = (1..=m)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| (var(i, j), h.coefficient(i, j)))
            .filter(|&(_, c)| c != 0)
            .collect();
        s.push(&terms, zero.clone(), format!("horn{k}"))?;
    }
    Ok(s)
}

/// Tuples whose inequality is not implied by the others together with the
/// balance and nonnegative chamber conditions, decided by exact feasibility of
/// `{others, lhs − rhs ≥ 1}`. The input should be closed under symmetry.
pub fn irredundant(n: usize, m: usize, tuples: &[SubsetTuple]) -> Result<Vec<SubsetTuple>> {
    check_nm(n, m)?;
    let reps: BTreeSet<SubsetTuple> = tuples.iter().map(SubsetTuple::orbit_representative).collect();
    let keep: Vec<SubsetTuple> = reps
        .into_par_iter()
        .map(|rep| -> Result<Option<SubsetTuple>> {
            let others: Vec<&SubsetTuple> = tuples.iter().filter(|t| **t != rep).collect();
            let mut s = cone_system(n, m, &others)?;
            let h = HornInequality::new(rep.clone());
            let terms: Vec<(usize, i64)> = (1..=m)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .map(|(i, j)| ((i - 1) * n + (j - 1), -h.coefficient(i, j)))
                .filter(|&(_, c)| c != 0)
                .collect();
            s.push(&terms, BigRational::from_integer((-1).into()), "violated")?;
            Ok(lp_feasible(&s).then_some(rep))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(symmetry_closure(&keep).into_iter().collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub subsets: Vec<Subset>,
    pub printed: Vec<i64>,
    pub inequality: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenFacets {
    pub version: u32,
    pub n: usize,
    pub m: usize,
    pub print_order: Vec<(usize, usize)>,
    pub entries: Vec<GoldenEntry>,
}

static GOLDEN_JSON: &str = include_str!("../data/facets_2_6.json");

impl GoldenFacets {
    pub fn tuples(&self) -> Vec<SubsetTuple> {
        self.entries
            .iter()
            .map(|e| SubsetTuple::new(self.n, e.subsets.clone()).expect("golden data is well formed"))
            .collect()
    }

    pub fn inequalities(&self) -> Vec<HornInequality> {
        self.tuples().into_iter().map(HornInequality::new).collect()
    }

    /// `β₁` for every entry, built from its subsets.
    pub fn dimension_vectors(&self) -> Vec<DimensionVector> {
        let q = SunQuiver::new(self.n, self.m / 2).expect("golden shape is a sun quiver");
        self.tuples().iter().map(|t| beta_from_subsets(t, &q).expect("shapes agree")).collect()
    }

    /// A dimension vector listed in the printed vertex order.
    pub fn printed(&self, b: &DimensionVector) -> Vec<i64> {
        self.print_order.iter().map(|&x| b.get(x)).collect()
    }

    pub fn closure(&self) -> BTreeSet<SubsetTuple> {
        symmetry_closure(&self.tuples())
    }
}

/// The embedded `n = 2, m = 6` list: fourteen inequality schemas and their
/// `β₁` diagrams.
pub fn facets_2_6_golden() -> GoldenFacets {
    serde_json::from_str(GOLDEN_JSON).expect("embedded golden data parses")
}

/// Facets for `n = 2, m = 6` computed from scratch: `T(2,6)` reduced to its
/// irredundant inequalities.
pub fn facets_2_6_generated() -> Result<Vec<SubsetTuple>> {
    let t = t_set(2, 6, Variant::EqualOne)?;
    irredundant(2, 6, &t)
}

/// Orbit representatives grouped by total size, for reports.
pub fn orbit_summary(tuples: &[SubsetTuple]) -> BTreeMap<usize, usize> {
    let reps: BTreeSet<SubsetTuple> = tuples.iter().map(SubsetTuple::orbit_representative).collect();
    let mut out = BTreeMap::new();
    for r in reps {
        *out.entry(r.total_size()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_in_box;
    use crate::quiver::{is_fundamental_schur, sigma_apply, sigma_from_subsets, weight_sigma1};

    fn tuple(n: usize, ls: &[&[usize]]) -> SubsetTuple {
        SubsetTuple::new(n, ls.iter().map(|s| Subset::new(s.to_vec()).unwrap()).collect()).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn rt(n: usize, ls: &[&[i64]]) -> RationalTuple {
        RationalTuple::new(n, ls.iter().map(|l| l.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    fn seq(v: &[i64]) -> IntSequence {
        IntSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn underline_examples() {
        let full = tuple(2, &[&[1, 2][..]; 4]);
        assert!(underline_lambda(&full).iter().all(IntSequence::is_empty));
        let t = tuple(3, &[&[1, 2, 3], &[2, 3], &[1, 2, 3], &[1, 2, 3]]);
        assert_eq!(underline_lambda(&t)[1], seq(&[2]));
        let t = tuple(1, &[&[], &[1], &[], &[1]]);
        assert_eq!(underline_lambda(&t)[0], seq(&[2]));
        assert_eq!(underline_lambda(&t)[2], seq(&[2]));
    }

    #[test]
    fn t_small_cases() {
        let one = generate_t(1, 4, Variant::EqualOne, DEFAULT_BUDGET).unwrap();
        let nonzero = generate_t(1, 4, Variant::Nonzero, DEFAULT_BUDGET).unwrap();
        assert!(!one.is_empty());
        assert!(one.iter().all(|t| nonzero.contains(t)));
        // with n = 1 every inequality restricts Σ_even ≤ Σ_odd to its support
        for t in &nonzero {
            let h = HornInequality::new(t.clone());
            for i in 1..=4 {
                let expected = if !t.subset(i).is_empty() {
                    if i % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                };
                assert_eq!(h.coefficient(i, 1), expected);
            }
        }
        assert!(one.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_is_enforced() {
        let err = generate_t(3, 6, Variant::EqualOne, 1000).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 1 << 18, budget: 1000 });
        assert!(generate_t(2, 5, Variant::EqualOne, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn size_bounds_on_t() {
        for (n, m) in [(1, 4), (2, 4), (1, 6), (2, 6), (3, 4)] {
            for t in t_set(n, m, Variant::EqualOne).unwrap().iter() {
                for i in (1..=m).step_by(2) {
                    let s = t.subset(i);
                    let s_i = (0..=s.len()).find(|&k| !s.contains(n - k)).unwrap_or(s.len());
                    let (prev, next) = (t.subset(i - 1).len(), t.subset(i + 1).len());
                    assert!(prev.max(next) <= s.len(), "{t:?}");
                    assert!(s.len() <= prev + next + s_i, "{t:?}");
                }
            }
        }
    }

    #[test]
    fn cone_examples() {
        let ones = rt(2, &[&[1, 0][..]; 6]);
        assert!(in_cone(&ones, Variant::EqualOne).unwrap());
        let bad = rt(2, &[&[1, 0], &[3, 0], &[1, 0], &[], &[1, 0], &[]]);
        assert!(!in_cone(&bad, Variant::EqualOne).unwrap());
        assert!(!in_cone(&bad, Variant::Nonzero).unwrap());
        let v = violated_inequality(&bad, Variant::EqualOne).unwrap().unwrap();
        assert!(v.slack(bad.lambdas()).is_negative());
        let unbalanced = rt(2, &[&[1, 0], &[2, 0], &[1, 0], &[1, 0], &[1, 0], &[1, 0]]);
        assert!(!in_cone(&unbalanced, Variant::EqualOne).unwrap());
    }

    #[test]
    fn cone_is_convex_cone() {
        let a = rt(2, &[&[2, 1], &[2, 0], &[1, 1], &[2, 1], &[1, 0], &[1, 0]]);
        let b = rt(2, &[&[1, 0][..]; 6]);
        assert!(in_cone(&a, Variant::EqualOne).unwrap());
        assert!(in_cone(&a.add(&b).unwrap(), Variant::EqualOne).unwrap());
        let third = BigRational::new(1.into(), 3.into());
        assert!(in_cone(&a.scaled(&third), Variant::EqualOne).unwrap());
    }

    #[test]
    fn rational_tuple_validation() {
        assert!(RationalTuple::new(2, vec![vec![q(0), q(1)]]).is_err());
        assert!(RationalTuple::new(2, vec![vec![q(-1)]]).is_err());
        assert!(RationalTuple::new(1, vec![vec![q(1), q(0)]]).is_err());
    }

    #[test]
    fn horn_form_matches_weight() {
        let qv = SunQuiver::new(2, 3).unwrap();
        let ls: Vec<IntSequence> = [[2, 1], [3, 0], [1, 1], [2, 2], [4, 0], [1, 0]].iter().map(|l| seq(l)).collect();
        let s1 = weight_sigma1(&ls, 2).unwrap();
        let rows: Vec<Vec<i64>> = ls.iter().map(|l| l.padded(2).unwrap()).collect();
        for t in t_set(2, 6, Variant::EqualOne).unwrap().iter().take(50) {
            let b = beta_from_subsets(t, &qv).unwrap();
            assert_eq!(sigma_apply(&s1, &b).unwrap(), -HornInequality::new(t.clone()).slack_int(&rows));
            assert!(sigma_from_subsets(t, &qv).is_ok());
        }
    }

    #[test]
    fn saturation_examples() {
        let p = ChainProblem::new(ChainKind::FSun, 2, vec![seq(&[1, 0]); 6]).unwrap();
        let r = saturation_report(&p, 3).unwrap();
        assert_eq!((r.passed, r.values.clone()), (true, vec![2, 3, 4]));
        let p = ChainProblem::new(ChainKind::FSun, 2, vec![seq(&[1]), seq(&[2]), seq(&[1]), seq(&[1])]).unwrap();
        assert_eq!(saturation_report(&p, 3).unwrap().values, vec![0, 0, 0]);
        let p = ChainProblem::new(ChainKind::FSun, 2, vec![IntSequence::empty(); 4]).unwrap();
        assert_eq!(saturation_report(&p, 3).unwrap().values, vec![1, 1, 1]);
        assert!(saturation_report(&p, 1).is_err());
    }

    #[test]
    fn factorization_examples() {
        let zero = ChainProblem::new(ChainKind::FSun, 2, vec![IntSequence::empty(); 6]).unwrap();
        for t in t_set(2, 6, Variant::EqualOne).unwrap().iter().take(20) {
            let r = factorization_check(&zero, t).unwrap();
            assert_eq!(r.values, vec![1, 1, 1]);
        }
        let ones = ChainProblem::new(ChainKind::FSun, 2, vec![seq(&[1, 0]); 6]).unwrap();
        let walls = wall_search(&ones).unwrap();
        assert!(!walls.is_empty());
        for w in &walls {
            assert!(factorization_check(&ones, w).unwrap().passed, "{w:?}");
        }
        let loose = tuple(2, &[&[1], &[1], &[1], &[], &[], &[]]);
        let two = ChainProblem::new(ChainKind::FSun, 2, vec![seq(&[2, 1]); 6]).unwrap();
        assert!(matches!(factorization_check(&two, &loose), Err(Error::Precondition(_))));
    }

    #[test]
    fn golden_data() {
        let g = facets_2_6_golden();
        assert_eq!(g.entries.len(), 14);
        let dims = g.dimension_vectors();
        assert_eq!(g.printed(&dims[0])[4..10], [0, 0, 1, 1, 0, 0]);
        let ineqs = g.inequalities();
        for (e, (h, d)) in g.entries.iter().zip(ineqs.iter().zip(&dims)) {
            assert_eq!(h.to_string(), e.inequality);
            assert_eq!(g.printed(d), e.printed);
        }
        let ones: Vec<Vec<BigRational>> = vec![vec![q(1), q(0)]; 6];
        assert!(ineqs.iter().all(|h| !h.slack(&ones).is_negative()));
    }

    #[test]
    fn golden_beta_one_is_not_in_fundamental_region() {
        let g = facets_2_6_golden();
        let qv = SunQuiver::new(2, 3).unwrap();
        let b = &g.dimension_vectors()[0];
        assert!(!is_fundamental_schur(&qv, b));
    }

    #[test]
    fn symmetries() {
        let g = flag_symmetries(6);
        assert_eq!(g.len(), 6);
        for s in &g {
            assert!(s.iter().enumerate().all(|(i, &k)| i % 2 == k % 2));
        }
        let t = tuple(2, &[&[1], &[2], &[], &[], &[], &[]]);
        assert_eq!(symmetry_closure([&t]).len(), 6);
    }

    #[test]
    fn horn_matches_f_small() {
        let shapes = partitions_in_box(1, 2);
        for a in &shapes {
            for b in &shapes {
                for c in &shapes {
                    for d in &shapes {
                        let ls: Vec<IntSequence> = [a, b, c, d].iter().map(|p| IntSequence::from(*p)).collect();
                        let f = f_sun_partitions(&[a.clone(), b.clone(), c.clone(), d.clone()]);
                        let t = RationalTuple::from_sequences(1, &ls).unwrap();
                        assert_eq!(in_cone(&t, Variant::EqualOne).unwrap(), f != 0, "{ls:?}");
                    }
                }
            }
        }
    }
}
