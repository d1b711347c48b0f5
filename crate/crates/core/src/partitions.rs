//! Weakly decreasing integer sequences, partitions and subsets of `{1..n}`.
//!
//! Sequences are identified up to trailing zeros: equality and hashing use
//! the canonical (trimmed) form, and fixed-length views are produced on
//! demand with [`IntSequence::padded`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient rank for which subsets may be packed into a `u64` mask.
pub const MAX_SUBSET_RANK: usize = 62;

fn trimmed<T: Default + PartialEq>(parts: &[T]) -> &[T] {
    let zero = T::default();
    let end = parts.iter().rposition(|p| *p != zero).map_or(0, |i| i + 1);
    &parts[..end]
}

/// A weakly decreasing sequence of integers. Entries may be negative.
#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntSequence {
    parts: Vec<i64>,
}

impl IntSequence {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("sequence {:?} is not weakly decreasing ({} < {})", parts, w[0], w[1])));
        }
        Ok(IntSequence { parts })
    }

    pub fn empty() -> Self {
        IntSequence { parts: Vec::new() }
    }

    /// Raw parts as supplied, possibly with trailing zeros.
    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Parts with trailing zeros removed.
    pub fn canonical(&self) -> &[i64] {
        trimmed(&self.parts)
    }

    /// Number of parts in canonical form. Negative tails count as parts.
    pub fn len(&self) -> usize {
        self.canonical().len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical().is_empty()
    }

    /// Entry `i` (0-based) of the infinite zero extension.
    pub fn get(&self, i: usize) -> i64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Fixed-length view with exactly `n` entries.
    pub fn padded(&self, n: usize) -> Result<Vec<i64>> {
        let canon = self.canonical();
        if canon.len() > n {
            return Err(Error::invalid(format!("sequence {:?} has more than {} parts", canon, n)));
        }
        let mut out = canon.to_vec();
        out.resize(n, 0);
        Ok(out)
    }

    pub fn is_partition(&self) -> bool {
        self.parts.last().is_none_or(|&p| p >= 0)
    }

    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_partition() {
            return None;
        }
        let parts = self.canonical().iter().map(|&p| p as u32).collect();
        Some(Partition { parts })
    }

    /// Adds `a` to each of the first `n` entries (a determinant twist).
    pub fn shifted(&self, a: i64, n: usize) -> Result<IntSequence> {
        let mut parts = self.padded(n)?;
        for p in &mut parts {
            *p += a;
        }
        Ok(IntSequence { parts })
    }

    pub fn min_part(&self, n: usize) -> i64 {
        let last = self.parts.last().copied().unwrap_or(0);
        if self.parts.len() < n {
            last.min(0)
        } else {
            last
        }
    }
}

impl TryFrom<Vec<i64>> for IntSequence {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        IntSequence::new(parts)
    }
}

impl From<IntSequence> for Vec<i64> {
    fn from(seq: IntSequence) -> Vec<i64> {
        seq.parts
    }
}

impl From<&Partition> for IntSequence {
    fn from(p: &Partition) -> Self {
        IntSequence { parts: p.parts.iter().map(|&x| x as i64).collect() }
    }
}

impl From<Partition> for IntSequence {
    fn from(p: Partition) -> Self {
        IntSequence::from(&p)
    }
}

impl PartialEq for IntSequence {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for IntSequence {}

impl Hash for IntSequence {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Debug for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// A partition in canonical form: weakly decreasing, positive parts only.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, trimming trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "partition {:?} is not weakly decreasing ({} < {})",
                parts, w[0], w[1]
            )));
        }
        let len = trimmed(&parts).len();
        parts.truncate(len);
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let len = trimmed(&parts).len();
        parts.truncate(len);
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// `(c^r)`: `r` parts all equal to `c`.
    pub fn rectangle(c: u32, r: usize) -> Self {
        Partition::from_sorted(vec![c; r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    /// True iff the Young diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        contains(other, self)
    }

    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut out = self.parts.clone();
        out.resize(n.max(out.len()), 0);
        out
    }

    /// Componentwise minimum (the largest diagram inside both).
    pub fn meet(&self, other: &Partition) -> Partition {
        let parts = self.parts.iter().zip(&other.parts).map(|(&a, &b)| a.min(b)).collect();
        Partition::from_sorted(parts)
    }

    pub fn scaled(&self, r: u32) -> Partition {
        Partition::from_sorted(self.parts.iter().map(|&p| p * r).collect())
    }

    /// Keeps only the entries at the given 0-based positions (in order).
    pub fn select(&self, positions: &[usize]) -> Partition {
        Partition::from_sorted(positions.iter().map(|&i| self.get(i)).collect())
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        if let Some(&p) = parts.iter().find(|&&p| p < 0 || p > u32::MAX as i64) {
            return Err(Error::invalid(format!("partition {:?} has an out-of-range part {}", parts, p)));
        }
        Partition::new(parts.into_iter().map(|p| p as u32).collect())
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.parts.into_iter().map(i64::from).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// Transpose of the Young diagram.
pub fn conjugate(lambda: &Partition) -> Partition {
    let width = lambda.get(0) as usize;
    let parts = (0..width).map(|j| lambda.parts.iter().take_while(|&&p| p as usize > j).count() as u32).collect();
    Partition::from_sorted(parts)
}

/// `λ(I) = (z_r - r, ..., z_1 - 1)` for `I = {z_1 < ... < z_r}`.
pub fn lambda_of_set(set: &Subset, n: usize) -> Result<Partition> {
    set.check_rank(n)?;
    let parts = set.elements().iter().enumerate().rev().map(|(k, &z)| (z - (k + 1)) as u32).collect();
    Ok(Partition::from_sorted(parts))
}

/// `α_i <= λ_i` for all `i`.
pub fn contains(alpha: &Partition, lambda: &Partition) -> bool {
    alpha.len() <= lambda.len() && alpha.parts.iter().zip(&lambda.parts).all(|(a, l)| a <= l)
}

/// `rλ`, componentwise.
pub fn stretch(lambda: &IntSequence, r: i64) -> Result<IntSequence> {
    if r <= 0 {
        return Err(Error::invalid(format!("stretch factor must be positive, got {}", r)));
    }
    Ok(IntSequence { parts: lambda.parts.iter().map(|&p| p * r).collect() })
}

/// All partitions `α ⊆ bound`, optionally restricted to a fixed size, in
/// reverse lexicographic order.
pub fn partitions_inside(bound: &Partition, size: Option<u64>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(bound.len());
    let target = size.unwrap_or(u64::MAX);
    if size.is_some_and(|s| s > bound.size()) {
        return out;
    }
    fill_inside(bound.parts(), u32::MAX, target, size.is_some(), &mut current, &mut out);
    out
}

fn fill_inside(bound: &[u32], cap: u32, remaining: u64, exact: bool, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    let row = current.len();
    if row == bound.len() || cap == 0 {
        if !exact || remaining == 0 {
            out.push(Partition::from_sorted(current.clone()));
        }
        return;
    }
    // Rows below this one can hold at most this much.
    let room_below: u64 = bound[row + 1..].iter().map(|&b| b as u64).sum();
    let hi = bound[row].min(cap);
    let hi = if exact { hi.min(remaining.min(u32::MAX as u64) as u32) } else { hi };
    for part in (0..=hi).rev() {
        if exact {
            let rest = remaining - part as u64;
            if rest > room_below.min(part as u64 * (bound.len() - row - 1) as u64) {
                break;
            }
        }
        current.push(part);
        let rest = if exact { remaining - part as u64 } else { remaining };
        fill_inside(bound, part, rest, exact, current, out);
        current.pop();
    }
}

/// All partitions with at most `rows` parts and largest part at most `cols`.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    partitions_inside(&Partition::rectangle(cols, rows), None)
}

/// A subset of `{1..n}` kept as a sorted list of distinct elements.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Subset {
    elems: Vec<usize>,
}

impl Subset {
    /// Sorts and validates; rejects zero and duplicates.
    pub fn new(mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        if elems.first() == Some(&0) {
            return Err(Error::invalid("subset elements are 1-based; 0 is not allowed"));
        }
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("subset {:?} has repeated elements", elems)));
        }
        Ok(Subset { elems })
    }

    /// `{1, ..., r}`.
    pub fn prefix(r: usize) -> Self {
        Subset { elems: (1..=r).collect() }
    }

    pub fn from_mask(mask: u64) -> Self {
        let elems = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        Subset { elems }
    }

    pub fn mask(&self) -> u64 {
        self.elems.iter().fold(0, |m, &z| m | 1 << (z - 1))
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, z: usize) -> bool {
        self.elems.binary_search(&z).is_ok()
    }

    /// Sorted complement inside `{1..n}`.
    pub fn complement(&self, n: usize) -> Subset {
        Subset { elems: (1..=n).filter(|z| !self.contains(*z)).collect() }
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        match self.elems.last() {
            Some(&z) if z > n => {
                Err(Error::invalid(format!("subset {:?} is not contained in {{1..{}}}", self.elems, n)))
            }
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = Error;

    fn try_from(elems: Vec<usize>) -> Result<Self> {
        Subset::new(elems)
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Vec<usize> {
        s.elems
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, z) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", z)?;
        }
        write!(f, "}}")
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems.len().cmp(&other.elems.len()).then_with(|| self.elems.cmp(&other.elems))
    }
}
