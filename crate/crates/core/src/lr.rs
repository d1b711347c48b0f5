//! Single Littlewood-Richardson coefficients.
//!
//! Two independent routes: counting LR skew tableaux, and counting integral
//! hives on one triangle. A third shortcut covers rectangular targets.

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hive::triangle::{count_lr_hives, for_each_lr_hive, TriangularHive};
use crate::partitions::{IntSequence, Partition};

/// `c^ν_{λ,μ}` for `GL(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrTriple {
    pub lambda: IntSequence,
    pub mu: IntSequence,
    pub nu: IntSequence,
    pub n: usize,
}

impl LrTriple {
    pub fn new(lambda: IntSequence, mu: IntSequence, nu: IntSequence, n: usize) -> Result<Self> {
        let t = LrTriple { lambda, mu, nu, n };
        t.check()?;
        Ok(t)
    }

    pub fn from_partitions(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Self {
        LrTriple { lambda: lambda.into(), mu: mu.into(), nu: nu.into(), n }
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("rank n must be positive"));
        }
        for s in [&self.lambda, &self.mu, &self.nu] {
            IntSequence::new(s.parts().to_vec())?;
            s.padded(self.n)?;
        }
        Ok(())
    }

    /// Shift normalization: twists `λ` and `μ` by the smallest constants
    /// making them partitions and twists `ν` by their sum. `None` means the
    /// coefficient is zero for shape reasons.
    pub fn normalize(&self) -> Result<Option<(Partition, Partition, Partition)>> {
        self.check()?;
        let n = self.n;
        let a = (-self.lambda.min_part(n)).max(0);
        let b = (-self.mu.min_part(n)).max(0);
        let lambda = self.lambda.shifted(a, n)?;
        let mu = self.mu.shifted(b, n)?;
        let nu = self.nu.shifted(a + b, n)?;
        let (Some(l), Some(m), Some(v)) = (lambda.to_partition(), mu.to_partition(), nu.to_partition()) else {
            return Ok(None);
        };
        if v.size() != l.size() + m.size() {
            return Ok(None);
        }
        Ok(Some((l, m, v)))
    }
}

static MEMO: Lazy<DashMap<(Partition, Partition, Partition), u64>> = Lazy::new(DashMap::new);

/// `c^ν_{λ,μ}` by counting LR tableaux, memoized on the normalized triple.
pub fn lr_coefficient(t: &LrTriple) -> Result<u64> {
    Ok(match t.normalize()? {
        Some((l, m, v)) => lr(&l, &m, &v),
        None => 0,
    })
}

/// `c^ν_{λ,μ}` on partitions (no rank bound beyond the shapes themselves).
pub fn lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    if mu.is_empty() || lambda.is_empty() {
        return 1;
    }
    // c^ν_{λμ} = c^ν_{μλ}; put the smaller diagram on the content side.
    let (lambda, mu) = if mu.size() > lambda.size() { (mu, lambda) } else { (lambda, mu) };
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(v) = MEMO.get(&key) {
        return *v;
    }
    let value = count_lr_tableaux(lambda, mu, nu);
    *MEMO.entry(key).or_insert(value)
}

/// Number of cached coefficients, for diagnostics.
pub fn memo_len() -> usize {
    MEMO.len()
}

struct Cell {
    row: usize,
    right: Option<usize>,
    above: Option<usize>,
}

struct Tableaux<'a> {
    cells: Vec<Cell>,
    content: &'a [u32],
    entries: Vec<usize>,
    counts: Vec<u32>,
}

impl Tableaux<'_> {
    fn go(&mut self, k: usize) -> u64 {
        if k == self.cells.len() {
            return 1;
        }
        let cell = &self.cells[k];
        let mut hi = (cell.row + 1).min(self.content.len());
        if let Some(r) = cell.right {
            hi = hi.min(self.entries[r]);
        }
        let lo = cell.above.map_or(1, |a| self.entries[a] + 1);
        let mut total = 0;
        for v in lo..=hi {
            let c = self.counts[v];
            if c >= self.content[v - 1] || (v > 1 && c >= self.counts[v - 1]) {
                continue;
            }
            self.counts[v] += 1;
            self.entries[k] = v;
            total += self.go(k + 1);
            self.counts[v] -= 1;
        }
        total
    }
}

/// Cells of `ν/λ` are filled in reading order (rows top to bottom, each row
/// right to left) so the lattice condition is checked on every prefix.
fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let mut cells = Vec::new();
    let mut index = vec![Vec::new(); nu.len()];
    for r in 0..nu.len() {
        let (start, end) = (lambda.get(r) as usize, nu.get(r) as usize);
        index[r] = vec![usize::MAX; end];
        for c in (start..end).rev() {
            let right = (c + 1 < end).then(|| index[r][c + 1]);
            let above = (r > 0 && c >= lambda.get(r - 1) as usize).then(|| index[r - 1][c]);
            index[r][c] = cells.len();
            cells.push(Cell { row: r, right, above });
        }
    }
    let mut t = Tableaux { entries: vec![0; cells.len()], counts: vec![0; mu.len() + 1], cells, content: mu.parts() };
    t.go(0)
}

/// `c^ν_{λ,μ}` by counting integral hives on a single triangle.
pub fn lr_hive_count(t: &LrTriple) -> Result<u64> {
    Ok(match t.normalize()? {
        Some((l, m, v)) => hive_count(&l, &m, &v, t.n),
        None => 0,
    })
}

fn widen(p: &Partition, n: usize) -> Vec<i64> {
    p.padded(n).into_iter().map(i64::from).collect()
}

/// Hive count on partitions with at most `n` parts.
pub fn hive_count(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> u64 {
    if lambda.len() > n || mu.len() > n || nu.len() > n {
        return 0;
    }
    count_lr_hives(&widen(lambda, n), &widen(mu, n), &widen(nu, n))
}

/// All integral hives with the given boundary.
pub fn lr_hives(t: &LrTriple) -> Result<Vec<TriangularHive>> {
    let mut out = Vec::new();
    if let Some((l, m, v)) = t.normalize()? {
        let n = t.n;
        for_each_lr_hive(&widen(&l, n), &widen(&m, n), &widen(&v, n), &mut |h| out.push(h));
    }
    Ok(out)
}

/// `c^{(N^n)}_{λ,μ}`, which is 1 exactly when `μ` is the complement of `λ`
/// in the `n × N` rectangle.
pub fn rectangular_lr(lambda: &Partition, mu: &Partition, big_n: u32, n: usize) -> u64 {
    if lambda.len() > n || mu.len() > n {
        return 0;
    }
    let complementary = (0..n).all(|i| lambda.get(i) + mu.get(n - 1 - i) == big_n);
    u64::from(complementary)
}
