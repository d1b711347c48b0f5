//! A single edge-labelled triangular LR hive.
//!
//! Edges in row `i` (bottom to top) and diagonal `j` (left to right) carry
//! labels `e[i][j]` (increasing diagonal), `f[i][j]` (decreasing diagonal)
//! and `g[i][j]` (horizontal), for `i + j <= n - 1`. Boundary convention:
//! the left side reads `λ` bottom to top (`e[i][0] = λ_{i+1}`), the right
//! side reads `μ` top to bottom (`f[n-1-k][k] = μ_{k+1}`), and the base
//! reads `ν` left to right (`g[0][j] = ν_{j+1}`).
//!
//! Internally the enumeration runs over vertex heights `h[y][x]` with
//! `h[0][0] = 0`; edge labels are differences of heights, which makes the
//! two triangle equalities automatic.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularHive {
    pub n: usize,
    pub e: Vec<Vec<i64>>,
    pub f: Vec<Vec<i64>>,
    pub g: Vec<Vec<i64>>,
}

/// One violated constraint, reported by [`TriangularHive::violations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub what: String,
}

impl TriangularHive {
    pub fn zero(n: usize) -> Self {
        let rows = |n: usize| (0..n).map(|i| vec![0; n - i]).collect::<Vec<_>>();
        TriangularHive { n, e: rows(n), f: rows(n), g: rows(n) }
    }

    /// Builds the edge labelling from vertex heights `h[y][x]`.
    pub(crate) fn from_heights(n: usize, h: &[Vec<i64>]) -> Self {
        let mut hive = TriangularHive::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                hive.e[i][j] = h[i + 1][j] - h[i][j];
                hive.f[i][j] = h[i][j + 1] - h[i + 1][j];
                hive.g[i][j] = h[i][j + 1] - h[i][j];
            }
        }
        hive
    }

    pub fn has_shape(&self, n: usize) -> bool {
        let ok = |rows: &Vec<Vec<i64>>| rows.len() == n && rows.iter().enumerate().all(|(i, r)| r.len() == n - i);
        self.n == n && ok(&self.e) && ok(&self.f) && ok(&self.g)
    }

    /// Left side, bottom to top.
    pub fn left_side(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.e[i][0]).collect()
    }

    /// Right side, top to bottom.
    pub fn right_side(&self) -> Vec<i64> {
        (0..self.n).map(|k| self.f[self.n - 1 - k][k]).collect()
    }

    /// Base, left to right.
    pub fn base(&self) -> Vec<i64> {
        self.g.first().cloned().unwrap_or_default()
    }

    /// Checks the triangle equalities, the rhombus inequalities and the
    /// border condition of this single array.
    pub fn violations(&self) -> Vec<Violation> {
        let n = self.n;
        let (e, f, g) = (&self.e, &self.f, &self.g);
        let mut out = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                out.push(Violation { what });
            }
        };
        for i in 0..n {
            for j in 0..n - i {
                check(e[i][j] + f[i][j] == g[i][j], format!("e{i}{j} + f{i}{j} = g{i}{j}"));
                if j + 1 < n - i {
                    // Down triangle between up triangles (i, j) and (i, j+1).
                    check(e[i][j + 1] + f[i][j] == g[i + 1][j], format!("e{i}{} + f{i}{j} = g{}{j}", j + 1, i + 1));
                    check(e[i][j] >= e[i][j + 1], format!("e{i}{j} >= e{i}{}", j + 1));
                    check(g[i][j] >= g[i + 1][j], format!("g{i}{j} >= g{}{j}", i + 1));
                    check(f[i][j] >= f[i][j + 1], format!("f{i}{j} >= f{i}{}", j + 1));
                    check(g[i + 1][j] >= g[i][j + 1], format!("g{}{j} >= g{i}{}", i + 1, j + 1));
                }
                if i + 1 < n && j + 1 < n - i {
                    check(f[i + 1][j] >= f[i][j], format!("f{}{j} >= f{i}{j}", i + 1));
                    check(e[i][j + 1] >= e[i + 1][j], format!("e{i}{} >= e{}{j}", j + 1, i + 1));
                }
            }
        }
        let border: i64 = self.left_side().iter().sum::<i64>() + self.right_side().iter().sum::<i64>();
        check(border == self.base().iter().sum::<i64>(), "border condition".to_string());
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Rhombus constraint on vertex heights: `h[obtuse0] + h[obtuse1] >= h[acute0] + h[acute1]`.
#[derive(Clone, Copy, Debug)]
struct Rhombus {
    obtuse: [(usize, usize); 2],
    acute: [(usize, usize); 2],
}

/// Every rhombus of the size-`n` triangle, as `(x, y)` vertex coordinates.
fn rhombi(n: usize) -> Vec<Rhombus> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            if j + 2 <= n - i {
                // up(i,j) + down(i,j), shared edge f[i][j]
                out.push(Rhombus { obtuse: [(j, i + 1), (j + 1, i)], acute: [(j, i), (j + 1, i + 1)] });
                // down(i,j) + up(i,j+1), shared edge e[i][j+1]
                out.push(Rhombus { obtuse: [(j + 1, i + 1), (j + 1, i)], acute: [(j, i + 1), (j + 2, i)] });
            }
            if i + 2 <= n && j + 2 <= n - i {
                // up(i+1,j) + down(i,j), shared edge g[i+1][j]
                out.push(Rhombus { obtuse: [(j, i + 1), (j + 1, i + 1)], acute: [(j, i + 2), (j + 1, i)] });
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Bound {
    /// `h >= h[a0] + h[a1] - h[other]`
    Lower { plus: [(usize, usize); 2], minus: (usize, usize) },
    /// `h <= h[o0] + h[o1] - h[other]`
    Upper { plus: [(usize, usize); 2], minus: (usize, usize) },
}

/// Backtracking enumeration of integral hives with fixed boundary.
struct Enumerator {
    n: usize,
    heights: Vec<Vec<i64>>,
    order: Vec<(usize, usize)>,
    bounds: Vec<Vec<Bound>>,
}

impl Enumerator {
    /// Returns `None` when the boundary alone already violates a rhombus.
    fn new(lambda: &[i64], mu: &[i64], nu: &[i64]) -> Option<Self> {
        let n = nu.len();
        let mut heights: Vec<Vec<i64>> = (0..=n).map(|y| vec![0; n + 1 - y]).collect();
        let mut acc = 0;
        for x in 1..=n {
            acc += nu[x - 1];
            heights[0][x] = acc;
        }
        acc = 0;
        for y in 1..=n {
            acc += lambda[y - 1];
            heights[y][0] = acc;
        }
        for y in (0..n).rev() {
            // right side, walking down from the apex
            acc += mu[n - 1 - y];
            if y == 0 {
                if acc != heights[0][n] {
                    return None;
                }
            } else {
                heights[y][n - y] = acc;
            }
        }

        let order: Vec<(usize, usize)> = (1..n).flat_map(|y| (1..n - y).map(move |x| (x, y))).collect();
        let rank = |v: (usize, usize)| order.iter().position(|&w| w == v);
        let mut bounds = vec![Vec::new(); order.len()];
        for rh in rhombi(n) {
            let verts = [rh.obtuse[0], rh.obtuse[1], rh.acute[0], rh.acute[1]];
            let last = verts.iter().enumerate().filter_map(|(k, &v)| rank(v).map(|r| (r, k))).max();
            match last {
                None => {
                    let h = |(x, y): (usize, usize)| heights[y][x];
                    if h(verts[0]) + h(verts[1]) < h(verts[2]) + h(verts[3]) {
                        return None;
                    }
                }
                Some((r, k)) => {
                    let bound = match k {
                        0 | 1 => Bound::Lower { plus: [verts[2], verts[3]], minus: verts[1 - k] },
                        _ => Bound::Upper { plus: [verts[0], verts[1]], minus: verts[5 - k] },
                    };
                    bounds[r].push(bound);
                }
            }
        }
        Some(Enumerator { n, heights, order, bounds })
    }

    fn interval(&self, r: usize) -> (i64, i64) {
        let h = |(x, y): (usize, usize)| self.heights[y][x];
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for b in &self.bounds[r] {
            match *b {
                Bound::Lower { plus, minus } => lo = lo.max(h(plus[0]) + h(plus[1]) - h(minus)),
                Bound::Upper { plus, minus } => hi = hi.min(h(plus[0]) + h(plus[1]) - h(minus)),
            }
        }
        (lo, hi)
    }

    fn run(&mut self, r: usize, visit: &mut dyn FnMut(&[Vec<i64>])) {
        if r == self.order.len() {
            visit(&self.heights);
            return;
        }
        let (lo, hi) = self.interval(r);
        debug_assert!(lo > i64::MIN && hi < i64::MAX, "interior vertex left unbounded");
        let (x, y) = self.order[r];
        for v in lo..=hi {
            self.heights[y][x] = v;
            self.run(r + 1, visit);
        }
    }

    fn count(&mut self, r: usize) -> u64 {
        if r == self.order.len() {
            return 1;
        }
        let (lo, hi) = self.interval(r);
        let (x, y) = self.order[r];
        let mut total = 0;
        for v in lo..=hi {
            self.heights[y][x] = v;
            total += self.count(r + 1);
        }
        total
    }
}

/// Number of integral hives with sides `λ`, `μ`, `ν` (all of length `n`).
pub fn count_lr_hives(lambda: &[i64], mu: &[i64], nu: &[i64]) -> u64 {
    assert!(lambda.len() == nu.len() && mu.len() == nu.len());
    match Enumerator::new(lambda, mu, nu) {
        Some(mut en) => en.count(0),
        None => 0,
    }
}

/// Calls `visit` on each integral hive with sides `λ`, `μ`, `ν`.
pub fn for_each_lr_hive(lambda: &[i64], mu: &[i64], nu: &[i64], visit: &mut dyn FnMut(TriangularHive)) {
    assert!(lambda.len() == nu.len() && mu.len() == nu.len());
    if let Some(mut en) = Enumerator::new(lambda, mu, nu) {
        let n = en.n;
        en.run(0, &mut |h| visit(TriangularHive::from_heights(n, h)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhombus_count() {
        // one rhombus per interior edge: 3 n (n - 1) / 2
        for n in 1..6 {
            assert_eq!(rhombi(n).len(), 3 * n * (n - 1) / 2);
        }
    }

    #[test]
    fn enumerated_hives_are_valid_with_correct_sides() {
        let (l, m, nu) = ([2, 1, 0], [2, 1, 0], [3, 2, 1]);
        let mut seen = 0;
        for_each_lr_hive(&l, &m, &nu, &mut |h| {
            assert!(h.is_valid(), "{:?}", h.violations());
            assert_eq!(h.left_side(), l);
            assert_eq!(h.right_side(), m);
            assert_eq!(h.base(), nu);
            seen += 1;
        });
        assert_eq!(seen as u64, count_lr_hives(&l, &m, &nu));
        // c^{321}_{21,21} = 2
        assert_eq!(seen, 2);
    }

    #[test]
    fn perturbed_label_is_rejected() {
        let mut found = None;
        for_each_lr_hive(&[1, 0], &[1, 0], &[1, 1], &mut |h| found = Some(h));
        let mut h = found.unwrap();
        assert!(h.is_valid());
        h.g[1][0] += 1;
        assert!(!h.is_valid());
    }

    #[test]
    fn zero_hive() {
        assert_eq!(count_lr_hives(&[], &[], &[]), 1);
        assert_eq!(count_lr_hives(&[0, 0], &[0, 0], &[0, 0]), 1);
        assert!(TriangularHive::zero(3).is_valid());
    }
}
