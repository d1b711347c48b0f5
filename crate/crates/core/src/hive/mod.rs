//! Hives: single triangles, sun hives glued from them, and the linear
//! system whose feasibility decides positivity of `f`.
//!
//! A sun hive on `m` flags is `m` triangular arrays. In local coordinates
//! array `r` has left side `α(r)`, right side `α(r+1)` and base `λ(r)`, so
//! it is an LR hive for `c^{λ(r)}_{α(r),α(r+1)}`. Neighbouring arrays share
//! a side under the flip rule `e^{r+1}_{j0} = f^r_{n-1-j,j}`. Drawn around a
//! common centre, even arrays appear mirrored: odd bases read `λ(r)` left to
//! right, even bases right to left.

pub mod lp;
pub mod triangle;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generalized::sun_sum_with;
use crate::lr::{hive_count, lr_hives, LrTriple};
use crate::partitions::{partitions_inside, IntSequence, Partition};

pub use lp::{fourier_motzkin_feasible, lp_feasible, lp_feasible_with, simplex_witness, Backend, LinearSystem};
pub use triangle::TriangularHive;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunHive {
    pub n: usize,
    pub m: usize,
    pub arrays: Vec<TriangularHive>,
}

impl SunHive {
    pub fn zero(n: usize, m: usize) -> Self {
        SunHive { n, m, arrays: vec![TriangularHive::zero(n); m] }
    }

    /// `α(r)` for 1-based `r`: the left side of array `r`.
    pub fn alpha(&self, r: usize) -> Vec<i64> {
        self.arrays[r - 1].left_side()
    }

    /// Base of array `r` (1-based) as it appears left to right in the
    /// global picture.
    pub fn global_base(&self, r: usize) -> Vec<i64> {
        let mut base = self.arrays[r - 1].base();
        if r.is_multiple_of(2) {
            base.reverse();
        }
        base
    }

    /// `λ(r)` as read off the global picture in the prescribed direction.
    pub fn boundary_reading(&self, r: usize) -> Vec<i64> {
        let mut base = self.global_base(r);
        if r.is_multiple_of(2) {
            base.reverse();
        }
        base
    }

    /// Builds the sun hive from per-array LR hives, checking nothing.
    pub fn from_arrays(n: usize, arrays: Vec<TriangularHive>) -> Self {
        SunHive { n, m: arrays.len(), arrays }
    }
}

fn check_shape(lambdas: &[IntSequence], n: usize, m: usize) -> Result<Vec<Vec<i64>>> {
    if m < 4 || m % 2 == 1 {
        return Err(Error::shape(format!("sun hives need an even m >= 4, got m = {m}")));
    }
    if lambdas.len() != m {
        return Err(Error::invalid(format!("expected {m} sequences, got {}", lambdas.len())));
    }
    if n == 0 {
        return Err(Error::invalid("rank n must be positive"));
    }
    lambdas.iter().map(|l| l.padded(n)).collect()
}

fn partitions_of(lambdas: &[IntSequence], n: usize, m: usize) -> Result<Vec<Partition>> {
    check_shape(lambdas, n, m)?;
    lambdas
        .iter()
        .enumerate()
        .map(|(i, l)| {
            l.to_partition().ok_or_else(|| Error::invalid(format!("lambda({}) = {:?} is not a partition", i + 1, l)))
        })
        .collect()
}

/// Rhombus and triangle conditions in every array, the border conditions,
/// the flip rule on shared sides, nonnegative shared labels, and the
/// external bases equal to `λ(r)`.
pub fn validate_sun_hive(h: &SunHive, lambdas: &[IntSequence]) -> Result<bool> {
    let n = h.n;
    let bases = check_shape(lambdas, n, h.m)?;
    if h.arrays.len() != h.m || h.arrays.iter().any(|a| !a.has_shape(n)) {
        return Err(Error::invalid(format!("sun hive arrays do not all have size n = {n}")));
    }
    let m = h.m;
    for (r, (a, base)) in h.arrays.iter().zip(&bases).enumerate() {
        if !a.is_valid() || h.boundary_reading(r + 1) != *base {
            return Ok(false);
        }
        let next = &h.arrays[(r + 1) % m];
        if (0..n).any(|j| next.e[j][0] != a.f[n - 1 - j][j]) {
            return Ok(false);
        }
        if a.left_side().iter().any(|&x| x < 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integral sun hives, counted array by array over consistent shared sides.
pub fn count_sun_hives(lambdas: &[IntSequence], n: usize, m: usize) -> Result<u64> {
    let ps = partitions_of(lambdas, n, m)?;
    Ok(sun_sum_with(&ps, &|a: &Partition, b: &Partition, l: &Partition| hive_count(a, b, l, n)).0)
}

/// Brute-force count for `n = 1`: every labelling of the shared edges in a
/// box wide enough to include negative values, filtered by
/// [`validate_sun_hive`].
pub fn count_sun_hives_raw_n1(lambdas: &[IntSequence], m: usize) -> Result<u64> {
    let bases = check_shape(lambdas, 1, m)?;
    let bound = bases.iter().map(|b| b[0].abs()).max().unwrap_or(0) + 1;
    let mut alpha = vec![-bound; m];
    let mut count = 0;
    loop {
        let arrays = (0..m)
            .map(|r| {
                let (e, f) = (alpha[r], alpha[(r + 1) % m]);
                TriangularHive { n: 1, e: vec![vec![e]], f: vec![vec![f]], g: vec![vec![bases[r][0]]] }
            })
            .collect();
        if validate_sun_hive(&SunHive::from_arrays(1, arrays), lambdas)? {
            count += 1;
        }
        let mut k = 0;
        while k < m {
            alpha[k] += 1;
            if alpha[k] <= bound {
                break;
            }
            alpha[k] = -bound;
            k += 1;
        }
        if k == m {
            return Ok(count);
        }
    }
}

/// Every integral sun hive with the given boundary.
pub fn enumerate_sun_hives(lambdas: &[IntSequence], n: usize, m: usize) -> Result<Vec<SunHive>> {
    let ps = partitions_of(lambdas, n, m)?;
    let mut out = Vec::new();
    for a1 in partitions_inside(&ps[m - 1].meet(&ps[0]), None) {
        let mut chain = vec![a1];
        extend_chains(&ps, n, &mut chain, &mut out)?;
    }
    Ok(out)
}

fn extend_chains(ps: &[Partition], n: usize, chain: &mut Vec<Partition>, out: &mut Vec<SunHive>) -> Result<()> {
    let m = ps.len();
    let r = chain.len();
    if r == m {
        let mut per_array = Vec::with_capacity(m);
        for i in 0..m {
            let t = LrTriple::from_partitions(&chain[i], &chain[(i + 1) % m], &ps[i], n);
            per_array.push(lr_hives(&t)?);
        }
        let mut pick = vec![0usize; m];
        if per_array.iter().any(Vec::is_empty) {
            return Ok(());
        }
        loop {
            let arrays = (0..m).map(|i| per_array[i][pick[i]].clone()).collect();
            out.push(SunHive::from_arrays(n, arrays));
            let mut k = 0;
            while k < m {
                pick[k] += 1;
                if pick[k] < per_array[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == m {
                return Ok(());
            }
        }
    }
    let prev = chain[r - 1].clone();
    let Some(size) = ps[r - 1].size().checked_sub(prev.size()) else { return Ok(()) };
    let region = ps[r - 1].meet(&ps[r]);
    for next in partitions_inside(&region, Some(size)) {
        if hive_count(&prev, &next, &ps[r - 1], n) == 0 {
            continue;
        }
        chain.push(next);
        extend_chains(ps, n, chain, out)?;
        chain.pop();
    }
    Ok(())
}

enum Term {
    Var(usize),
    Const(i64),
}

#[derive(Clone, Copy)]
enum Edge {
    E,
    F,
    G,
}

struct Builder<'a> {
    n: usize,
    m: usize,
    bases: &'a [Vec<i64>],
    own: Vec<std::collections::HashMap<(u8, usize, usize), usize>>,
    system: LinearSystem,
}

impl Builder<'_> {
    fn alpha(&self, r: usize, k: usize) -> usize {
        (r % self.m) * self.n + k
    }

    fn term(&self, r: usize, edge: Edge, i: usize, j: usize) -> Term {
        let n = self.n;
        match edge {
            Edge::E if j == 0 => Term::Var(self.alpha(r, i)),
            Edge::F if i + j == n - 1 => Term::Var(self.alpha(r + 1, j)),
            Edge::G if i == 0 => Term::Const(self.bases[r][j]),
            _ => Term::Var(self.own[r][&(edge as u8, i, j)]),
        }
    }

    /// `Σ coeff·edge ≤ 0` (or `= 0`), constants moved to the right.
    fn row(&mut self, edges: &[(usize, Edge, usize, usize, i64)], eq: bool, label: String) -> Result<()> {
        let mut terms = Vec::new();
        let mut constant = 0i64;
        for &(r, e, i, j, c) in edges {
            match self.term(r, e, i, j) {
                Term::Var(v) => terms.push((v, c)),
                Term::Const(x) => constant += c * x,
            }
        }
        let rhs = BigRational::from_integer((-constant).into());
        if eq {
            self.system.push_eq(&terms, rhs, &label)
        } else {
            self.system.push(&terms, rhs, label)
        }
    }
}

/// The sun-hive polytope as `A x ≤ b`. Variables are the shared sides
/// `α(r)` and the interior edges of each array; base edges are constants.
pub fn build_linear_system(lambdas: &[IntSequence], n: usize, m: usize) -> Result<LinearSystem> {
    let bases = check_shape(lambdas, n, m)?;
    if let Some(i) = bases.iter().position(|b| b.iter().any(|&x| x < 0)) {
        return Err(Error::invalid(format!("lambda({}) has negative entries", i + 1)));
    }
    let mut names: Vec<String> = Vec::new();
    for r in 0..m {
        for k in 0..n {
            names.push(format!("a{}_{}", r + 1, k + 1));
        }
    }
    let mut own = vec![std::collections::HashMap::new(); m];
    for (r, map) in own.iter_mut().enumerate() {
        for i in 0..n {
            for j in 0..n - i {
                for (edge, interior, tag) in
                    [(Edge::E, j > 0, 'e'), (Edge::F, i + j < n - 1, 'f'), (Edge::G, i > 0, 'g')]
                {
                    if interior {
                        map.insert((edge as u8, i, j), names.len());
                        names.push(format!("{tag}{}_{i}{j}", r + 1));
                    }
                }
            }
        }
    }
    let mut b = Builder { n, m, bases: &bases, own, system: LinearSystem::new(names) };
    use Edge::{E, F, G};
    for r in 0..m {
        let t = r + 1;
        for i in 0..n {
            for j in 0..n - i {
                b.row(&[(r, E, i, j, 1), (r, F, i, j, 1), (r, G, i, j, -1)], true, format!("up{t}_{i}{j}"))?;
                if j + 1 < n - i {
                    b.row(
                        &[(r, E, i, j + 1, 1), (r, F, i, j, 1), (r, G, i + 1, j, -1)],
                        true,
                        format!("down{t}_{i}{j}"),
                    )?;
                    b.row(&[(r, E, i, j + 1, 1), (r, E, i, j, -1)], false, format!("rh{t}_f{i}{j}"))?;
                    b.row(&[(r, F, i, j + 1, 1), (r, F, i, j, -1)], false, format!("rh{t}_e{i}{}", j + 1))?;
                }
                if i + 1 < n && j + 1 < n - i {
                    b.row(&[(r, F, i, j, 1), (r, F, i + 1, j, -1)], false, format!("rh{t}_g{}{j}", i + 1))?;
                }
            }
        }
        let mut border: Vec<(usize, Edge, usize, usize, i64)> = Vec::new();
        for i in 0..n {
            border.push((r, E, i, 0, 1));
            border.push((r, F, n - 1 - i, i, 1));
            border.push((r, G, 0, i, -1));
        }
        b.row(&border, true, format!("border{t}"))?;
        for k in 0..n {
            let v = b.alpha(r, k);
            b.system.push(&[(v, -1)], BigRational::zero(), format!("nonneg_a{t}_{}", k + 1))?;
        }
    }
    Ok(b.system)
}

/// `f > 0`, decided by exact feasibility of the sun-hive polytope.
pub fn positivity(lambdas: &[IntSequence], n: usize, m: usize) -> Result<bool> {
    Ok(lp_feasible(&build_linear_system(lambdas, n, m)?))
}

pub fn positivity_with(lambdas: &[IntSequence], n: usize, m: usize, backend: Backend) -> Result<bool> {
    Ok(lp_feasible_with(&build_linear_system(lambdas, n, m)?, backend))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generalized::f_sun_partitions;
    use crate::partitions::partitions_in_box;

    fn seqs(ls: &[&[i64]]) -> Vec<IntSequence> {
        ls.iter().map(|l| IntSequence::new(l.to_vec()).unwrap()).collect()
    }

    fn n1_hive(alpha: &[i64], lambda: &[i64]) -> SunHive {
        let m = alpha.len();
        let arrays = (0..m)
            .map(|r| TriangularHive {
                n: 1,
                e: vec![vec![alpha[r]]],
                f: vec![vec![alpha[(r + 1) % m]]],
                g: vec![vec![lambda[r]]],
            })
            .collect();
        SunHive::from_arrays(1, arrays)
    }

    #[test]
    fn zero_hive_is_valid() {
        let ls = vec![IntSequence::empty(); 6];
        assert!(validate_sun_hive(&SunHive::zero(3, 6), &ls).unwrap());
    }

    #[test]
    fn hand_built_n1_hive() {
        // chain (∅,(1),∅,(1)) for all λ = (1)
        let ls = seqs(&[&[1][..]; 4]);
        let mut h = n1_hive(&[0, 1, 0, 1], &[1, 1, 1, 1]);
        assert!(validate_sun_hive(&h, &ls).unwrap());
        assert_eq!(h.alpha(2), vec![1]);
        h.arrays[0].g[0][0] += 1;
        assert!(!validate_sun_hive(&h, &ls).unwrap());
        // the flip rule ties f of array r to e of array r+1
        let mut h = n1_hive(&[0, 1, 0, 1], &[1, 1, 1, 1]);
        h.arrays[1].e[0][0] = 0;
        h.arrays[1].f[0][0] = 1;
        assert!(!validate_sun_hive(&h, &ls).unwrap());
        assert!(!validate_sun_hive(&SunHive::zero(2, 4), &ls).unwrap());
        assert!(validate_sun_hive(&SunHive::zero(1, 6), &ls).is_err());
    }

    #[test]
    fn global_orientation() {
        let ls = seqs(&[&[2, 1], &[2, 0], &[1, 1], &[2, 1], &[1, 0], &[1, 0]]);
        let hives = enumerate_sun_hives(&ls, 2, 6).unwrap();
        assert!(!hives.is_empty());
        for h in &hives {
            assert_eq!(h.global_base(1), vec![2, 1]);
            assert_eq!(h.global_base(2), vec![0, 2]);
            assert_eq!(h.boundary_reading(2), vec![2, 0]);
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_sun_hives(&vec![IntSequence::empty(); 4], 2, 4).unwrap(), 1);
        assert_eq!(count_sun_hives(&seqs(&[&[1][..]; 4]), 1, 4).unwrap(), 2);
        assert_eq!(count_sun_hives(&seqs(&[&[1, 0][..]; 6]), 2, 6).unwrap(), 2);
        assert!(count_sun_hives(&seqs(&[&[1][..]; 5]), 1, 5).is_err());
        assert!(count_sun_hives(&seqs(&[&[1, -1][..]; 4]), 2, 4).is_err());
    }

    #[test]
    fn raw_n1_matches() {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let ls = seqs(&[&[a], &[b], &[c], &[d]]);
                        let ps: Vec<Partition> = ls.iter().map(|l| l.to_partition().unwrap()).collect();
                        let raw = count_sun_hives_raw_n1(&ls, 4).unwrap();
                        assert_eq!(raw, count_sun_hives(&ls, 1, 4).unwrap());
                        assert_eq!(raw, f_sun_partitions(&ps));
                    }
                }
            }
        }
    }

    #[test]
    fn enumerated_hives_validate() {
        let shapes = partitions_in_box(2, 2);
        for a in &shapes {
            for b in &shapes {
                let ls: Vec<IntSequence> = [a, b, b, a].iter().map(|p| IntSequence::from(*p)).collect();
                let hives = enumerate_sun_hives(&ls, 2, 4).unwrap();
                assert_eq!(hives.len() as u64, count_sun_hives(&ls, 2, 4).unwrap());
                for h in &hives {
                    assert!(validate_sun_hive(h, &ls).unwrap());
                }
            }
        }
    }

    #[test]
    fn linear_system_shape() {
        let zero = build_linear_system(&vec![IntSequence::empty(); 6], 2, 6).unwrap();
        assert!(zero.b.iter().all(Zero::is_zero));
        let ls = seqs(&[&[2, 1], &[2, 0], &[1, 1], &[2, 1], &[1, 0], &[1, 0]]);
        let s1 = build_linear_system(&ls, 2, 6).unwrap();
        let doubled: Vec<IntSequence> = ls.iter().map(|l| crate::partitions::stretch(l, 2).unwrap()).collect();
        let s2 = build_linear_system(&doubled, 2, 6).unwrap();
        assert_eq!(s1.a, s2.a);
        let two = BigRational::from_integer(2.into());
        assert!(s1.b.iter().zip(&s2.b).all(|(x, y)| x * &two == *y));
        assert!(s1.a.iter().flatten().all(|c| (-1..=1).contains(c)));
        assert!(build_linear_system(&seqs(&[&[1, -1][..]; 4]), 2, 4).is_err());
    }

    #[test]
    fn linear_system_points_are_hives() {
        // n = 1, all λ = (1): the integer points are the two alternating chains
        let s = build_linear_system(&seqs(&[&[1][..]; 4]), 1, 4).unwrap();
        let q = |v: i64| BigRational::from_integer(v.into());
        let mut points = 0;
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    for d in 0..=2 {
                        if s.satisfied_by(&[q(a), q(b), q(c), q(d)]) {
                            points += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(points, 2);
    }

    #[test]
    fn positivity_examples() {
        assert!(positivity(&seqs(&[&[1, 0][..]; 6]), 2, 6).unwrap());
        let bad = seqs(&[&[1, 0], &[3, 0], &[1, 0], &[], &[1, 0], &[]]);
        assert!(!positivity(&bad, 2, 6).unwrap());
        assert!(positivity(&vec![IntSequence::empty(); 6], 2, 6).unwrap());
        let unbalanced = seqs(&[&[1, 0], &[2, 0], &[1, 0], &[1, 0], &[1, 0], &[1, 0]]);
        assert!(!positivity(&unbalanced, 2, 6).unwrap());
        assert!(!positivity_with(&unbalanced, 2, 6, Backend::FourierMotzkin).unwrap());
    }
}
