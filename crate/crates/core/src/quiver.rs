//! The sun quiver: a central `2k`-gon with alternating arrows and an `A_n`
//! flag hanging off each central vertex.
//!
//! Vertex `(j, i)` sits at depth `j` on flag `i`; `(n, i)` is central. Flag
//! `i` points into the centre when `i` is even, and the central arrows run
//! from even to odd vertices.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generalized::f_sun_partitions;
use crate::horn::SubsetTuple;
use crate::partitions::{IntSequence, Partition, Subset};

pub type Vertex = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SunQuiver {
    n: usize,
    k: usize,
    #[serde(serialize_with = "ser_arrows")]
    arrows: Vec<(Vertex, Vertex)>,
}

fn key((j, i): Vertex) -> String {
    format!("{j},{i}")
}

fn ser_arrows<S: Serializer>(arrows: &[(Vertex, Vertex)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<[String; 2]> = arrows.iter().map(|&(t, h)| [key(t), key(h)]).collect();
    v.serialize(s)
}

pub fn build_sun_quiver(n: usize, k: usize) -> Result<SunQuiver> {
    SunQuiver::new(n, k)
}

impl SunQuiver {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("flag length n must be positive"));
        }
        if k < 2 {
            return Err(Error::shape(format!("the sun quiver needs k >= 2, got k = {k}")));
        }
        let m = 2 * k;
        let mut arrows = Vec::with_capacity(m * n);
        for i in 1..=m {
            for j in 1..n {
                if i % 2 == 0 {
                    arrows.push(((j, i), (j + 1, i)));
                } else {
                    arrows.push(((j + 1, i), (j, i)));
                }
            }
        }
        for i in (2..=m).step_by(2) {
            arrows.push(((n, i), (n, i - 1)));
            arrows.push(((n, i), (n, i % m + 1)));
        }
        Ok(SunQuiver { n, k, arrows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of flags, `2k`.
    pub fn m(&self) -> usize {
        2 * self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.m()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.m()).flat_map(move |i| (1..=self.n).map(move |j| (j, i)))
    }

    pub fn arrows(&self) -> &[(Vertex, Vertex)] {
        &self.arrows
    }

    pub fn flag_arrow_count(&self) -> usize {
        self.arrows.iter().filter(|(t, h)| t.1 == h.1).count()
    }

    pub fn central_arrow_count(&self) -> usize {
        self.arrows.len() - self.flag_arrow_count()
    }

    fn index(&self, (j, i): Vertex) -> usize {
        debug_assert!((1..=self.n).contains(&j) && (1..=self.m()).contains(&i));
        (i - 1) * self.n + (j - 1)
    }

    /// The standard dimension vector `β(j, i) = j`.
    pub fn beta(&self) -> DimensionVector {
        self.vector_from(|(j, _)| j as i64)
    }

    /// The simple vector `e_x`.
    pub fn simple(&self, x: Vertex) -> DimensionVector {
        self.vector_from(|y| i64::from(y == x))
    }

    pub fn zero(&self) -> VertexMap {
        self.vector_from(|_| 0)
    }

    pub fn vector_from(&self, f: impl Fn(Vertex) -> i64) -> VertexMap {
        let mut values = vec![0; self.vertex_count()];
        for x in self.vertices() {
            values[self.index(x)] = f(x);
        }
        VertexMap { n: self.n, k: self.k, values }
    }

    fn check(&self, v: &VertexMap) -> Result<()> {
        if v.n != self.n || v.k != self.k {
            return Err(Error::invalid(format!(
                "vector lives on the (n={}, k={}) quiver, expected (n={}, k={})",
                v.n, v.k, self.n, self.k
            )));
        }
        Ok(())
    }
}

/// An integer function on the vertices, stored densely flag by flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    n: usize,
    k: usize,
    values: Vec<i64>,
}

pub type DimensionVector = VertexMap;
pub type Weight = VertexMap;

impl VertexMap {
    pub fn get(&self, (j, i): Vertex) -> i64 {
        self.values[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, (j, i): Vertex, v: i64) {
        self.values[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        2 * self.k
    }

    /// Values along flag `i`, from depth 1 to the centre.
    pub fn flag(&self, i: usize) -> &[i64] {
        &self.values[(i - 1) * self.n..i * self.n]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0)
    }

    fn entries(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        let n = self.n;
        self.values.iter().enumerate().map(move |(idx, &v)| ((idx % n + 1, idx / n + 1), v))
    }
}

impl Serialize for VertexMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (x, v) in self.entries() {
            map.serialize_entry(&key(x), &v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for VertexMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, i64>::deserialize(d)?;
        let mut parsed = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let (j, i) = k
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .filter(|&(j, i)| j >= 1 && i >= 1)
                .ok_or_else(|| D::Error::custom(format!("bad vertex key {k:?}")))?;
            parsed.push(((j, i), v));
        }
        let n = parsed.iter().map(|p| p.0 .0).max().unwrap_or(0);
        let m = parsed.iter().map(|p| p.0 .1).max().unwrap_or(0);
        if m % 2 == 1 || m < 4 || parsed.len() != n * m {
            return Err(D::Error::custom(format!(
                "vertex keys do not cover a sun quiver ({} keys, n = {n}, m = {m})",
                parsed.len()
            )));
        }
        let mut out = VertexMap { n, k: m / 2, values: vec![0; n * m] };
        for (x, v) in parsed {
            out.set(x, v);
        }
        Ok(out)
    }
}

/// `⟨a, b⟩ = Σ_x a(x)b(x) − Σ_arrows a(t)b(h)`.
pub fn euler_form(q: &SunQuiver, a: &DimensionVector, b: &DimensionVector) -> Result<i64> {
    q.check(a)?;
    q.check(b)?;
    let diag: i64 = a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum();
    let off: i64 = q.arrows.iter().map(|&(t, h)| a.get(t) * b.get(h)).sum();
    Ok(diag - off)
}

/// `σ₁(j, i) = (−1)^i (λ(i)_j − λ(i)_{j+1})`, and `(−1)^i λ(i)_n` at the centre.
pub fn weight_sigma1(lambdas: &[IntSequence], n: usize) -> Result<Weight> {
    let m = lambdas.len();
    if m < 4 || m % 2 == 1 {
        return Err(Error::invalid(format!("need an even number (>= 4) of sequences, got {m}")));
    }
    let q = SunQuiver::new(n, m / 2)?;
    let padded = lambdas.iter().map(|l| l.padded(n)).collect::<Result<Vec<_>>>()?;
    Ok(q.vector_from(|(j, i)| {
        let l = &padded[i - 1];
        let d = if j < n { l[j - 1] - l[j] } else { l[n - 1] };
        if i % 2 == 0 {
            d
        } else {
            -d
        }
    }))
}

/// `σ(a) = Σ_x σ(x) a(x)`.
pub fn sigma_apply(sigma: &Weight, a: &DimensionVector) -> Result<i64> {
    if sigma.n != a.n || sigma.k != a.k {
        return Err(Error::invalid("weight and dimension vector live on different quivers"));
    }
    Ok(sigma.values.iter().zip(&a.values).map(|(x, y)| x * y).sum())
}

/// Dimension of the `σ`-weight space of semi-invariants for `β`, via the
/// chain sum on the partitions `φ(i)` read off from `σ`.
pub fn dim_si_sun(q: &SunQuiver, sigma: &Weight) -> Result<u64> {
    q.check(sigma)?;
    Ok(match phi(q, sigma) {
        Some(phis) => f_sun_partitions(&phis),
        None => 0,
    })
}

/// `φ(i)_k = Σ_{j ≥ k} (−1)^i σ(j, i)`, or `None` on a sign violation.
pub fn phi(q: &SunQuiver, sigma: &Weight) -> Option<Vec<Partition>> {
    let n = q.n;
    (1..=q.m())
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let col: Vec<i64> = sigma.flag(i).iter().map(|&v| sign * v).collect();
            if col.iter().any(|&v| v < 0) {
                return None;
            }
            let mut parts = vec![0u32; n];
            let mut acc = 0;
            for kk in (0..n).rev() {
                acc += col[kk];
                parts[kk] = acc as u32;
            }
            Some(Partition::new(parts).expect("suffix sums of nonnegatives decrease"))
        })
        .collect()
}

/// `β_I(j, i) = #{z ∈ I_i : z ≤ j}`.
pub fn beta_from_subsets(t: &SubsetTuple, q: &SunQuiver) -> Result<DimensionVector> {
    if t.n() != q.n || t.m() != q.m() {
        return Err(Error::invalid(format!(
            "subset tuple has (n={}, m={}), quiver has (n={}, m={})",
            t.n(),
            t.m(),
            q.n,
            q.m()
        )));
    }
    Ok(q.vector_from(|(j, i)| t.subset(i).elements().iter().filter(|&&z| z <= j).count() as i64))
}

/// Inverse of [`beta_from_subsets`].
pub fn jump_sets(b: &DimensionVector) -> Result<SubsetTuple> {
    let mut subsets = Vec::with_capacity(b.m());
    for i in 1..=b.m() {
        let mut prev = 0;
        let mut elems = Vec::new();
        for (idx, &v) in b.flag(i).iter().enumerate() {
            match v - prev {
                0 => {}
                1 => elems.push(idx + 1),
                d => {
                    return Err(Error::invalid(format!(
                        "flag {i} changes by {d} at depth {}; jumps must be 0 or 1",
                        idx + 1
                    )))
                }
            }
            prev = v;
        }
        subsets.push(Subset::new(elems)?);
    }
    SubsetTuple::new(b.n, subsets)
}

/// `σ_I`, the weight `⟨β_I, ·⟩` written out flag by flag.
pub fn sigma_from_subsets(t: &SubsetTuple, q: &SunQuiver) -> Result<Weight> {
    beta_from_subsets(t, q)?;
    let n = q.n;
    let m = q.m();
    let size = |i: usize| t.subset((i + m - 1) % m + 1).len() as i64;
    Ok(q.vector_from(|(l, i)| {
        let s = t.subset(i);
        match (l < n, i % 2 == 0) {
            (true, true) => i64::from(s.contains(l)),
            (true, false) => -i64::from(s.contains(l + 1)),
            (false, true) => i64::from(s.contains(n)),
            (false, false) => size(i) - size(i - 1) - size(i + 1),
        }
    }))
}

/// `τ_x(b) = ⟨e_x, b⟩ + ⟨b, e_x⟩ = 2 b(x) − Σ_{y adjacent to x} b(y)`.
pub fn tau(q: &SunQuiver, b: &DimensionVector, x: Vertex) -> i64 {
    let adjacent: i64 = q
        .arrows
        .iter()
        .map(|&(t, h)| {
            if t == x {
                b.get(h)
            } else if h == x {
                b.get(t)
            } else {
                0
            }
        })
        .sum();
    2 * b.get(x) - adjacent
}

/// Connected support and `τ_x(b) ≤ 0` everywhere. Sufficient for a Schur
/// root (with indivisibility) but not necessary: simple roots fail it.
pub fn is_fundamental_schur(q: &SunQuiver, b: &DimensionVector) -> bool {
    if q.check(b).is_err() || b.is_zero() || !b.is_nonnegative() {
        return false;
    }
    if q.vertices().any(|x| tau(q, b, x) > 0) {
        return false;
    }
    // connectivity of the support by flood fill over arrows
    let support: Vec<Vertex> = q.vertices().filter(|&x| b.get(x) > 0).collect();
    let mut seen = vec![false; q.vertex_count()];
    let mut stack = vec![support[0]];
    seen[q.index(support[0])] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &(t, h) in &q.arrows {
            let y = if t == x {
                h
            } else if h == x {
                t
            } else {
                continue;
            };
            if b.get(y) > 0 && !seen[q.index(y)] {
                seen[q.index(y)] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == support.len()
}
