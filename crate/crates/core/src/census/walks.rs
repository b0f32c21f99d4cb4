//! Closed non-backtracking walks on graphs and the `d = 1` census.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::FiniteGraph;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::weyl::TranslationVector;

/// Weight attached to each conjugacy class in a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeightConvention {
    /// The class counts with the number of chambers in its torus; for
    /// graphs this is the length of its primitive closed walk.
    IndPrimitiveLength,
    /// Every class counts once.
    Unit,
}

impl core::str::FromStr for WeightConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ind" | "ind_primitive_length" => Ok(WeightConvention::IndPrimitiveLength),
            "unit" => Ok(WeightConvention::Unit),
            _ => Err(Error::InvalidParameter(alloc::format!("unknown weight convention `{s}`"))),
        }
    }
}

impl WeightConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightConvention::IndPrimitiveLength => "ind",
            WeightConvention::Unit => "unit",
        }
    }
}

/// Weighted counts `N(k)` on a certified finite set of translation vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicCensus {
    pub d: usize,
    pub weights: WeightConvention,
    /// Every certified point, including those with `N(k) = 0`.
    pub counts: BTreeMap<TranslationVector, BigRational>,
    /// Largest coordinate sum of a certified point.
    pub bound: usize,
}

impl GeodesicCensus {
    pub fn empty(d: usize, weights: WeightConvention) -> Self {
        Self { d, weights, counts: BTreeMap::new(), bound: 0 }
    }

    pub fn get(&self, k: &TranslationVector) -> Option<&BigRational> {
        self.counts.get(k)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Support lies in the strict cone and counts are nonnegative; unit
    /// weights are integers.
    pub fn check_invariants(&self) -> bool {
        self.counts.iter().all(|(k, v)| {
            k.dim() == self.d
                && k.in_positive_cone()
                && *v >= BigRational::zero()
                && (self.weights != WeightConvention::Unit || v.is_integer())
        })
    }

    /// Sub-census on the points satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&TranslationVector) -> bool) -> Self {
        let counts: BTreeMap<_, _> = self.counts.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
        let bound = counts.keys().map(|k| k.coords().iter().sum::<i64>() as usize).max().unwrap_or(0);
        Self { d: self.d, weights: self.weights, counts, bound }
    }
}

/// Non-backtracking operator on directed edges: edge `e` is split into
/// `2e` (`u → v`) and `2e + 1` (`v → u`).
pub fn non_backtracking_matrix(g: &FiniteGraph) -> ExactMatrix {
    let (tail, head) = directed_ends(g);
    let m = tail.len();
    let mut b = ExactMatrix::zeros(m, m);
    for e in 0..m {
        for f in 0..m {
            if head[e] == tail[f] && f != (e ^ 1) {
                b.set(e, f, BigInt::one());
            }
        }
    }
    b
}

fn directed_ends(g: &FiniteGraph) -> (Vec<usize>, Vec<usize>) {
    let mut tail = Vec::with_capacity(2 * g.edge_count());
    let mut head = Vec::with_capacity(2 * g.edge_count());
    for &(u, v) in g.edges() {
        tail.extend([u, v]);
        head.extend([v, u]);
    }
    (tail, head)
}

pub const MAX_WALK_LENGTH: usize = 30;

/// Counts closed, non-backtracking, tailless walks of every length
/// `1..=max_m` twice: by exhaustive enumeration and by `tr(B^m)`. Any
/// disagreement is an error.
pub fn nb_walk_counts(g: &FiniteGraph, max_m: usize) -> Result<BTreeMap<usize, BigInt>> {
    if max_m > MAX_WALK_LENGTH {
        return Err(Error::ResourceGuard(alloc::format!("walk length {max_m} exceeds {MAX_WALK_LENGTH}")));
    }
    let enumerated = enumerate_closed_walks(g, max_m);
    let b = non_backtracking_matrix(g);
    let mut power = ExactMatrix::identity(b.rows());
    let mut out = BTreeMap::new();
    for m in 1..=max_m {
        power = power.mul(&b)?;
        let trace = power.trace();
        let count = BigInt::from(enumerated[m]);
        if trace != count {
            return Err(Error::OracleDisagreement {
                length: m,
                enumerated: alloc::format!("{count}"),
                trace: alloc::format!("{trace}"),
            });
        }
        out.insert(m, count);
    }
    Ok(out)
}

/// Depth-first enumeration over directed-edge sequences.
fn enumerate_closed_walks(g: &FiniteGraph, max_m: usize) -> Vec<u64> {
    let (tail, head) = directed_ends(g);
    let m = tail.len();
    let mut out_edges = vec![Vec::new(); g.vertex_count()];
    for e in 0..m {
        out_edges[tail[e]].push(e);
    }
    let mut counts = vec![0u64; max_m + 1];
    // explicit stack of (edge, depth)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for first in 0..m {
        stack.push((first, 1));
        while let Some((e, depth)) = stack.pop() {
            if head[e] == tail[first] && e != (first ^ 1) {
                counts[depth] += 1;
            }
            if depth == max_m {
                continue;
            }
            for &f in &out_edges[head[e]] {
                if f != (e ^ 1) {
                    stack.push((f, depth + 1));
                }
            }
        }
    }
    counts
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of rotation classes of closed walks of length `m`, from the walk
/// counts: `Σ_{l | m} P(l)/l` with `P` the primitive counts.
pub fn class_counts(walks: &BTreeMap<usize, BigInt>) -> Result<BTreeMap<usize, BigInt>> {
    let mut primitive = BTreeMap::new();
    for &m in walks.keys() {
        let mut p = BigInt::zero();
        for l in (1..=m).filter(|l| m % l == 0) {
            let w = walks.get(&l).ok_or_else(|| Error::InvalidParameter("walk counts must be contiguous".into()))?;
            p += w * mobius(m / l);
        }
        primitive.insert(m, p);
    }
    let mut out = BTreeMap::new();
    for &m in walks.keys() {
        let mut c = BigInt::zero();
        for l in (1..=m).filter(|l| m % l == 0) {
            let (q, r) = primitive[&l].div_rem(&BigInt::from(l));
            if !r.is_zero() {
                return Err(Error::Numerical(alloc::format!("primitive walk count at length {l} not divisible")));
            }
            c += q;
        }
        out.insert(m, c);
    }
    Ok(out)
}

/// `N(k)` for `k = 1..=max_k`, a step of `e_1` being two edges. Non-bipartite
/// graphs are replaced by their bipartite double cover when `double_cover`
/// is set and rejected otherwise.
pub fn census_d1(g: &FiniteGraph, max_k: usize, weights: WeightConvention, double_cover: bool) -> Result<GeodesicCensus> {
    let typed = if g.is_bipartite() {
        g.clone()
    } else if double_cover {
        g.bipartite_double_cover()
    } else {
        return Err(Error::NotBipartite);
    };
    let mut census = GeodesicCensus::empty(1, weights);
    if max_k == 0 {
        return Ok(census);
    }
    let walks = nb_walk_counts(&typed, 2 * max_k)?;
    let values = match weights {
        WeightConvention::IndPrimitiveLength => walks,
        WeightConvention::Unit => class_counts(&walks)?,
    };
    for k in 1..=max_k {
        census.counts.insert(TranslationVector::new(vec![k as i64]), BigRational::from_integer(values[&(2 * k)].clone()));
    }
    census.bound = max_k;
    Ok(census)
}
