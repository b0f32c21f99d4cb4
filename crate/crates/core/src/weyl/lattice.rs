//! Translation vectors, exact lattices, and the coordinate conventions of Ã_d.
//!
//! Translation vectors are written in the basis `e_j = r_j ω_j`, where the
//! `ω_j` are the vertices of the fundamental alcove adjacent to the special
//! vertex and `r_j` is the coarsest scale for which every type-0 vertex has
//! integral coordinates: `r = 2` for `d = 1`, `r_j = 1` for `d ≥ 2`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::affine::AffinePermutation;
use super::smith::{hermite_rows, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Building dimension `d` and thickness parameter `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterDatum {
    d: usize,
    q: u64,
}

impl CoxeterDatum {
    pub fn new(d: usize, q: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("dimension d must be >= 1".into()));
        }
        if q < 2 {
            return Err(Error::InvalidParameter("thickness q must be >= 2".into()));
        }
        Ok(Self { d, q })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn vertex_types(&self) -> usize {
        self.d + 1
    }

    pub fn generators(&self) -> usize {
        self.d + 1
    }
}

/// A point of ℤ^d in the `e`-basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TranslationVector(pub Vec<i64>);

impl TranslationVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    pub fn unit(d: usize, j: usize) -> Self {
        let mut v = vec![0; d];
        v[j] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, f: i64) -> Self {
        Self(self.0.iter().map(|x| x * f).collect())
    }

    /// Coordinates all `>= 0`.
    pub fn in_closed_cone(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Coordinates all `> 0` (the generic cone Λ⁺).
    pub fn in_positive_cone(&self) -> bool {
        in_positive_cone(self)
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl From<Vec<i64>> for TranslationVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl Add for &TranslationVector {
    type Output = TranslationVector;
    fn add(self, rhs: Self) -> TranslationVector {
        TranslationVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TranslationVector {
    type Output = TranslationVector;
    fn sub(self, rhs: Self) -> TranslationVector {
        TranslationVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &TranslationVector {
    type Output = TranslationVector;
    fn neg(self) -> TranslationVector {
        TranslationVector(self.0.iter().map(|a| -a).collect())
    }
}

pub fn in_positive_cone(k: &TranslationVector) -> bool {
    k.0.iter().all(|&x| x > 0)
}

/// Scale `r_j` relating `e_j` to the fundamental coweight `ω_j`.
pub fn coweight_scale(d: usize) -> i64 {
    if d == 1 {
        2
    } else {
        1
    }
}

/// Coordinates of `k` in the fundamental-coweight basis.
pub fn coweight_coords(k: &TranslationVector) -> Vec<i64> {
    let r = coweight_scale(k.dim());
    k.0.iter().map(|x| x * r).collect()
}

/// Inverse of [`coweight_coords`]; `None` if some coordinate is not divisible by the scale.
pub fn from_coweight_coords(w: &[i64]) -> Option<TranslationVector> {
    let r = coweight_scale(w.len());
    w.iter()
        .map(|&x| (x % r == 0).then_some(x / r))
        .collect::<Option<Vec<_>>>()
        .map(TranslationVector)
}

/// ε-coordinates (sum zero, length `d + 1`) of the translation, if it lies
/// in the coroot lattice, i.e. if it preserves vertex types.
pub fn epsilon_coords(k: &TranslationVector) -> Option<Vec<i64>> {
    let w = coweight_coords(k);
    let n = w.len() as i64 + 1;
    let weighted: i64 = w.iter().enumerate().map(|(j, x)| (j as i64 + 1) * x).sum();
    if weighted.rem_euclid(n) != 0 {
        return None;
    }
    let shift = weighted / n;
    let mut mu = vec![0; w.len() + 1];
    let mut tail = 0;
    for i in (0..w.len()).rev() {
        tail += w[i];
        mu[i] = tail - shift;
    }
    mu[w.len()] = -shift;
    Some(mu)
}

/// Translation vector of a sum-zero ε-vector after sorting it into the
/// dominant chamber (vectorial distance).
pub fn dominant_from_epsilon(mu: &[i64]) -> TranslationVector {
    let mut sorted = mu.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let w: Vec<i64> = sorted.windows(2).map(|p| p[0] - p[1]).collect();
    from_coweight_coords(&w).unwrap_or_else(|| TranslationVector(w))
}

/// Translation vector (not sorted) of a sum-zero ε-vector.
pub fn from_epsilon(mu: &[i64]) -> Option<TranslationVector> {
    let w: Vec<i64> = mu.windows(2).map(|p| p[0] - p[1]).collect();
    from_coweight_coords(&w)
}

/// The translation `t_k` as an affine Weyl group element.
pub fn translation_element(k: &TranslationVector) -> Result<AffinePermutation> {
    let mu = epsilon_coords(k).ok_or_else(|| Error::NotTypePreserving(k.0.clone()))?;
    AffinePermutation::translation(&mu)
}

/// Coxeter length of the translation by `k`: `Σ_{α > 0} |⟨k, α⟩|`.
///
/// For type A the positive roots pair with coweight coordinates as
/// consecutive partial sums, so this is `Σ_{i ≤ l} |w_i + … + w_l|`.
pub fn translation_length(k: &TranslationVector) -> u64 {
    let w = coweight_coords(k);
    let mut total = 0u64;
    for i in 0..w.len() {
        let mut s = 0i64;
        for x in &w[i..] {
            s += x;
            total += s.unsigned_abs();
        }
    }
    total
}

/// `λ(a_j)`: the translation realized by the `(d+1)`-st power of the
/// `j`-th minuscule coweight (the Hecke generators of the translation family).
pub fn hecke_generator(d: usize, j: usize) -> TranslationVector {
    let mut v = vec![0; d];
    v[j] = (d as i64 + 1) / coweight_scale(d);
    TranslationVector(v)
}

/// A lattice `scale · span_ℤ(basis)` inside ℚ^d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerLattice {
    d: usize,
    scale: BigRational,
    /// Basis vectors (one per entry), linearly independent, in Hermite form.
    basis: Vec<Vec<BigInt>>,
}

/// Wire form used by the CLI: `{d, scale_num, scale_den, basis}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub d: usize,
    pub scale_num: i64,
    pub scale_den: i64,
    pub basis: Vec<Vec<i64>>,
}

impl IntegerLattice {
    /// Lattice generated by `scale · g` for each generator `g` (dependent generators allowed).
    pub fn from_generators(d: usize, scale: BigRational, gens: &[Vec<BigInt>]) -> Result<Self> {
        if scale.is_zero() || scale.is_negative() {
            return Err(Error::InvalidParameter("lattice scale must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: g.len() });
        }
        Ok(Self { d, scale, basis: hermite_rows(gens, d) })
    }

    pub fn from_i64(d: usize, scale_num: i64, scale_den: i64, gens: &[Vec<i64>]) -> Result<Self> {
        if scale_den == 0 {
            return Err(Error::InvalidParameter("zero scale denominator".into()));
        }
        let gens: Vec<Vec<BigInt>> =
            gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_generators(d, BigRational::new(scale_num.into(), scale_den.into()), &gens)
    }

    /// ℤ^d.
    pub fn full(d: usize) -> Self {
        let gens: Vec<Vec<BigInt>> = (0..d).map(|j| TranslationVector::unit(d, j).to_big()).collect();
        Self::from_generators(d, BigRational::one(), &gens).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as exact rational points of ℚ^d.
    pub fn rational_basis(&self) -> Vec<Vec<BigRational>> {
        self.basis
            .iter()
            .map(|b| b.iter().map(|x| &self.scale * BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    /// Coordinates `x` with `v = scale · Σ x_i b_i`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: v.len() });
        }
        // v / scale must be an integer combination of the basis rows
        let w: Vec<BigRational> = v.iter().map(|x| x / &self.scale).collect();
        if w.iter().any(|x| !x.is_integer()) {
            return Ok(None);
        }
        let target: Vec<BigInt> = w.iter().map(|x| x.to_integer()).collect();
        if self.basis.is_empty() {
            return Ok(target.iter().all(Zero::is_zero).then(Vec::new));
        }
        // Solve B^T x = target with B rows = basis.
        let bt: IntMatrix = (0..self.d).map(|c| self.basis.iter().map(|b| b[c].clone()).collect()).collect();
        let s = smith_normal_form(&bt);
        // U B^T V = D  =>  D y = U target, x = V y
        let ut: Vec<BigInt> = s
            .left
            .iter()
            .map(|row| row.iter().zip(&target).map(|(a, b)| a * b).sum())
            .collect();
        let r = self.basis.len();
        let mut y = vec![BigInt::zero(); r];
        for (i, val) in ut.iter().enumerate() {
            let di = s.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if di.is_zero() {
                if !val.is_zero() {
                    return Ok(None);
                }
            } else {
                let (q, rem) = val.div_rem(&di);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            }
        }
        let x = s.right.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum()).collect();
        Ok(Some(x))
    }

    pub fn contains_rational(&self, v: &[BigRational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains(&self, k: &TranslationVector) -> Result<bool> {
        lattice_membership(k, self)
    }

    /// Every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> Result<bool> {
        for b in self.rational_basis() {
            if !other.contains_rational(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First basis vector of `self` outside `other`, if any.
    pub fn sublattice_witness(&self, other: &IntegerLattice) -> Result<Option<Vec<BigRational>>> {
        for b in self.rational_basis() {
            if !other.contains_rational(&b)? {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// `self ∩ other`, computed exactly through an integer kernel.
    pub fn intersection(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: other.d });
        }
        // common denominator: self = (1/D) span(A1), other = (1/D) span(A2)
        let den = self.scale.denom().lcm(other.scale.denom());
        let lift = |l: &IntegerLattice| -> Vec<Vec<BigInt>> {
            let f = (&l.scale * BigRational::from_integer(den.clone())).to_integer();
            l.basis.iter().map(|b| b.iter().map(|x| x * &f).collect()).collect()
        };
        let a1 = lift(self);
        let a2 = lift(other);
        let (r1, r2) = (a1.len(), a2.len());
        // columns: a1 vectors then -a2 vectors
        let m: IntMatrix = (0..self.d)
            .map(|c| {
                a1.iter()
                    .map(|b| b[c].clone())
                    .chain(a2.iter().map(|b| -b[c].clone()))
                    .collect()
            })
            .collect();
        let s = smith_normal_form(&m);
        let rank = s.rank();
        let mut gens = Vec::new();
        for col in rank..r1 + r2 {
            let coeffs: Vec<BigInt> = (0..r1).map(|i| s.right[i][col].clone()).collect();
            let v: Vec<BigInt> = (0..self.d)
                .map(|c| coeffs.iter().zip(&a1).map(|(x, b)| x * &b[c]).sum())
                .collect();
            gens.push(v);
        }
        let scale = BigRational::new(BigInt::one(), den);
        IntegerLattice::from_generators(self.d, scale, &gens)
    }

    /// Index `[self : sub]` when `sub ⊆ self` has full rank.
    pub fn index_of(&self, sub: &IntegerLattice) -> Result<Option<BigInt>> {
        let mut rows = Vec::new();
        for b in sub.rational_basis() {
            match self.coordinates(&b)? {
                Some(x) => rows.push(x),
                None => return Err(Error::NotSublattice(rows.len())),
            }
        }
        if rows.len() != self.rank() {
            return Ok(None);
        }
        let s = smith_normal_form(&rows);
        if s.rank() < self.rank() {
            return Ok(None);
        }
        Ok(Some(s.diag.iter().product()))
    }

    pub fn to_document(&self) -> Result<LatticeDocument> {
        let to_i64 = |x: &BigInt| {
            x.to_i64().ok_or_else(|| Error::InvalidParameter(String::from("lattice entry exceeds i64")))
        };
        Ok(LatticeDocument {
            d: self.d,
            scale_num: to_i64(self.scale.numer())?,
            scale_den: to_i64(self.scale.denom())?,
            basis: self
                .basis
                .iter()
                .map(|b| b.iter().map(to_i64).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn from_document(doc: &LatticeDocument) -> Result<Self> {
        Self::from_i64(doc.d, doc.scale_num, doc.scale_den, &doc.basis)
    }
}

pub fn lattice_membership(k: &TranslationVector, lattice: &IntegerLattice) -> Result<bool> {
    let v: Vec<BigRational> = k.0.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    lattice.contains_rational(&v)
}

/// The lattices `Λ` and `Λ'` governing class-number sums, in the standard basis `v_j`:
/// `Λ = ⟨f_0, f_1, …, f_d⟩` with `f_0 = (2/d)(v_1 + … + v_d)` and
/// `f_j = f_0 − 2((d+1)/d) v_j`, and `Λ' = ⟨2v_1, …, 2v_d⟩`.
pub fn build_theorem_lattices(d: usize) -> Result<(IntegerLattice, IntegerLattice)> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be >= 1".into()));
    }
    let n = d as i64;
    // f_0 = (2/d)·(1,…,1), f_j = (2/d)·((1,…,1) − (d+1)·v_j)
    let mut gens = vec![vec![1i64; d]];
    for j in 0..d {
        let mut g = vec![1i64; d];
        g[j] -= n + 1;
        gens.push(g);
    }
    let big = IntegerLattice::from_i64(d, 2, n, &gens)?;
    let doubled: Vec<Vec<i64>> = (0..d).map(|j| TranslationVector::unit(d, j).0).collect();
    let small = IntegerLattice::from_i64(d, 2, 1, &doubled)?;
    Ok((big, small))
}

/// The translation lattice of a type-preserving quotient in `e`-coordinates:
/// the coroot lattice `{k : Σ j·r_j·k_j ≡ 0 mod d+1}`.
pub fn coroot_lattice(d: usize) -> IntegerLattice {
    let r = coweight_scale(d);
    let n = d as i64 + 1;
    // generators: all e_j with j r_j ≡ 0 handled through Hermite reduction
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for j in 0..d {
        gens.push(TranslationVector::unit(d, j).scale(n).0);
    }
    // simple coroots α_i = 2ω_i − ω_{i−1} − ω_{i+1}, converted to e-coordinates
    for i in 0..d {
        let mut w = vec![0i64; d];
        w[i] += 2;
        if i > 0 {
            w[i - 1] -= 1;
        }
        if i + 1 < d {
            w[i + 1] -= 1;
        }
        gens.push(w.iter().map(|x| x / r).collect());
    }
    IntegerLattice::from_i64(d, 1, 1, &gens).expect("coroot lattice generators are valid")
}

/// Canonical label of `k + sub` inside `lattice / sub`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CosetLabel(pub Vec<BigInt>);

impl CosetLabel {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// Precomputed data for labelling cosets of `sub` in `lattice`.
#[derive(Debug, Clone)]
pub struct CosetLabeller {
    lattice: IntegerLattice,
    left: IntMatrix,
    diag: Vec<BigInt>,
}

impl CosetLabeller {
    pub fn new(lattice: &IntegerLattice, sub: &IntegerLattice) -> Result<Self> {
        // coordinates of sub's basis in lattice's basis, as columns
        let mut cols = Vec::new();
        for (i, b) in sub.rational_basis().iter().enumerate() {
            match lattice.coordinates(b)? {
                Some(x) => cols.push(x),
                None => return Err(Error::NotSublattice(i)),
            }
        }
        let r = lattice.rank();
        let m: IntMatrix = (0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let (left, diag) = if cols.is_empty() {
            (super::smith::identity(r), Vec::new())
        } else {
            let s = smith_normal_form(&m);
            (s.left, s.diag)
        };
        Ok(Self { lattice: lattice.clone(), left, diag })
    }

    pub fn label(&self, k: &TranslationVector) -> Result<CosetLabel> {
        let v: Vec<BigRational> = k.0.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let x = self.lattice.coordinates(&v)?.ok_or_else(|| Error::NotInLattice(k.0.clone()))?;
        let ux: Vec<BigInt> = self.left.iter().map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
        let label = ux
            .into_iter()
            .enumerate()
            .map(|(i, val)| match self.diag.get(i) {
                Some(di) if !di.is_zero() => val.mod_floor(di),
                _ => val,
            })
            .collect();
        Ok(CosetLabel(label))
    }
}

pub fn coset_label(k: &TranslationVector, lattice: &IntegerLattice, sub: &IntegerLattice) -> Result<CosetLabel> {
    CosetLabeller::new(lattice, sub)?.label(k)
}
