//! Simultaneous unitary triangularization of a commuting family.
//!
//! The first basis vector is the normalized constant function, whose
//! eigenvalues are known exactly. Each further vector is a common
//! eigenvector of the family compressed to the orthogonal complement of the
//! vectors found so far: pick the leading eigenvalue cluster of the first
//! operator, pass to its eigenspace, restrict the next operator, and so on.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::operators::HeckeFamily;
use crate::error::{Error, Result};
use crate::hecke_counts::CountConvention;
use crate::weyl::TranslationVector;

/// Relative tolerance for grouping eigenvalues into clusters.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Relative tolerance for the rank tests that detect Jordan blocks.
pub const JORDAN_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub n: usize,
    pub d: usize,
    pub q: u64,
    pub convention: CountConvention,
    /// Translation vectors of the family members, generators first.
    pub members: Vec<TranslationVector>,
    /// `eta[j][i]`: eigenvalue of member `i` on the `j`-th basis vector.
    pub eta: Vec<Vec<Complex64>>,
    /// Exact values of `η_1` on the members.
    pub eta1_exact: Vec<BigRational>,
    /// Per `j`: some member has a nontrivial Jordan block at `η_j`.
    pub jordan_flags: Vec<bool>,
    /// Per `j`: bound on the error of `η_j` from the off-triangle residual.
    pub error_bounds: Vec<f64>,
    /// Largest strictly-lower part (Frobenius) of a transformed member,
    /// relative to that member's norm.
    pub lower_residual: f64,
    /// Unitary change of basis; column `j` is the `j`-th basis vector.
    #[serde(skip)]
    pub transform: Option<DMatrix<Complex64>>,
}

impl SpectralData {
    pub fn generator_count(&self) -> usize {
        self.d.min(self.members.len())
    }

    /// `η_j` at member `k`, if `k` is a member.
    pub fn eta_at(&self, j: usize, k: &TranslationVector) -> Option<Complex64> {
        let i = self.members.iter().position(|m| m == k)?;
        Some(self.eta[j][i])
    }

    /// Distinct `η`-tuples on the generators, with multiplicities, in order of
    /// first appearance.
    pub fn grouped(&self, tol: f64) -> Vec<(Vec<Complex64>, usize)> {
        let g = self.generator_count();
        let mut out: Vec<(Vec<Complex64>, usize)> = Vec::new();
        for row in &self.eta {
            let key = &row[..g];
            match out.iter_mut().find(|(k, _)| close_tuple(k, key, tol)) {
                Some(e) => e.1 += 1,
                None => out.push((key.to_vec(), 1)),
            }
        }
        out
    }
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

fn close_tuple(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| close(*x, *y, tol))
}

/// Ordering: larger modulus first, then larger real part, then larger imaginary part.
fn spectral_order(a: &Complex64, b: &Complex64) -> core::cmp::Ordering {
    b.norm()
        .partial_cmp(&a.norm())
        .unwrap_or(core::cmp::Ordering::Equal)
        .then(b.re.partial_cmp(&a.re).unwrap_or(core::cmp::Ordering::Equal))
        .then(b.im.partial_cmp(&a.im).unwrap_or(core::cmp::Ordering::Equal))
}

fn eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = m.clone().try_schur(1e-13, 100_000).ok_or_else(|| Error::Numerical("Schur iteration failed".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Leading cluster of eigenvalues; returns the cluster mean.
fn leading_cluster(vals: &[Complex64], scale: f64) -> Complex64 {
    let mut sorted = vals.to_vec();
    sorted.sort_by(spectral_order);
    let lead = sorted[0];
    let tol = CLUSTER_TOL * (1.0 + scale);
    let members: Vec<Complex64> = vals.iter().copied().filter(|v| (v - lead).norm() <= tol).collect();
    members.iter().sum::<Complex64>() / members.len() as f64
}

/// Orthonormal basis (columns) of the numerical kernel of `m`. At least one
/// vector is always returned: the right singular vector of the smallest
/// singular value.
fn kernel(m: &DMatrix<Complex64>, rel_tol: f64) -> Result<DMatrix<Complex64>> {
    let n = m.ncols();
    let svd = m.clone().try_svd(false, true, 1e-15, 100_000).ok_or_else(|| Error::Numerical("SVD failed".into()))?;
    let v_t = svd.v_t.ok_or_else(|| Error::Numerical("SVD without right vectors".into()))?;
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let mut idx: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] <= rel_tol * (1.0 + smax)).collect();
    if idx.is_empty() {
        let i = (0..sv.len()).min_by(|&a, &b| sv[a].partial_cmp(&sv[b]).unwrap()).unwrap();
        idx.push(i);
    }
    Ok(DMatrix::from_fn(n, idx.len(), |r, c| v_t[(idx[c], r)].conj()))
}

/// Householder-type unitary whose first column is a unit multiple of `x`.
fn unitary_with_first_column(x: &DVector<Complex64>) -> DMatrix<Complex64> {
    let n = x.len();
    let x = x / Complex64::new(x.norm(), 0.0);
    let x0 = x[0];
    let alpha = if x0.norm() > 0.0 { -x0 / x0.norm() } else { Complex64::new(-1.0, 0.0) };
    let mut u = x.clone();
    u[0] -= alpha;
    let un = u.norm_squared();
    if un < 1e-30 {
        // x is already a multiple of e_1
        return DMatrix::identity(n, n);
    }
    DMatrix::identity(n, n) - (&u * u.adjoint()) * Complex64::new(2.0 / un, 0.0)
}

fn frobenius(m: &DMatrix<Complex64>) -> f64 {
    Float::sqrt(m.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Simultaneously triangularizes a commuting family (checked exactly first).
pub fn simultaneous_triangularize(fam: &HeckeFamily) -> Result<SpectralData> {
    fam.check_commutation()?;
    let n = fam.size();
    let mats: Vec<DMatrix<Complex64>> = fam.members.iter().map(|(_, m)| m.to_complex()).collect();
    let members: Vec<TranslationVector> = fam.members.iter().map(|(k, _)| k.clone()).collect();
    let eta1_exact: Vec<BigRational> = fam
        .members
        .iter()
        .map(|(_, m)| {
            m.constant_row_sum()
                .map(BigRational::from_integer)
                .ok_or_else(|| Error::Numerical("constant function is not a common eigenvector".into()))
        })
        .collect::<Result<_>>()?;

    if n == 0 {
        return Err(Error::InvalidParameter("empty family".into()));
    }
    let ones = DVector::from_element(n, Complex64::new(1.0, 0.0));
    let mut w = unitary_with_first_column(&ones);
    let mut eta = Vec::with_capacity(n);
    eta.push(eta1_exact.iter().map(|v| Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)).collect::<Vec<_>>());

    for m in 1..n {
        let wc = w.columns(m, n - m).into_owned();
        let compressed: Vec<DMatrix<Complex64>> = mats.iter().map(|a| wc.adjoint() * a * &wc).collect();
        // successively narrow to a common eigenspace
        let mut basis: DMatrix<Complex64> = DMatrix::identity(n - m, n - m);
        for b in &compressed {
            let restricted = basis.adjoint() * b * &basis;
            let vals = eigenvalues(&restricted)?;
            let scale = frobenius(&restricted);
            let lambda = leading_cluster(&vals, scale);
            let shifted = &restricted - DMatrix::identity(restricted.nrows(), restricted.nrows()) * lambda;
            let ker = kernel(&shifted, CLUSTER_TOL)?;
            basis = &basis * ker;
        }
        let v: DVector<Complex64> = basis.column(0).into_owned();
        let h = unitary_with_first_column(&v);
        let new_wc = &wc * h;
        w.columns_mut(m, n - m).copy_from(&new_wc);
        let col = w.column(m).into_owned();
        eta.push(mats.iter().map(|a| (col.adjoint() * a * &col)[(0, 0)]).collect());
    }

    // residuals of the triangular form
    let mut lower_residual = 0.0f64;
    let mut error_bounds = vec![0.0f64; n];
    for a in &mats {
        let r = w.adjoint() * a * &w;
        let mut lower = 0.0;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..i {
                row += r[(i, j)].norm_sqr();
            }
            lower += row;
            // a diagonal entry moves by at most the off-triangle mass in its row and column
            let col: f64 = (i + 1..n).map(|k| r[(k, i)].norm_sqr()).sum();
            let bound = Float::sqrt(row + col) + (n as f64) * f64::EPSILON * frobenius(a);
            error_bounds[i] = error_bounds[i].max(bound);
        }
        let norm = frobenius(a).max(1.0);
        lower_residual = lower_residual.max(Float::sqrt(lower) / norm);
    }
    error_bounds[0] = 0.0;

    let jordan_flags = jordan_flags(&mats, &eta)?;
    Ok(SpectralData {
        n,
        d: fam.datum.d(),
        q: fam.datum.q(),
        convention: fam.convention,
        members,
        eta,
        eta1_exact,
        jordan_flags,
        error_bounds,
        lower_residual,
        transform: Some(w),
    })
}

/// `flags[j]`: for some member, the geometric multiplicity of `η_j` is
/// smaller than its algebraic multiplicity.
fn jordan_flags(mats: &[DMatrix<Complex64>], eta: &[Vec<Complex64>]) -> Result<Vec<bool>> {
    let n = eta.len();
    let mut flags = vec![false; n];
    for (i, a) in mats.iter().enumerate() {
        let scale = frobenius(a);
        let mut done = vec![false; n];
        for j in 0..n {
            if done[j] {
                continue;
            }
            let lambda = eta[j][i];
            let group: Vec<usize> = (0..n).filter(|&k| close(eta[k][i], lambda, CLUSTER_TOL)).collect();
            let mean = group.iter().map(|&k| eta[k][i]).sum::<Complex64>() / group.len() as f64;
            let shifted = a - DMatrix::identity(a.nrows(), a.nrows()) * mean;
            let svd = shifted.svd(false, false);
            let geometric = svd.singular_values.iter().filter(|&&s| s <= JORDAN_TOL * (1.0 + scale)).count();
            let defective = geometric < group.len();
            for &k in &group {
                done[k] = true;
                flags[k] |= defective;
            }
        }
    }
    Ok(flags)
}

/// One row of the spectral-gap report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub j: usize,
    /// `|η_j(a_i)| / η_1(a_i)` for each generator.
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// Some generator has ratio strictly below one.
    pub strict: bool,
    /// Ratio one at every generator (only reported for `j ≥ 2`).
    pub equality_flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub tolerance: f64,
    pub rows: Vec<BoundRow>,
    /// `|η_j(a_i)| ≤ η_1(a_i)·(1 + tol)` for all `j`, `i`.
    pub weak_holds: bool,
    /// Every `j ≥ 2` is strict.
    pub all_strict: bool,
    pub flagged: Vec<usize>,
}

pub const BOUND_TOL: f64 = 1e-9;

pub fn eigenvalue_bound_report(data: &SpectralData) -> BoundReport {
    let g = data.generator_count();
    let base: Vec<f64> = (0..g).map(|i| data.eta[0][i].norm()).collect();
    let mut rows = Vec::with_capacity(data.eta.len());
    for (j, row) in data.eta.iter().enumerate() {
        let ratios: Vec<f64> = (0..g).map(|i| if j == 0 { 1.0 } else { row[i].norm() / base[i] }).collect();
        let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
        let strict = ratios.iter().any(|&r| r < 1.0 - BOUND_TOL);
        let equality_flag = j > 0 && !strict;
        rows.push(BoundRow { j: j + 1, ratios, max_ratio, strict, equality_flag });
    }
    let weak_holds = rows.iter().all(|r| r.max_ratio <= 1.0 + BOUND_TOL);
    let flagged: Vec<usize> = rows.iter().filter(|r| r.equality_flag).map(|r| r.j).collect();
    BoundReport { tolerance: BOUND_TOL, weak_holds, all_strict: flagged.is_empty(), flagged, rows }
}
