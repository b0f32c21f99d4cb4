//! Generating functions of censuses, their rational reconstruction with
//! denominators read off the Hecke spectrum, and the dominant-term
//! asymptotics.
//!
//! The series is kept in partial-fraction form
//! `S(u) = Σ_j Σ_{e∈E} c_{j,e} u^e / ∏_i (1 − η_j(a_i) u_i^{λ_i})`, one
//! term per distinct `η` tuple on the generators; `λ_i` is the only nonzero
//! coordinate of `λ(a_i)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::census::GeodesicCensus;
use crate::error::{Error, Result};
use crate::hecke_counts::CountConvention;
use crate::spectra::{SpectralData, CLUSTER_TOL};
use crate::weyl::{coroot_lattice, hecke_generator, CosetLabeller, IntegerLattice, LatticeDocument, TranslationVector};

/// Relative residual accepted by a fit.
pub const FIT_TOL: f64 = 1e-8;
/// Largest numerator box tried in free mode.
pub const MAX_BOX: i64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FitMode {
    /// Independent numerator coefficients per `η` tuple and support point.
    Free,
    /// Coefficients `s·Σ η_j(e)` over the rows of each tuple, one scale `s`.
    SpectralNumerator,
}

/// Denominator factor group and its numerator coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    /// `η(a_1), …, η(a_d)`.
    pub eta: Vec<Complex64>,
    pub multiplicity: usize,
    /// Aligned with [`RationalSeries::support`].
    pub coefficients: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub d: usize,
    pub convention: CountConvention,
    /// `λ_i(a_i)`.
    pub exponents: Vec<i64>,
    /// Numerator support `E`.
    pub support: Vec<TranslationVector>,
    pub terms: Vec<SeriesTerm>,
    pub mode: FitMode,
    /// Fitted scale in spectral-numerator mode.
    pub scale: Option<f64>,
    pub fit_residual: f64,
    /// Census points used in the fit.
    pub window: Vec<TranslationVector>,
    /// Whether predictions are rounded to integers.
    pub integral: bool,
}

impl RationalSeries {
    /// Coefficient of `u^k`.
    pub fn coefficient(&self, k: &TranslationVector) -> Complex64 {
        let mut total = Complex64::zero();
        for (ei, e) in self.support.iter().enumerate() {
            let Some(m) = steps(k, e, &self.exponents) else { continue };
            for t in &self.terms {
                total += t.coefficients[ei] * monomial(&t.eta, &m);
            }
        }
        total
    }

    /// Real prediction of `N(k)`.
    pub fn predict(&self, k: &TranslationVector) -> f64 {
        self.coefficient(k).re
    }

    /// Rounded prediction when the census was integral.
    pub fn predict_integer(&self, k: &TranslationVector) -> Option<BigInt> {
        if !self.integral {
            return None;
        }
        BigInt::from_f64(self.predict(k).round())
    }

    /// Numerator over the common denominator `∏_j ∏_i (1 − η_j(a_i)u_i^{λ_i})`,
    /// as `(exponent, coefficient)` pairs with nonzero coefficients.
    pub fn numerator(&self) -> Vec<(Vec<i64>, Complex64)> {
        let mut total: BTreeMap<Vec<i64>, Complex64> = BTreeMap::new();
        for (j, t) in self.terms.iter().enumerate() {
            let mut poly: BTreeMap<Vec<i64>, Complex64> = BTreeMap::new();
            for (e, c) in self.support.iter().zip(&t.coefficients) {
                *poly.entry(e.coords().to_vec()).or_insert_with(Complex64::zero) += c;
            }
            for (jj, other) in self.terms.iter().enumerate() {
                if jj == j {
                    continue;
                }
                for i in 0..self.d {
                    let mut shift = vec![0; self.d];
                    shift[i] = self.exponents[i];
                    poly = times_binomial(&poly, &shift, -other.eta[i]);
                }
            }
            for (e, c) in poly {
                *total.entry(e).or_insert_with(Complex64::zero) += c;
            }
        }
        total.into_iter().filter(|(_, c)| c.norm() > 1e-9).collect()
    }
}

/// `p · (1 + a·u^shift)`.
fn times_binomial(p: &BTreeMap<Vec<i64>, Complex64>, shift: &[i64], a: Complex64) -> BTreeMap<Vec<i64>, Complex64> {
    let mut out = p.clone();
    for (e, c) in p {
        let moved: Vec<i64> = e.iter().zip(shift).map(|(x, s)| x + s).collect();
        *out.entry(moved).or_insert_with(Complex64::zero) += c * a;
    }
    out
}

/// `m_i = (k_i − e_i)/λ_i` if all are nonnegative integers.
fn steps(k: &TranslationVector, e: &TranslationVector, exponents: &[i64]) -> Option<Vec<u32>> {
    k.coords()
        .iter()
        .zip(e.coords())
        .zip(exponents)
        .map(|((&ki, &ei), &l)| {
            let diff = ki - ei;
            (diff >= 0 && diff % l == 0).then(|| (diff / l) as u32)
        })
        .collect()
}

fn monomial(eta: &[Complex64], m: &[u32]) -> Complex64 {
    eta.iter().zip(m).fold(Complex64::new(1.0, 0.0), |acc, (z, &p)| acc * z.powu(p))
}

/// `λ_i(a_i)`, checking that each `λ(a_i)` is a multiple of the `i`-th axis.
pub fn generator_exponents(d: usize) -> Vec<i64> {
    (0..d)
        .map(|i| {
            let g = hecke_generator(d, i);
            assert!(g.coords().iter().enumerate().all(|(j, &x)| (j == i) == (x != 0)), "generator is not axial");
            g.coords()[i]
        })
        .collect()
}

/// Minimal positive representatives of `Λ / ⊕ λ_i ℤ e_i`: lattice points
/// with `1 ≤ e_i ≤ λ_i`.
pub fn numerator_support(d: usize) -> Vec<TranslationVector> {
    box_points(&coroot_lattice(d), &generator_exponents(d))
}

fn box_points(lattice: &IntegerLattice, upper: &[i64]) -> Vec<TranslationVector> {
    let d = upper.len();
    let mut out = Vec::new();
    let mut cur = vec![1i64; d];
    loop {
        let k = TranslationVector::new(cur.clone());
        if lattice.contains(&k).unwrap_or(false) {
            out.push(k);
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= upper[i] {
                break;
            }
            cur[i] = 1;
        }
    }
}

/// The translation lattice `Λ` of a type-preserving quotient and the
/// sublattice `Λ' = ⊕ ℤ λ(a_i)` of generator steps.
pub fn zeta_lattices(d: usize) -> Result<(IntegerLattice, IntegerLattice)> {
    let gens: Vec<Vec<i64>> = (0..d).map(|i| hecke_generator(d, i).coords().to_vec()).collect();
    Ok((coroot_lattice(d), IntegerLattice::from_i64(d, 1, 1, &gens)?))
}

/// Distinct `η` tuples on the generators with their row indices.
fn tuple_groups(spec: &SpectralData) -> Vec<(Vec<Complex64>, Vec<usize>)> {
    let g = spec.generator_count();
    let mut out: Vec<(Vec<Complex64>, Vec<usize>)> = Vec::new();
    for (j, row) in spec.eta.iter().enumerate() {
        let key = &row[..g];
        let hit = out.iter_mut().find(|(k, _)| {
            k.iter().zip(key).all(|(a, b)| (a - b).norm() <= CLUSTER_TOL * (1.0 + a.norm().max(b.norm())))
        });
        match hit {
            Some(e) => e.1.push(j),
            None => out.push((key.to_vec(), vec![j])),
        }
    }
    out
}

fn census_values(census: &GeodesicCensus) -> (Vec<TranslationVector>, Vec<f64>, bool) {
    let points: Vec<TranslationVector> = census.counts.keys().cloned().collect();
    let values: Vec<f64> = census.counts.values().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
    let integral = census.counts.values().all(BigRational::is_integer);
    (points, values, integral)
}

/// Largest relative error; zero when integral and every rounded value is exact.
fn residual(series: &RationalSeries, census: &GeodesicCensus) -> f64 {
    if series.integral
        && census.counts.iter().all(|(k, v)| series.predict_integer(k).map(BigRational::from_integer).as_ref() == Some(v))
    {
        return 0.0;
    }
    census
        .counts
        .iter()
        .map(|(k, v)| {
            let n = v.to_f64().unwrap_or(f64::NAN);
            (series.coefficient(k) - Complex64::new(n, 0.0)).norm() / n.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Least squares by QR with column pivoting; columns are normalized first.
fn least_squares(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> (DVector<Complex64>, usize) {
    let cols = a.ncols();
    let norms: Vec<f64> = (0..cols).map(|j| Float::sqrt(a.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>())).collect();
    let mut scaled = a.clone();
    for (j, &nj) in norms.iter().enumerate() {
        if nj > 0.0 {
            scaled.column_mut(j).unscale_mut(nj);
        }
    }
    let qr = scaled.col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let qb = q.adjoint() * b;
    let steps = r.nrows().min(cols);
    let top = if steps > 0 { r[(0, 0)].norm() } else { 0.0 };
    let rank = (0..steps).take_while(|&i| r[(i, i)].norm() > 1e-11 * top.max(f64::MIN_POSITIVE)).count();
    let mut z = DVector::from_element(cols, Complex64::zero());
    for i in (0..rank).rev() {
        let mut acc = qb[i];
        for k in i + 1..rank {
            acc -= r[(i, k)] * z[k];
        }
        z[i] = acc / r[(i, i)];
    }
    qr.p().inv_permute_rows(&mut z);
    for (j, &nj) in norms.iter().enumerate() {
        if nj > 0.0 {
            z[j] /= nj;
        }
    }
    (z, rank)
}

fn zero_series(census: &GeodesicCensus, spec: &SpectralData) -> RationalSeries {
    RationalSeries {
        d: spec.d,
        convention: spec.convention,
        exponents: generator_exponents(spec.d),
        support: Vec::new(),
        terms: Vec::new(),
        mode: FitMode::Free,
        scale: None,
        fit_residual: 0.0,
        window: census.counts.keys().cloned().collect(),
        integral: true,
    }
}

/// Free-mode fit with numerator support `Λ ∩ [1, b]^d`. Returns the series
/// and the rank of the system.
pub fn fit_free(census: &GeodesicCensus, spec: &SpectralData, b: i64) -> Result<(RationalSeries, usize)> {
    let d = spec.d;
    let exponents = generator_exponents(d);
    let support = box_points(&coroot_lattice(d), &vec![b; d]);
    let groups = tuple_groups(spec);
    let (points, values, integral) = census_values(census);
    let cols = groups.len() * support.len();
    let mut a = DMatrix::from_element(points.len(), cols, Complex64::zero());
    for (r, k) in points.iter().enumerate() {
        for (ei, e) in support.iter().enumerate() {
            let Some(m) = steps(k, e, &exponents) else { continue };
            for (gi, (eta, _)) in groups.iter().enumerate() {
                a[(r, gi * support.len() + ei)] = monomial(eta, &m);
            }
        }
    }
    let rhs = DVector::from_iterator(points.len(), values.iter().map(|&v| Complex64::new(v, 0.0)));
    let (x, rank) = least_squares(&a, &rhs);
    let terms = groups
        .iter()
        .enumerate()
        .map(|(gi, (eta, rows))| SeriesTerm {
            eta: eta.clone(),
            multiplicity: rows.len(),
            coefficients: (0..support.len()).map(|ei| x[gi * support.len() + ei]).collect(),
        })
        .collect();
    let mut series = RationalSeries {
        d,
        convention: spec.convention,
        exponents,
        support,
        terms,
        mode: FitMode::Free,
        scale: None,
        fit_residual: 0.0,
        window: points,
        integral,
    };
    series.fit_residual = residual(&series, census);
    Ok((series, rank))
}

/// Spectral-numerator fit: the only unknown is the scale `s`; requires `η`
/// at every minimal representative among the spectral members.
pub fn fit_spectral(census: &GeodesicCensus, spec: &SpectralData) -> Result<RationalSeries> {
    let d = spec.d;
    let exponents = generator_exponents(d);
    let support = numerator_support(d);
    let groups = tuple_groups(spec);
    let mut terms = Vec::with_capacity(groups.len());
    for (eta, rows) in &groups {
        let mut coefficients = Vec::with_capacity(support.len());
        for e in &support {
            let mut c = Complex64::zero();
            for &j in rows {
                c += spec.eta_at(j, e).ok_or_else(|| {
                    Error::InvalidParameter(alloc::format!("spectral data lacks the member {:?}", e.coords()))
                })?;
            }
            coefficients.push(c);
        }
        terms.push(SeriesTerm { eta: eta.clone(), multiplicity: rows.len(), coefficients });
    }
    let (points, values, integral) = census_values(census);
    let mut unit = RationalSeries {
        d,
        convention: spec.convention,
        exponents,
        support,
        terms,
        mode: FitMode::SpectralNumerator,
        scale: Some(1.0),
        fit_residual: 0.0,
        window: points.clone(),
        integral,
    };
    let basis: Vec<f64> = points.iter().map(|k| unit.predict(k)).collect();
    let num: f64 = basis.iter().zip(&values).map(|(p, v)| p * v).sum();
    let den: f64 = basis.iter().map(|p| p * p).sum();
    let s = if den > 0.0 { num / den } else { 0.0 };
    for t in &mut unit.terms {
        for c in &mut t.coefficients {
            *c *= s;
        }
    }
    unit.scale = Some(s);
    unit.fit_residual = residual(&unit, census);
    Ok(unit)
}

/// Rational reconstruction: free mode with growing numerator box while the
/// system stays overdetermined, then the spectral numerator. Fails with the
/// best residual when neither meets [`FIT_TOL`].
pub fn fit_rational(census: &GeodesicCensus, spec: &SpectralData) -> Result<RationalSeries> {
    if census.d != spec.d {
        return Err(Error::DimensionMismatch { expected: spec.d, found: census.d });
    }
    if census.counts.values().all(Zero::is_zero) {
        return Ok(zero_series(census, spec));
    }
    let largest = census.counts.keys().flat_map(|k| k.coords().iter().copied()).max().unwrap_or(1);
    let mut best = f64::INFINITY;
    for b in 1..=largest.min(MAX_BOX) {
        let (series, rank) = fit_free(census, spec, b)?;
        if rank >= census.counts.len() {
            break;
        }
        if series.fit_residual <= FIT_TOL {
            return Ok(series);
        }
        best = best.min(series.fit_residual);
    }
    match fit_spectral(census, spec) {
        Ok(series) if series.fit_residual <= FIT_TOL => Ok(series),
        Ok(series) => Err(Error::FitCap { residual: best.min(series.fit_residual) }),
        Err(_) => Err(Error::FitCap { residual: best }),
    }
}

/// Best available fit without the tolerance check: the accepted fit if
/// any, otherwise the spectral-numerator or smallest free fit.
pub fn fit_best(census: &GeodesicCensus, spec: &SpectralData) -> Result<RationalSeries> {
    match fit_rational(census, spec) {
        Ok(s) => Ok(s),
        Err(Error::FitCap { .. }) => match fit_spectral(census, spec) {
            Ok(s) => Ok(s),
            Err(_) => Ok(fit_free(census, spec, 1)?.0),
        },
        Err(e) => Err(e),
    }
}

/// `C` on one coset of `Λ / Λ'`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetConstant {
    pub label: Vec<i64>,
    pub representative: TranslationVector,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub d: usize,
    pub convention: CountConvention,
    /// `c_ν = η_1(a_ν)^{1/λ_ν}`.
    pub c: Vec<f64>,
    pub eta1: Vec<f64>,
    pub exponents: Vec<i64>,
    pub constants: Vec<CosetConstant>,
    /// `max_{j≥2} min_ν |η_j(a_ν)|/η_1(a_ν)`.
    pub theta: f64,
    pub envelope_available: bool,
    /// Rows `j ≥ 2` whose best generator is `ν`, per `ν`.
    pub tail_rows: Vec<usize>,
    pub lattice: LatticeDocument,
    pub sublattice: LatticeDocument,
}

impl AsymptoticReport {
    fn labeller(&self) -> Result<CosetLabeller> {
        CosetLabeller::new(&IntegerLattice::from_document(&self.lattice)?, &IntegerLattice::from_document(&self.sublattice)?)
    }

    /// `C(k)·c^k` on `Λ`, `None` off it.
    pub fn dominant(&self, k: &TranslationVector) -> Result<Option<f64>> {
        Ok(self.dominant_with(&self.labeller()?, k))
    }

    fn dominant_with(&self, labeller: &CosetLabeller, k: &TranslationVector) -> Option<f64> {
        let label = labeller.label(k).ok()?;
        let key: Vec<i64> = label.0.iter().map(|x| x.to_i64().unwrap_or(0)).collect();
        let constant = self.constants.iter().find(|c| c.label == key)?;
        Some(constant.value * self.c.iter().zip(k.coords()).map(|(c, &x)| Float::powi(*c, x as i32)).product::<f64>())
    }

    /// `(Σ_{j≥2} θ^{m_ν(j)}) · N_1(k)` with `m_ν` counted in generator steps.
    fn envelope_with(&self, labeller: &CosetLabeller, k: &TranslationVector) -> Option<f64> {
        if !self.envelope_available {
            return None;
        }
        let n1 = self.dominant_with(labeller, k)?;
        let label = labeller.label(k).ok()?;
        let key: Vec<i64> = label.0.iter().map(|x| x.to_i64().unwrap_or(0)).collect();
        let e = &self.constants.iter().find(|c| c.label == key)?.representative;
        let mut factor = 0.0;
        for (nu, &count) in self.tail_rows.iter().enumerate() {
            let m = (k.coords()[nu] - e.coords()[nu]) / self.exponents[nu];
            factor += count as f64 * Float::powi(self.theta, m as i32);
        }
        Some(factor * n1.abs())
    }
}

/// Dominant term of a fitted series: `c`, the coset constants from the top
/// term's numerator, and `θ` from the spectrum.
pub fn dominant_term(
    spec: &SpectralData,
    fitted: &RationalSeries,
    lattice: &IntegerLattice,
    sublattice: &IntegerLattice,
) -> Result<AsymptoticReport> {
    let d = spec.d;
    if fitted.d != d || lattice.dim() != d || sublattice.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: fitted.d });
    }
    let g = spec.generator_count();
    if g < d {
        return Err(Error::InvalidParameter("spectral data lacks generator members".into()));
    }
    let exponents = generator_exponents(d);
    let eta1: Vec<f64> = spec.eta1_exact[..d].iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let c: Vec<f64> = eta1
        .iter()
        .zip(&exponents)
        .map(|(&h, &l)| {
            let root = Float::powf(h, 1.0 / l as f64);
            // snap exact integer roots
            let r = Float::round(root);
            if Float::powi(r, l as i32) == h { r } else { root }
        })
        .collect();
    let labeller = CosetLabeller::new(lattice, sublattice)?;
    // the term carrying η_1
    let top = fitted.terms.iter().position(|t| {
        t.eta.iter().zip(&eta1).all(|(z, &h)| (z - Complex64::new(h, 0.0)).norm() <= CLUSTER_TOL * h.abs().max(1.0))
    });
    let mut constants: Vec<CosetConstant> = Vec::new();
    for (ei, e) in fitted.support.iter().enumerate() {
        let Ok(label) = labeller.label(e) else { continue };
        let key: Vec<i64> = label.0.iter().map(|x| x.to_i64().unwrap_or(0)).collect();
        let coefficient = top.map_or(0.0, |t| fitted.terms[t].coefficients[ei].re);
        // reduce to the minimal representative: u^{e + λ_i} = η_1(a_i)^{-1}·… is absorbed by c^{-e}
        let value = coefficient / c.iter().zip(e.coords()).map(|(c, &x)| Float::powi(*c, x as i32)).product::<f64>();
        match constants.iter_mut().find(|x| x.label == key) {
            Some(existing) => existing.value += value,
            None => constants.push(CosetConstant { label: key, representative: e.clone(), value }),
        }
    }
    let mut theta = 0.0f64;
    let mut tail_rows = vec![0usize; d];
    for row in spec.eta.iter().skip(1) {
        let (nu, ratio) = (0..d)
            .map(|i| (i, row[i].norm() / eta1[i]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        tail_rows[nu] += 1;
        theta = theta.max(ratio);
    }
    Ok(AsymptoticReport {
        d,
        convention: spec.convention,
        c,
        eta1,
        exponents,
        constants,
        theta,
        envelope_available: theta < 1.0 - crate::spectra::BOUND_TOL,
        tail_rows,
        lattice: lattice.to_document()?,
        sublattice: sublattice.to_document()?,
    })
}

/// One census point compared with the dominant term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub k: TranslationVector,
    pub n: f64,
    pub on_lattice: bool,
    /// `C(k)·c^k`.
    pub predicted: Option<f64>,
    pub ratio: Option<f64>,
    pub envelope: Option<f64>,
    pub within_envelope: Option<bool>,
    /// Nonzero count off `Λ`.
    pub violation: bool,
}

/// `N(k)/(C(k)c^k)` at every census point, in census order.
pub fn ratio_trajectory(census: &GeodesicCensus, report: &AsymptoticReport) -> Result<Vec<RatioRow>> {
    let labeller = report.labeller()?;
    let lattice = IntegerLattice::from_document(&report.lattice)?;
    let mut rows = Vec::with_capacity(census.counts.len());
    for (k, v) in &census.counts {
        let n = v.to_f64().unwrap_or(f64::NAN);
        let on_lattice = lattice.contains(k)?;
        let predicted = if on_lattice { report.dominant_with(&labeller, k) } else { None };
        let ratio = predicted.filter(|p| *p != 0.0).map(|p| n / p);
        let envelope = if on_lattice { report.envelope_with(&labeller, k) } else { None };
        let within_envelope = envelope.zip(predicted).map(|(env, p)| (n - p).abs() <= env * (1.0 + 1e-9) + 1e-9);
        rows.push(RatioRow {
            k: k.clone(),
            n,
            on_lattice,
            predicted,
            ratio,
            envelope,
            within_envelope,
            violation: !on_lattice && !v.is_zero(),
        });
    }
    Ok(rows)
}

/// Measured growth per unit step along each axis, `(N(k + λ_ν e_ν)/N(k))^{1/λ_ν}`
/// at the largest census pair with both values positive.
pub fn measured_growth(census: &GeodesicCensus) -> Vec<Option<f64>> {
    let exponents = generator_exponents(census.d);
    (0..census.d)
        .map(|nu| {
            census
                .counts
                .iter()
                .rev()
                .filter_map(|(k, v)| {
                    let mut next = k.coords().to_vec();
                    next[nu] += exponents[nu];
                    let w = census.counts.get(&TranslationVector::new(next))?;
                    let (a, b) = (v.to_f64()?, w.to_f64()?);
                    (a > 0.0 && b > 0.0).then(|| Float::powf(b / a, 1.0 / exponents[nu] as f64))
                })
                .next()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{census_d1, WeightConvention};
    use crate::complex::{chamber_system_of_graph, named};
    use crate::spectra::{simultaneous_triangularize, HeckeFamily};

    fn census_from(values: &[i64]) -> GeodesicCensus {
        let mut c = GeodesicCensus::empty(1, WeightConvention::IndPrimitiveLength);
        for (i, &v) in values.iter().enumerate() {
            c.counts.insert(TranslationVector::new(vec![i as i64 + 1]), BigRational::from_integer(v.into()));
        }
        c.bound = values.len();
        c
    }

    fn synthetic_spec(etas: &[f64]) -> SpectralData {
        SpectralData {
            n: etas.len(),
            d: 1,
            q: 2,
            convention: CountConvention::Iwahori,
            members: vec![TranslationVector::new(vec![1])],
            eta: etas.iter().map(|&x| vec![Complex64::new(x, 0.0)]).collect(),
            eta1_exact: vec![BigRational::from_float(etas[0]).unwrap()],
            jordan_flags: vec![false; etas.len()],
            error_bounds: vec![0.0; etas.len()],
            lower_residual: 0.0,
            transform: None,
        }
    }

    #[test]
    fn synthetic_recovery() {
        // 1/((1−2u)(1−u)) − 1, shifted so the series starts at u^1: N(k) = 2^{k+1} − 1
        let values: Vec<i64> = (1..=8).map(|k| (1 << (k + 1)) - 1).collect();
        let census = census_from(&values);
        let spec = synthetic_spec(&[2.0, 1.0]);
        let s = fit_rational(&census, &spec).unwrap();
        assert_eq!(s.fit_residual, 0.0);
        assert_eq!(s.mode, FitMode::Free);
        let num = s.numerator();
        // u(3 − 2u)... N(1) = 3, N(2) = 7 gives numerator 3u − 2u²
        assert_eq!(num.len(), 2);
        assert!((num[0].1.re - 3.0).abs() < 1e-9 && (num[1].1.re + 2.0).abs() < 1e-9);
        assert_eq!(s.predict_integer(&TranslationVector::new(vec![12])), Some(BigInt::from((1 << 13) - 1)));
    }

    #[test]
    fn empty_census_gives_zero_numerator() {
        let census = GeodesicCensus::empty(1, WeightConvention::IndPrimitiveLength);
        let s = fit_rational(&census, &synthetic_spec(&[4.0])).unwrap();
        assert!(s.numerator().is_empty());
        assert_eq!(s.predict(&TranslationVector::new(vec![3])), 0.0);
    }

    #[test]
    fn k33_predicts_beyond_window() {
        let g = named::complete_bipartite(3);
        let cs = chamber_system_of_graph(&g).unwrap();
        let spec = simultaneous_triangularize(&HeckeFamily::build(&cs, CountConvention::Iwahori, &[]).unwrap()).unwrap();
        let full = census_d1(&g, 11, WeightConvention::IndPrimitiveLength, false).unwrap();
        let window = full.restrict(|k| k.coords()[0] <= 6);
        let s = fit_rational(&window, &spec).unwrap();
        assert!(s.fit_residual <= FIT_TOL);
        for k in 7..=11 {
            let k = TranslationVector::new(vec![k]);
            assert_eq!(BigRational::from_integer(s.predict_integer(&k).unwrap()), full.counts[&k]);
        }
        let (lat, sub) = zeta_lattices(1).unwrap();
        let rep = dominant_term(&spec, &s, &lat, &sub).unwrap();
        assert!((rep.c[0] - 4.0).abs() < 1e-12);
        assert!((rep.theta - 0.5).abs() < 1e-9);
        let rows = ratio_trajectory(&full, &rep).unwrap();
        assert!(rows.iter().all(|r| r.within_envelope != Some(false) && !r.violation));
        assert!((rows.last().unwrap().ratio.unwrap() - 1.0).abs() < 1e-2);
    }

    #[test]
    fn spherical_constant_and_single_eta() {
        let spec = synthetic_spec(&[9.0]);
        let census = census_from(&[9, 81, 729]);
        let s = fit_rational(&census, &spec).unwrap();
        let (lat, sub) = zeta_lattices(1).unwrap();
        let rep = dominant_term(&spec, &s, &lat, &sub).unwrap();
        assert!((rep.c[0] - 9.0).abs() < 1e-12);
        assert_eq!(rep.theta, 0.0);
        let rows = ratio_trajectory(&census, &rep).unwrap();
        assert!(rows.iter().all(|r| r.envelope == Some(0.0) && (r.ratio.unwrap() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn off_lattice_flagged() {
        let mut spec = synthetic_spec(&[64.0]);
        spec.d = 2;
        spec.members = vec![TranslationVector::new(vec![3, 0]), TranslationVector::new(vec![0, 3])];
        spec.eta = vec![vec![Complex64::new(64.0, 0.0); 2]];
        spec.eta1_exact = vec![BigRational::from_integer(64.into()); 2];
        let mut census = GeodesicCensus::empty(2, WeightConvention::IndPrimitiveLength);
        census.counts.insert(TranslationVector::new(vec![1, 1]), BigRational::from_integer(6.into()));
        census.counts.insert(TranslationVector::new(vec![1, 2]), BigRational::from_integer(5.into()));
        let series = fit_free(&census, &spec, 1).unwrap().0;
        let (lat, sub) = zeta_lattices(2).unwrap();
        let rep = dominant_term(&spec, &series, &lat, &sub).unwrap();
        let rows = ratio_trajectory(&census, &rep).unwrap();
        assert_eq!(rows.iter().filter(|r| r.violation).count(), 1);
        assert!(rows[1].violation && rows[1].predicted.is_none());
    }

    #[test]
    fn supports() {
        assert_eq!(numerator_support(1), vec![TranslationVector::new(vec![1])]);
        let e2: Vec<Vec<i64>> = numerator_support(2).iter().map(|k| k.coords().to_vec()).collect();
        assert_eq!(e2, vec![vec![1, 1], vec![2, 2], vec![3, 3]]);
        assert_eq!(generator_exponents(3), vec![4, 4, 4]);
    }

    #[test]
    fn growth_measurement() {
        let census = census_from(&[0, 72, 72, 648, 1800, 8712, 31752, 133128, 520200, 2105352]);
        let g = measured_growth(&census)[0].unwrap();
        assert!((g - 4.05).abs() < 0.01);
    }
}
