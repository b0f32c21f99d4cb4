//! Class-number-weighted sums over orders and their comparison with the
//! dominant term. Class numbers, regulators and unit vectors come from
//! outside; this layer validates and aggregates.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{IntegerLattice, TranslationVector};
use crate::zeta::AsymptoticReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Behavior {
    Inert,
    Ramified,
    NonDecomposedOther,
}

impl core::str::FromStr for Behavior {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inert" => Ok(Behavior::Inert),
            "ramified" => Ok(Behavior::Ramified),
            "other" | "non_decomposed_other" => Ok(Behavior::NonDecomposedOther),
            other => Err(Error::InvalidParameter(alloc::format!("unknown splitting behavior `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSplitting {
    pub place: String,
    pub behavior: Behavior,
}

/// Parses `place:behavior;place:behavior;…` (empty string: no places).
pub fn parse_splitting(s: &str) -> Result<Vec<PlaceSplitting>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (place, behavior) = p
                .split_once(':')
                .ok_or_else(|| Error::InvalidParameter(alloc::format!("expected place:behavior, got `{p}`")))?;
            Ok(PlaceSplitting { place: place.trim().to_string(), behavior: behavior.parse()? })
        })
        .collect()
}

/// Parses unit vectors `k1 k2;k1 k2;…`; components may also be separated
/// by commas and wrapped in parentheses.
pub fn parse_units(s: &str) -> Result<Vec<TranslationVector>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.trim_matches(|c| c == '(' || c == ')')
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<i64>().map_err(|_| Error::InvalidParameter(alloc::format!("bad unit component `{x}`"))))
                .collect::<Result<Vec<i64>>>()
                .map(TranslationVector::new)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub order_id: String,
    /// Degree of the field extension.
    pub n: u32,
    pub h: u64,
    pub regulator: f64,
    pub splitting: Vec<PlaceSplitting>,
    pub units: Vec<TranslationVector>,
}

impl OrderRecord {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(alloc::format!("order {}: degree must be at least 2", self.order_id)));
        }
        if self.h == 0 {
            return Err(Error::InvalidParameter(alloc::format!("order {}: class number must be positive", self.order_id)));
        }
        if !(self.regulator.is_finite() && self.regulator > 0.0) {
            return Err(Error::InvalidParameter(alloc::format!("order {}: regulator must be positive", self.order_id)));
        }
        if let Some(first) = self.units.first() {
            if let Some(bad) = self.units.iter().find(|u| u.dim() != first.dim()) {
                return Err(Error::DimensionMismatch { expected: first.dim(), found: bad.dim() });
            }
        }
        let mut seen = BTreeMap::new();
        for p in &self.splitting {
            if seen.insert(p.place.as_str(), ()).is_some() {
                return Err(Error::InvalidParameter(alloc::format!("order {}: place {} repeated", self.order_id, p.place)));
            }
        }
        Ok(())
    }
}

/// `f_S = n^{#inert places}` over the record's own places.
pub fn inertia_degree(rec: &OrderRecord) -> Result<u64> {
    rec.validate()?;
    let inert = rec.splitting.iter().filter(|p| p.behavior == Behavior::Inert).count() as u32;
    (rec.n as u64).checked_pow(inert).ok_or_else(|| Error::ResourceGuard("inertia degree overflows".into()))
}

/// [`inertia_degree`] after checking that every place of `places` is present.
pub fn inertia_degree_over(rec: &OrderRecord, places: &[String]) -> Result<u64> {
    for s in places {
        if !rec.splitting.iter().any(|p| &p.place == s) {
            return Err(Error::MissingPlace(s.clone()));
        }
    }
    inertia_degree(rec)
}

/// Pairwise summation, so totals do not depend on accumulation drift.
fn pairwise(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise(&xs[..n / 2]) + pairwise(&xs[n / 2..]),
    }
}

/// `Σ R·h·f_S` over all records and all of their unit entries equal to `k`
/// (repeated entries count repeatedly), summed in order of record id.
pub fn weighted_sum(records: &[OrderRecord], k: &TranslationVector) -> Result<f64> {
    let mut terms: Vec<(&str, f64)> = Vec::new();
    for rec in records {
        let hits = rec.units.iter().filter(|u| *u == k).count();
        if hits == 0 {
            continue;
        }
        let weight = rec.regulator * rec.h as f64 * inertia_degree(rec)? as f64;
        terms.extend(core::iter::repeat((rec.order_id.as_str(), weight)).take(hits));
    }
    terms.sort_by(|a, b| a.0.cmp(b.0).then(a.1.total_cmp(&b.1)));
    let values: Vec<f64> = terms.iter().map(|t| t.1).collect();
    Ok(pairwise(&values))
}

/// Weighted sums at every vector occurring among the units.
pub fn weighted_sums(records: &[OrderRecord]) -> Result<BTreeMap<TranslationVector, f64>> {
    let mut keys: Vec<TranslationVector> = records.iter().flat_map(|r| r.units.iter().cloned()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().map(|k| weighted_sum(records, &k).map(|s| (k, s))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub k: TranslationVector,
    pub sum: f64,
    pub on_lattice: bool,
    pub predicted: Option<f64>,
    pub ratio: Option<f64>,
    /// Positive mass off `Λ`.
    pub flagged: bool,
}

/// Least-squares slope of `log(ratio)` against the multiple of a primitive
/// direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaySlope {
    pub direction: TranslationVector,
    pub points: usize,
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub slopes: Vec<RaySlope>,
}

fn primitive(k: &TranslationVector) -> (TranslationVector, i64) {
    let g = k.coords().iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return (k.clone(), 0);
    }
    (TranslationVector::new(k.coords().iter().map(|x| x / g).collect()), g)
}

pub fn compare_to_prediction(sums: &BTreeMap<TranslationVector, f64>, report: &AsymptoticReport) -> Result<Comparison> {
    let lattice = IntegerLattice::from_document(&report.lattice)?;
    let mut rows = Vec::with_capacity(sums.len());
    let mut rays: BTreeMap<TranslationVector, Vec<(f64, f64)>> = BTreeMap::new();
    for (k, &sum) in sums {
        if k.dim() != report.d {
            return Err(Error::DimensionMismatch { expected: report.d, found: k.dim() });
        }
        let on_lattice = lattice.contains(k)?;
        let predicted = if on_lattice { report.dominant(k)? } else { None };
        let ratio = predicted.filter(|p| *p != 0.0).map(|p| sum / p);
        if let Some(r) = ratio.filter(|r| *r > 0.0) {
            let (dir, t) = primitive(k);
            rays.entry(dir).or_default().push((t as f64, Float::ln(r)));
        }
        rows.push(ComparisonRow { k: k.clone(), sum, on_lattice, predicted, ratio, flagged: !on_lattice && sum != 0.0 });
    }
    let slopes = rays
        .into_iter()
        .map(|(direction, pts)| {
            let n = pts.len() as f64;
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            RaySlope { direction, points: pts.len(), slope: (sxx > 0.0).then(|| sxy / sxx) }
        })
        .collect();
    Ok(Comparison { rows, slopes })
}
