//! Subcommand bodies. Each returns its artifacts as strings so the pipeline
//! and the binary share one code path.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use apartment_core::census::{census_d1, census_galleries, GeodesicCensus, TriangleCover, WeightConvention, MAX_D2_LENGTH};
use apartment_core::class_numbers::{
    compare_to_prediction, inertia_degree_over, weighted_sums, Comparison, OrderRecord,
};
use apartment_core::complex::{chamber_system_of_graph, ChamberSystem, ChamberSystemDocument, FiniteGraph};
use apartment_core::hecke_counts::{c_constant, eta1_value, gaussian_binomial, CountConvention};
use apartment_core::spectra::{eigenvalue_bound_report, simultaneous_triangularize, BoundReport, HeckeFamily, SpectralData};
use apartment_core::weyl::{hecke_generator, CoxeterDatum, IntegerLattice, TranslationVector};
use apartment_core::zeta::{
    dominant_term, fit_rational, measured_growth, numerator_support, ratio_trajectory, zeta_lattices, AsymptoticReport,
    RatioRow, RationalSeries,
};
use apartment_core::Error;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::formats::{parse_complex, parse_subgroup, read_text, ComplexSource};

/// Default cap on cosets during enumeration.
pub const DEFAULT_COSET_LIMIT: usize = 10_000;

pub fn hecke_counts(d: usize, q: u64, convention: CountConvention) -> CliResult<String> {
    let datum = CoxeterDatum::new(d, q)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["j", "gaussian_binomial", "c_j", "eta1"]).expect("in-memory write");
    for j in 1..=d {
        let row = [
            j.to_string(),
            gaussian_binomial(d + 1, j, q)?.to_string(),
            c_constant(d, q, j)?.to_string(),
            eta1_value(&hecke_generator(d, j - 1), &datum, convention)?.to_string(),
        ];
        w.write_record(&row).expect("in-memory write");
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii"))
}

#[derive(Debug, Clone, Default)]
pub struct ComplexOptions<'a> {
    pub subgroup: Option<&'a Path>,
    pub limit: Option<usize>,
    /// Replace a non-bipartite graph by its bipartite double cover.
    pub double_cover: bool,
}

/// A complex ready for the typed stages.
pub struct Loaded {
    pub graph: Option<FiniteGraph>,
    pub cover: Option<TriangleCover>,
    pub chambers: ChamberSystem,
}

pub fn load_complex(path: &Path, opts: &ComplexOptions) -> CliResult<Loaded> {
    let name = path.display().to_string();
    match parse_complex(&name, &read_text(path)?)? {
        ComplexSource::Graph(g) => {
            let g = match (g.is_bipartite(), opts.double_cover) {
                (true, _) => g,
                (false, true) => g.bipartite_double_cover(),
                (false, false) => return Err(Error::NotBipartite.into()),
            };
            Ok(Loaded { chambers: chamber_system_of_graph(&g)?, graph: Some(g), cover: None })
        }
        ComplexSource::Presentation(p) => {
            let sub = opts.subgroup.ok_or_else(|| CliError::Invalid(format!("{name}: a triangle presentation needs --subgroup")))?;
            let words = parse_subgroup(&sub.display().to_string(), &read_text(sub)?, &p)?;
            let cover = TriangleCover::new(p, &words, opts.limit.unwrap_or(DEFAULT_COSET_LIMIT))?;
            Ok(Loaded { chambers: cover.chambers.clone(), graph: None, cover: Some(cover) })
        }
        ComplexSource::Chambers(cs) => Ok(Loaded { chambers: cs, graph: None, cover: None }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub kind: String,
    pub d: usize,
    pub q: u64,
    pub typed: bool,
    pub chambers: Option<usize>,
    pub vertices: Vec<usize>,
    pub coset_index: Option<usize>,
    pub generators: Option<usize>,
    pub triples: Option<usize>,
}

fn chamber_summary(kind: &str, cs: &ChamberSystem) -> ComplexSummary {
    ComplexSummary {
        kind: kind.into(),
        d: cs.d(),
        q: cs.q(),
        typed: true,
        chambers: Some(cs.chamber_count()),
        vertices: (0..=cs.d()).map(|t| cs.vertex_count(t)).collect(),
        coset_index: None,
        generators: None,
        triples: None,
    }
}

/// Validates a complex file; graphs need not be bipartite here.
pub fn complex_validate(path: &Path, opts: &ComplexOptions) -> CliResult<(ComplexSummary, Option<ChamberSystem>)> {
    let name = path.display().to_string();
    match parse_complex(&name, &read_text(path)?)? {
        ComplexSource::Graph(g) if !g.is_bipartite() && !opts.double_cover => Ok((
            ComplexSummary {
                kind: "graph".into(),
                d: 1,
                q: g.q(),
                typed: false,
                chambers: None,
                vertices: vec![g.vertex_count()],
                coset_index: None,
                generators: None,
                triples: None,
            },
            None,
        )),
        ComplexSource::Presentation(p) if opts.subgroup.is_none() => Ok((
            ComplexSummary {
                kind: "triangle".into(),
                d: 2,
                q: p.q(),
                typed: false,
                chambers: None,
                vertices: Vec::new(),
                coset_index: None,
                generators: Some(p.generators()),
                triples: Some(p.triples().len()),
            },
            None,
        )),
        _ => {
            let loaded = load_complex(path, opts)?;
            let mut summary = chamber_summary(if loaded.graph.is_some() { "graph" } else { "chambers" }, &loaded.chambers);
            if let Some(c) = &loaded.cover {
                summary.kind = "triangle".into();
                summary.coset_index = Some(c.table.index());
                summary.generators = Some(c.presentation.generators());
                summary.triples = Some(c.presentation.triples().len());
            }
            Ok((summary, Some(loaded.chambers)))
        }
    }
}

pub fn chamber_document(cs: &ChamberSystem) -> ChamberSystemDocument {
    ChamberSystemDocument::from(cs)
}

/// Spectral members: the generators and the minimal numerator representatives.
pub fn spectral_members(d: usize) -> Vec<TranslationVector> {
    let gens: Vec<TranslationVector> = (0..d).map(|j| hecke_generator(d, j)).collect();
    numerator_support(d).into_iter().filter(|k| !gens.contains(k)).collect()
}

pub fn spectra(cs: &ChamberSystem, convention: CountConvention) -> CliResult<(SpectralData, BoundReport)> {
    let fam = HeckeFamily::build(cs, convention, &spectral_members(cs.d()))?;
    let data = simultaneous_triangularize(&fam)?;
    let report = eigenvalue_bound_report(&data);
    Ok((data, report))
}

pub fn spectra_table(data: &SpectralData, report: &BoundReport) -> String {
    let mut s = format!("n={} d={} q={} convention={}\n", data.n, data.d, data.q, data.convention);
    let _ = writeln!(s, "{:>4}  {:>12}  {:>8}  {:>6}  eta on generators", "j", "max ratio", "strict", "jordan");
    for (row, eta) in report.rows.iter().zip(&data.eta) {
        let gens: Vec<String> = eta[..data.d].iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
        let _ = writeln!(
            s,
            "{:>4}  {:>12.9}  {:>8}  {:>6}  {}",
            row.j,
            row.max_ratio,
            row.strict || row.j == 1,
            data.jordan_flags[row.j - 1],
            gens.join(" ")
        );
    }
    let _ = writeln!(s, "weak bound: {}  equality flagged at j = {:?}", report.weak_holds, report.flagged);
    s
}

/// `d = 1` graphs count walks; anything else sums closed galleries.
pub fn census(loaded: &Loaded, max_k: usize, weights: WeightConvention) -> CliResult<GeodesicCensus> {
    if let Some(g) = &loaded.graph {
        let mut c = census_d1(g, max_k, weights, false)?;
        c.bound = max_k;
        return Ok(c);
    }
    if loaded.chambers.d() >= 2 && max_k > MAX_D2_LENGTH {
        return Err(Error::ResourceGuard(format!("max_k {max_k} exceeds {MAX_D2_LENGTH}")).into());
    }
    Ok(census_galleries(&loaded.chambers, max_k, weights)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub k: TranslationVector,
    pub observed: String,
    pub predicted: f64,
    pub predicted_integer: Option<String>,
    pub in_window: bool,
    pub exact: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDocument {
    pub window: Option<usize>,
    pub series: RationalSeries,
    pub numerator: Vec<(Vec<i64>, [f64; 2])>,
    pub predictions: Vec<Prediction>,
    /// Every census point outside the window is reproduced exactly.
    pub predictive: bool,
}

fn in_window(k: &TranslationVector, window: Option<usize>) -> bool {
    window.map_or(true, |w| k.coords().iter().sum::<i64>() as usize <= w)
}

/// Fits on census points with coordinate sum at most `window` and predicts
/// the whole census.
pub fn zeta_fit(census: &GeodesicCensus, spec: &SpectralData, window: Option<usize>) -> CliResult<FitDocument> {
    let fitted = fit_rational(&census.restrict(|k| in_window(k, window)), spec)?;
    let predictions: Vec<Prediction> = census
        .counts
        .iter()
        .map(|(k, v)| {
            let int = fitted.predict_integer(k);
            Prediction {
                k: k.clone(),
                observed: v.to_string(),
                predicted: fitted.predict(k),
                exact: v.is_integer().then(|| int.as_ref() == Some(v.numer())),
                predicted_integer: int.map(|i| i.to_string()),
                in_window: in_window(k, window),
            }
        })
        .collect();
    let predictive = predictions.iter().filter(|p| !p.in_window).all(|p| p.exact == Some(true));
    let numerator = fitted.numerator().into_iter().map(|(e, z)| (e, [z.re, z.im])).collect();
    Ok(FitDocument { window, series: fitted, numerator, predictions, predictive })
}

pub fn fit_table(doc: &FitDocument) -> String {
    let mut s = format!(
        "mode={:?} residual={:e} scale={:?} window={:?}\n",
        doc.series.mode, doc.series.fit_residual, doc.series.scale, doc.window
    );
    let _ = writeln!(s, "{:>16}  {:>24}  {:>24}  {:>6}  fit", "k", "observed", "predicted", "exact");
    for p in &doc.predictions {
        let predicted = p.predicted_integer.clone().unwrap_or_else(|| format!("{:.6}", p.predicted));
        let exact = p.exact.map_or("-".to_string(), |e| e.to_string());
        let _ = writeln!(s, "{:>16}  {:>24}  {:>24}  {:>6}  {}", format!("{:?}", p.k.coords()), p.observed, predicted, exact, p.in_window);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsDocument {
    pub fit: FitDocument,
    pub report: AsymptoticReport,
    pub rows: Vec<RatioRow>,
    pub measured_growth: Vec<Option<f64>>,
}

pub fn zeta_asymptotics(
    census: &GeodesicCensus,
    spec: &SpectralData,
    lattice: Option<IntegerLattice>,
    sublattice: Option<IntegerLattice>,
    window: Option<usize>,
) -> CliResult<AsymptoticsDocument> {
    let fit = zeta_fit(census, spec, window)?;
    let (default_lattice, default_sub) = zeta_lattices(spec.d)?;
    let report = dominant_term(spec, &fit.series, &lattice.unwrap_or(default_lattice), &sublattice.unwrap_or(default_sub))?;
    let rows = ratio_trajectory(census, &report)?;
    Ok(AsymptoticsDocument { measured_growth: measured_growth(census), fit, report, rows })
}

pub fn asymptotics_table(doc: &AsymptoticsDocument) -> String {
    let r = &doc.report;
    let mut s = format!("c={:?} theta={:.6} envelope={} convention={}\n", r.c, r.theta, r.envelope_available, r.convention);
    for c in &r.constants {
        let _ = writeln!(s, "C{:?} = {:.9} (representative {:?})", c.label, c.value, c.representative.coords());
    }
    let _ = writeln!(s, "{:>16}  {:>20}  {:>20}  {:>14}  {:>8}", "k", "N", "C c^k", "ratio", "in env");
    let show = |x: Option<f64>, p: usize| x.map_or("-".to_string(), |x| format!("{x:.p$}"));
    for row in &doc.rows {
        let _ = writeln!(
            s,
            "{:>16}  {:>20}  {:>20}  {:>14}  {:>8}{}",
            format!("{:?}", row.k.coords()),
            row.n,
            show(row.predicted, 3),
            show(row.ratio, 9),
            row.within_envelope.map_or("-".into(), |b| b.to_string()),
            if row.violation { "  OFF-LATTICE" } else { "" }
        );
    }
    let growth: Vec<String> = doc.measured_growth.iter().map(|g| show(*g, 4)).collect();
    let _ = writeln!(s, "measured growth per step: {}", growth.join(" "));
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSumDocument {
    pub degree: u32,
    pub records: usize,
    pub inertia: BTreeMap<String, u64>,
    pub comparison: Comparison,
}

/// Aggregates records (of degree `degree`, default `d + 1`) and compares
/// the sums with the dominant term.
pub fn class_sum(
    records: &[OrderRecord],
    report: &AsymptoticReport,
    places: &[String],
    degree: Option<u32>,
) -> CliResult<ClassSumDocument> {
    let degree = degree.unwrap_or(report.d as u32 + 1);
    let mut inertia = BTreeMap::new();
    for r in records {
        if r.n != degree {
            return Err(CliError::Invalid(format!("order {} has degree {}, expected {degree}", r.order_id, r.n)));
        }
        inertia.insert(r.order_id.clone(), inertia_degree_over(r, places)?);
    }
    let sums = weighted_sums(records)?;
    Ok(ClassSumDocument { degree, records: records.len(), inertia, comparison: compare_to_prediction(&sums, report)? })
}

pub fn class_sum_table(doc: &ClassSumDocument) -> String {
    let mut s = format!("{} records, degree {}\n", doc.records, doc.degree);
    let _ = writeln!(s, "{:>16}  {:>16}  {:>16}  {:>12}", "k", "sum", "C c^k", "ratio");
    for r in &doc.comparison.rows {
        let _ = writeln!(
            s,
            "{:>16}  {:>16.6}  {:>16}  {:>12}{}",
            format!("{:?}", r.k.coords()),
            r.sum,
            r.predicted.map_or("-".into(), |p| format!("{p:.6}")),
            r.ratio.map_or("-".into(), |p| format!("{p:.9}")),
            if r.flagged { "  OFF-LATTICE" } else { "" }
        );
    }
    for ray in &doc.comparison.slopes {
        let _ = writeln!(
            s,
            "ray {:?}: {} points, log-ratio slope {}",
            ray.direction.coords(),
            ray.points,
            ray.slope.map_or("-".into(), |x| format!("{x:.6}"))
        );
    }
    s
}

/// Largest measured base to three significant figures.
pub fn three_figures(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = (2 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.digits$}")
}

/// `N` values as `f64` (census values are exact rationals).
pub fn census_as_f64(census: &GeodesicCensus) -> BTreeMap<TranslationVector, f64> {
    census.counts.iter().map(|(k, v)| (k.clone(), v.to_f64().unwrap_or(f64::NAN))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hecke_counts_csv() {
        let csv = hecke_counts(1, 2, CountConvention::Iwahori).unwrap();
        assert_eq!(csv, "j,gaussian_binomial,c_j,eta1\n1,3,9,4\n");
        let csv = hecke_counts(2, 2, CountConvention::Iwahori).unwrap();
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn figures() {
        assert_eq!(three_figures(4.0473), "4.05");
        assert_eq!(three_figures(12.345), "12.3");
        assert_eq!(three_figures(0.012345), "0.0123");
    }

    #[test]
    fn members() {
        assert!(spectral_members(1).is_empty());
        assert_eq!(spectral_members(2).len(), 3);
    }
}
