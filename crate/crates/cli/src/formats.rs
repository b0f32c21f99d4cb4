//! Plain-text, CSV and JSON formats. Every parser reports the offending
//! line.

use std::collections::BTreeMap;
use std::path::Path;

use apartment_core::census::{GeodesicCensus, WeightConvention};
use apartment_core::class_numbers::{parse_splitting, parse_units, OrderRecord};
use apartment_core::complex::{
    kernel_generators, letter, ChamberSystem, ChamberSystemDocument, FiniteGraph, TrianglePresentation, Word,
};
use apartment_core::hecke_counts::CountConvention;
use apartment_core::spectra::SpectralData;
use apartment_core::weyl::{IntegerLattice, LatticeDocument, TranslationVector};
use apartment_core::Error;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Non-blank lines with `#` comments removed, numbered from 1.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn key_values<'a>(name: &str, line: usize, tokens: impl Iterator<Item = &'a str>) -> CliResult<BTreeMap<&'a str, &'a str>> {
    tokens
        .map(|t| t.split_once('=').ok_or_else(|| CliError::parse(name, line, format!("expected key=value, got `{t}`"))))
        .collect()
}

fn number<T: std::str::FromStr>(name: &str, line: usize, token: &str) -> CliResult<T> {
    token.parse().map_err(|_| CliError::parse(name, line, format!("expected a number, got `{token}`")))
}

/// A complex as read from disk.
#[derive(Debug, Clone)]
pub enum ComplexSource {
    Graph(FiniteGraph),
    Presentation(TrianglePresentation),
    Chambers(ChamberSystem),
}

/// Dispatches on content: JSON chamber dump, `triangle` header, or edge list.
pub fn parse_complex(name: &str, text: &str) -> CliResult<ComplexSource> {
    if text.trim_start().starts_with('{') {
        let doc: ChamberSystemDocument =
            serde_json::from_str(text).map_err(|e| CliError::parse(name, e.line(), e.to_string()))?;
        return Ok(ComplexSource::Chambers(ChamberSystem::try_from(doc)?));
    }
    match significant_lines(text).next() {
        Some((_, first)) if first.split_whitespace().next() == Some("triangle") => {
            Ok(ComplexSource::Presentation(parse_triangle(name, text)?))
        }
        Some(_) => Ok(ComplexSource::Graph(parse_graph(name, text)?)),
        None => Err(CliError::parse(name, 1, "empty complex file")),
    }
}

/// Edge list `u v` per line, with an optional `graph q=… vertices=…` header.
/// Without a header, `q + 1` is the degree of vertex 0.
pub fn parse_graph(name: &str, text: &str) -> CliResult<FiniteGraph> {
    let mut edges = Vec::new();
    let (mut q, mut vertices) = (None, None);
    for (line, body) in significant_lines(text) {
        let mut tokens = body.split_whitespace();
        let first = tokens.next().unwrap_or_default();
        if first == "graph" {
            if !edges.is_empty() || q.is_some() || vertices.is_some() {
                return Err(CliError::parse(name, line, "header must come first"));
            }
            for (k, v) in key_values(name, line, tokens)? {
                match k {
                    "q" => q = Some(number::<u64>(name, line, v)?),
                    "vertices" => vertices = Some(number::<usize>(name, line, v)?),
                    _ => return Err(CliError::parse(name, line, format!("unknown graph key `{k}`"))),
                }
            }
            continue;
        }
        let u: usize = number(name, line, first)?;
        let v: usize = number(name, line, tokens.next().ok_or_else(|| CliError::parse(name, line, "edge needs two endpoints"))?)?;
        if tokens.next().is_some() {
            return Err(CliError::parse(name, line, "edge has more than two endpoints"));
        }
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(CliError::parse(name, 1, "graph has no edges"));
    }
    let vertices = vertices.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1);
    let q = match q {
        Some(q) => q,
        None => {
            let degree = edges.iter().map(|&(u, v)| (u == 0) as u64 + (v == 0) as u64).sum::<u64>();
            degree.checked_sub(1).filter(|&q| q >= 1).ok_or_else(|| CliError::parse(name, 1, "cannot infer q from vertex 0"))?
        }
    };
    Ok(FiniteGraph::new(vertices, edges, q)?)
}

/// Triangle presentation:
///
/// ```text
/// triangle q=2
/// points P0 P1 …        (optional labels; default 0 … q²+q)
/// line P0 P1 P3         (q²+q+1 of these)
/// lambda L0 L1 …        (line index of λ(x) for each point, in point order)
/// P0 P0 P3              (triples, all cyclic shifts listed)
/// ```
pub fn parse_triangle(name: &str, text: &str) -> CliResult<TrianglePresentation> {
    let mut q = None;
    let mut labels: Option<Vec<String>> = None;
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut lambda = None;
    let mut triples: Vec<([usize; 3], usize)> = Vec::new();
    for (line, body) in significant_lines(text) {
        let mut tokens = body.split_whitespace();
        let head = tokens.next().unwrap_or_default();
        let point = |labels: &Option<Vec<String>>, t: &str| -> CliResult<usize> {
            match labels {
                Some(l) => l.iter().position(|x| x == t).ok_or_else(|| CliError::parse(name, line, format!("unknown point `{t}`"))),
                None => number(name, line, t),
            }
        };
        match head {
            "triangle" => {
                for (k, v) in key_values(name, line, tokens)? {
                    match k {
                        "q" => q = Some(number::<u64>(name, line, v)?),
                        _ => return Err(CliError::parse(name, line, format!("unknown header key `{k}`"))),
                    }
                }
            }
            "points" => labels = Some(tokens.map(String::from).collect()),
            "line" => lines.push(tokens.map(|t| point(&labels, t)).collect::<CliResult<_>>()?),
            "lambda" => lambda = Some(tokens.map(|t| number(name, line, t)).collect::<CliResult<Vec<usize>>>()?),
            _ => {
                let t: Vec<usize> = std::iter::once(head).chain(tokens).map(|t| point(&labels, t)).collect::<CliResult<_>>()?;
                let t: [usize; 3] = t.try_into().map_err(|_| CliError::parse(name, line, "a triple needs three points"))?;
                triples.push((t, line));
            }
        }
    }
    let q = q.ok_or_else(|| CliError::parse(name, 1, "missing `triangle q=…` header"))?;
    let lambda = lambda.ok_or_else(|| CliError::parse(name, 1, "missing `lambda` line"))?;
    let located: BTreeMap<[usize; 3], usize> = triples.iter().copied().collect();
    TrianglePresentation::new(q, lines, lambda, triples.into_iter().map(|t| t.0).collect()).map_err(|e| match e {
        Error::Presentation { reason, triple: Some(t) } if located.contains_key(&t) => {
            CliError::parse(name, located[&t], format!("{reason} (triple {} {} {})", t[0], t[1], t[2]))
        }
        other => CliError::Core(other),
    })
}

/// Subgroup generators, one word per line as `a3 a5^-1 …`, or a directive
/// `kernel type` (type-preserving subgroup) or `kernel mod p` (kernel of
/// every character to `ℤ/p`).
pub fn parse_subgroup(name: &str, text: &str, pres: &TrianglePresentation) -> CliResult<Vec<Word>> {
    let mut words = Vec::new();
    for (line, body) in significant_lines(text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens.as_slice() {
            ["kernel", "type"] => words.extend(kernel_generators(pres, &[pres.type_character()], 3)),
            ["kernel", "mod", p] => {
                let p: u64 = number(name, line, p)?;
                if p < 2 || (2..p).any(|f| p % f == 0) {
                    return Err(CliError::parse(name, line, "kernel modulus must be prime"));
                }
                words.extend(kernel_generators(pres, &pres.characters_mod(p), p));
            }
            _ => {
                let mut w = Word::new();
                for t in tokens {
                    let (body, inverse) = match t.strip_suffix("^-1") {
                        Some(b) => (b, true),
                        None => (t, false),
                    };
                    let x: usize = body
                        .strip_prefix('a')
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| CliError::parse(name, line, format!("bad letter `{t}`")))?;
                    if x >= pres.generators() {
                        return Err(CliError::parse(name, line, format!("generator a{x} out of range")));
                    }
                    w.push(letter(x, inverse));
                }
                words.push(w);
            }
        }
    }
    Ok(words)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::parse(name, e.line(), e.to_string()))
}

/// `# weights=… bound=…` comment, then `k_1,…,k_d,N` rows.
pub fn write_census(census: &GeodesicCensus) -> String {
    let mut out = format!("# weights={} bound={}\n", census.weights.as_str(), census.bound);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=census.d).map(|i| format!("k_{i}")).collect();
    header.push("N".into());
    w.write_record(&header).expect("in-memory write");
    for (k, v) in &census.counts {
        let mut row: Vec<String> = k.coords().iter().map(i64::to_string).collect();
        row.push(v.to_string());
        w.write_record(&row).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii"));
    out
}

pub fn read_census(name: &str, text: &str) -> CliResult<GeodesicCensus> {
    let mut weights = WeightConvention::IndPrimitiveLength;
    for (i, l) in text.lines().enumerate().take_while(|(_, l)| l.starts_with('#')) {
        for (k, v) in key_values(name, i + 1, l.trim_start_matches('#').split_whitespace())? {
            if k == "weights" {
                weights = v.parse().map_err(|e: Error| CliError::parse(name, i + 1, e.to_string()))?;
            }
        }
    }
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| CliError::parse(name, 1, e.to_string()))?.clone();
    let d = header.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| CliError::parse(name, 1, "census needs k columns and N"))?;
    let expected: Vec<String> = (1..=d).map(|i| format!("k_{i}")).chain(["N".to_string()]).collect();
    if header.iter().map(str::trim).ne(expected.iter().map(String::as_str)) {
        return Err(CliError::parse(name, 1, format!("expected header {}", expected.join(","))));
    }
    let mut census = GeodesicCensus::empty(d, weights);
    for record in reader.records() {
        let record = record.map_err(|e| CliError::parse(name, e.position().map_or(0, |p| p.line() as usize), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let k: Vec<i64> = record.iter().take(d).map(|t| number(name, line, t.trim())).collect::<CliResult<_>>()?;
        let n: BigRational = number(name, line, record[d].trim())?;
        let k = TranslationVector::new(k);
        if !k.in_positive_cone() {
            return Err(CliError::parse(name, line, "census point outside the strict cone"));
        }
        if census.counts.insert(k, n).is_some() {
            return Err(CliError::parse(name, line, "duplicate census point"));
        }
    }
    census.bound = census.counts.keys().map(|k| k.coords().iter().sum::<i64>() as usize).max().unwrap_or(0);
    if !census.check_invariants() {
        return Err(CliError::Invalid(format!("{name}: census violates its invariants")));
    }
    Ok(census)
}

/// On-disk spectra: `{n, d, q, convention, eta, jordan_flags, …}` with
/// `eta[j][i] = [re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectraDocument {
    pub n: usize,
    pub d: usize,
    pub q: u64,
    pub convention: CountConvention,
    pub members: Vec<TranslationVector>,
    pub eta: Vec<Vec<[f64; 2]>>,
    pub jordan_flags: Vec<bool>,
    pub error_bounds: Vec<f64>,
    pub lower_residual: f64,
    pub eta1_exact: Vec<String>,
}

impl From<&SpectralData> for SpectraDocument {
    fn from(s: &SpectralData) -> Self {
        Self {
            n: s.n,
            d: s.d,
            q: s.q,
            convention: s.convention,
            members: s.members.clone(),
            eta: s.eta.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
            jordan_flags: s.jordan_flags.clone(),
            error_bounds: s.error_bounds.clone(),
            lower_residual: s.lower_residual,
            eta1_exact: s.eta1_exact.iter().map(ToString::to_string).collect(),
        }
    }
}

impl SpectraDocument {
    pub fn into_data(self, name: &str) -> CliResult<SpectralData> {
        let eta1_exact = self
            .eta1_exact
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|_| CliError::Invalid(format!("{name}: bad exact value `{s}`"))))
            .collect::<CliResult<Vec<_>>>()?;
        if self.eta.len() != self.n || self.eta.iter().any(|r| r.len() != self.members.len()) || self.members.len() < self.d {
            return Err(CliError::Invalid(format!("{name}: eta table does not match n and members")));
        }
        Ok(SpectralData {
            n: self.n,
            d: self.d,
            q: self.q,
            convention: self.convention,
            members: self.members,
            eta: self.eta.iter().map(|row| row.iter().map(|z| Complex64::new(z[0], z[1])).collect()).collect(),
            eta1_exact,
            jordan_flags: self.jordan_flags,
            error_bounds: self.error_bounds,
            lower_residual: self.lower_residual,
            transform: None,
        })
    }
}

pub fn read_lattice(name: &str, text: &str) -> CliResult<IntegerLattice> {
    let doc: LatticeDocument = from_json(name, text)?;
    Ok(IntegerLattice::from_document(&doc)?)
}

#[derive(Deserialize)]
struct RawRecord {
    order_id: String,
    n: u32,
    h: u64,
    #[serde(rename = "R")]
    regulator: f64,
    splitting: String,
    units: String,
}

/// Columns `order_id,n,h,R,splitting,units`; splitting is
/// `place:behavior;…` and units are `;`-separated integer tuples.
pub fn read_records(name: &str, text: &str) -> CliResult<Vec<OrderRecord>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in reader.deserialize::<RawRecord>() {
        let row = row.map_err(|e| CliError::parse(name, e.position().map_or(0, |p| p.line() as usize), e.to_string()))?;
        let line = out.len() + 2;
        let at = |e: Error| CliError::parse(name, line, e.to_string());
        let rec = OrderRecord {
            splitting: parse_splitting(&row.splitting).map_err(at)?,
            units: parse_units(&row.units).map_err(at)?,
            order_id: row.order_id,
            n: row.n,
            h: row.h,
            regulator: row.regulator,
        };
        rec.validate().map_err(at)?;
        out.push(rec);
    }
    Ok(out)
}

/// Plain `key = value` configuration; `#` starts a comment.
pub fn parse_config(name: &str, text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (line, body) in significant_lines(text) {
        let (k, v) = body.split_once('=').ok_or_else(|| CliError::parse(name, line, "expected key = value"))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(CliError::parse(name, line, "empty key"));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::parse(name, line, format!("key `{k}` repeated")));
        }
    }
    Ok(out)
}
