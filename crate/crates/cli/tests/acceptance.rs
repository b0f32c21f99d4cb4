//! Acceptance suite A1–A10. Every derived value is checked against an
//! oracle written here, independently of the library code under test.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use apartment::commands::{census_as_f64, spectra, three_figures};
use apartment::formats::{parse_graph, parse_subgroup, parse_triangle, read_text};
use apartment_core::census::{census_d1, census_d2, nb_walk_counts, GeodesicCensus, TriangleCover, WeightConvention};
use apartment_core::class_numbers::{
    compare_to_prediction, inertia_degree, weighted_sum, Behavior, OrderRecord, PlaceSplitting,
};
use apartment_core::complex::{chamber_system_of_graph, coset_types, FiniteGraph};
use apartment_core::hecke_counts::{brute_force_subspace_count, c_constant, gaussian_binomial, CountConvention};
use apartment_core::matrix::ExactMatrix;
use apartment_core::spectra::{assemble_generators, translation_operator, HeckeFamily};
use apartment_core::weyl::{build_theorem_lattices, CosetLabeller, IntegerLattice, TranslationVector};
use apartment_core::zeta::{dominant_term, fit_best, fit_rational, ratio_trajectory, zeta_lattices, AsymptoticReport};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// A4: slack on `|η_j(a_i)| ≤ η_1(a_i)`.
const BOUND_SLACK: f64 = 1e-9;
/// A5: `|N(10)/(C c^10) − 1|` accepted as convergence.
const CONVERGENCE_TOL: f64 = 1e-2;
/// A10: synthetic ratios must equal one to this relative precision.
const SYNTHETIC_TOL: f64 = 1e-12;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn graph(name: &str) -> FiniteGraph {
    let p = fixture(name);
    parse_graph(name, &read_text(&p).unwrap()).unwrap()
}

// ---- oracles -------------------------------------------------------------

/// Subspace counts of `𝔽_q^n` per dimension, by closing spans of vector sets.
fn subspaces_by_closure(n: usize, q: usize) -> Vec<u64> {
    let size = q.pow(n as u32);
    let add = |a: usize, b: usize| {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..n {
            out += (a % q + b % q) % q * place;
            a /= q;
            b /= q;
            place *= q;
        }
        out
    };
    let mut counts = vec![1u64];
    let mut level: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
    while level.iter().next().map_or(false, |s| s.len() < size) {
        let mut next = HashSet::new();
        for s in &level {
            for v in 0..size {
                if s.binary_search(&v).is_ok() {
                    continue;
                }
                let mut span: BTreeSet<usize> = BTreeSet::new();
                let mut multiple = 0;
                for _ in 0..q {
                    span.extend(s.iter().map(|&x| add(x, multiple)));
                    multiple = add(multiple, v);
                }
                next.insert(span.into_iter().collect::<Vec<_>>());
            }
        }
        counts.push(next.len() as u64);
        level = next;
    }
    counts
}

/// `j`-subspaces of `𝔽_q^n` as reduced row-echelon forms: each pivot set
/// contributes `q^{free entries}`.
fn subspaces_by_echelon(n: usize, j: usize, q: u64) -> BigInt {
    let mut total = BigInt::from(0);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != j {
            continue;
        }
        let pivots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let free: usize = pivots.iter().map(|&p| (p + 1..n).filter(|c| mask >> c & 1 == 0).count()).sum();
        total += Pow::pow(BigInt::from(q), free as u32);
    }
    total
}

/// Directed edges `(tail, head, edge id)`, both orientations of each edge.
fn darts(g: &FiniteGraph) -> Vec<(usize, usize, usize)> {
    g.edges().iter().enumerate().flat_map(|(i, &(u, v))| [(u, v, i), (v, u, i)]).collect()
}

/// Closed cyclically non-backtracking walks of length `m`, by depth-first search.
fn closed_nb_walks(g: &FiniteGraph, m: usize) -> u128 {
    let d = darts(g);
    let out: Vec<Vec<usize>> =
        (0..g.vertex_count()).map(|v| (0..d.len()).filter(|&i| d[i].0 == v).collect()).collect();
    fn go(d: &[(usize, usize, usize)], out: &[Vec<usize>], first: usize, last: usize, left: usize) -> u128 {
        if left == 0 {
            let closes = d[last].1 == d[first].0 && d[first].2 != d[last].2;
            return closes as u128;
        }
        out[d[last].1].iter().filter(|&&e| d[e].2 != d[last].2).map(|&e| go(d, out, first, e, left - 1)).sum()
    }
    (0..d.len()).map(|e| go(&d, &out, e, e, m - 1)).sum()
}

/// `tr(B^m)` of the non-backtracking matrix, with `i128` entries.
fn nb_trace(g: &FiniteGraph, m: usize) -> i128 {
    let d = darts(g);
    let n = d.len();
    let b: Vec<Vec<i128>> =
        (0..n).map(|e| (0..n).map(|f| (d[e].1 == d[f].0 && d[e].2 != d[f].2) as i128).collect()).collect();
    let mut p = b.clone();
    for _ in 1..m {
        p = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| p[i][k] * b[k][j]).sum()).collect()).collect();
    }
    (0..n).map(|i| p[i][i]).sum()
}

fn oracle_census(g: &FiniteGraph, max_k: usize) -> BTreeMap<TranslationVector, BigRational> {
    (1..=max_k)
        .map(|k| (TranslationVector::new(vec![k as i64]), BigRational::from_integer(closed_nb_walks(g, 2 * k).into())))
        .collect()
}

/// Panel operators read straight off the graph: chambers are edges, two
/// edges are `s`-adjacent when they share an endpoint of colour `s`.
fn panel_operators(g: &FiniteGraph) -> Vec<Vec<Vec<i64>>> {
    let mut colour = vec![None; g.vertex_count()];
    colour[0] = Some(0usize);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &(a, b) in g.edges() {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && colour[y].is_none() {
                    colour[y] = Some(1 - colour[v].unwrap());
                    stack.push(y);
                }
            }
        }
    }
    let e = g.edges();
    (0..2)
        .map(|s| {
            let end = |i: usize| if colour[e[i].0] == Some(s) { e[i].0 } else { e[i].1 };
            (0..e.len()).map(|i| (0..e.len()).map(|j| (i != j && end(i) == end(j)) as i64).collect()).collect()
        })
        .collect()
}

// ---- criteria ------------------------------------------------------------

fn a1() -> Check {
    let mut checked = 0;
    for q in [2u64, 3] {
        for n in 1..=4usize {
            let oracle = subspaces_by_closure(n, q as usize);
            ensure(oracle.len() == n + 1, format!("closure oracle found {} levels for n={n}", oracle.len()))?;
            for j in 0..=n {
                let g = gaussian_binomial(n, j, q).map_err(|e| e.to_string())?;
                let b = brute_force_subspace_count(n, j, q).map_err(|e| e.to_string())?;
                ensure(g == BigInt::from(oracle[j]) && b == g, format!("n={n} j={j} q={q}: {g} vs {} vs {b}", oracle[j]))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, j, q) cases exact"))
}

fn a2() -> Check {
    let c = |d, q, j| c_constant(d, q, j).map_err(|e| e.to_string());
    let int = |x: i64| BigRational::from_integer(x.into());
    ensure(c(1, 2, 1)? == int(9), "c_1(d=1,q=2) != 9")?;
    ensure(c(2, 2, 1)? == int(343) && c(2, 2, 2)? == int(343), "c_j(d=2,q=2) != 343")?;
    let mut checked = 0;
    for q in [2u64, 3] {
        for d in 1..=4usize {
            for j in 1..=d {
                let value = c(d, q, j)?;
                ensure(value == c(d, q, d + 1 - j)?, format!("duality fails at d={d} q={q} j={j}"))?;
                let oracle = BigRational::from_integer(Pow::pow(subspaces_by_echelon(d + 1, j, q), (d + 1) as u32));
                ensure(value == oracle, format!("d={d} q={q} j={j}: {value} vs echelon count {oracle}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("9, 343, 343 and duality on {checked} cases"))
}

fn a3() -> Check {
    for name in ["k33.txt", "cube.txt", "heawood.txt"] {
        let g = graph(name);
        let cs = chamber_system_of_graph(&g).map_err(|e| e.to_string())?;
        let gens = assemble_generators(&cs);
        let oracle: BTreeSet<Vec<Vec<i64>>> = panel_operators(&g).into_iter().collect();
        let ours: BTreeSet<Vec<Vec<i64>>> = gens.iter().map(|m| m.to_i64_rows().unwrap()).collect();
        ensure(ours == oracle, format!("{name}: panel operators differ from the graph's"))?;
        let q = BigInt::from(g.q());
        for (s, t) in gens.iter().enumerate() {
            let rel = t.shift(&-q.clone()).mul(&t.shift(&BigInt::from(1))).map_err(|e| e.to_string())?;
            ensure(rel.is_zero(), format!("{name}: (T_s{s} - q)(T_s{s} + 1) != 0"))?;
        }
        let ks: Vec<TranslationVector> = (1..=4).map(|k| TranslationVector::new(vec![k])).collect();
        let ops: Vec<ExactMatrix> = ks.iter().map(|k| translation_operator(&gens, k).unwrap()).collect();
        for a in &ops {
            for b in &ops {
                ensure(a.commutator(b).unwrap().is_zero(), format!("{name}: translation operators do not commute"))?;
            }
        }
        HeckeFamily::build(&cs, CountConvention::Iwahori, &ks[1..]).map_err(|e| e.to_string())?;
    }
    Ok("quadratic relation and exact commutation on K33, Q3, Heawood".into())
}

fn a4() -> Check {
    let mut lines = Vec::new();
    let mut petersen_strict = false;
    let mut cases: Vec<(String, apartment_core::complex::ChamberSystem)> = Vec::new();
    for name in ["k33.txt", "cube.txt", "heawood.txt", "petersen.txt", "k4.txt"] {
        let g = graph(name).typed();
        cases.push((name.trim_end_matches(".txt").into(), chamber_system_of_graph(&g).map_err(|e| e.to_string())?));
    }
    cases.push(("fano-cover".into(), fano_cover().chambers.clone()));
    for (name, cs) in &cases {
        let (data, report) = spectra(cs, CountConvention::Iwahori).map_err(|e| e.to_string())?;
        let worst = report.rows.iter().map(|r| r.max_ratio).fold(0.0, f64::max);
        ensure(worst <= 1.0 + BOUND_SLACK, format!("{name}: weak bound fails, max ratio {worst}"))?;
        ensure(data.eta[0][..data.d].iter().zip(&data.eta1_exact).all(|(z, e)| (z.re - e.to_f64().unwrap()).abs() < 1e-9), "η_1 mismatch")?;
        if name == "petersen" {
            petersen_strict = report.all_strict;
        }
        lines.push(format!("{name}: flagged {:?}", report.flagged));
    }
    ensure(petersen_strict, "Petersen double cover: some j >= 2 attains equality")?;
    Ok(format!("weak bound everywhere, Petersen strict; {}", lines.join("; ")))
}

struct D1Fit {
    census: GeodesicCensus,
    report: AsymptoticReport,
    ratio10: f64,
    fitted: bool,
}

fn d1_fit(name: &str, convention: CountConvention, max_k: usize, window: i64) -> Result<D1Fit, String> {
    let g = graph(name);
    let census = census_d1(&g, max_k, WeightConvention::IndPrimitiveLength, false).map_err(|e| e.to_string())?;
    ensure(census.counts == oracle_census(&g, max_k), format!("{name}: census differs from walk enumeration"))?;
    let cs = chamber_system_of_graph(&g).map_err(|e| e.to_string())?;
    let (spec, _) = spectra(&cs, convention).map_err(|e| e.to_string())?;
    let window_census = census.restrict(|k| k.coords()[0] <= window);
    let fitted = fit_rational(&window_census, &spec).is_ok();
    let series = fit_best(&window_census, &spec).map_err(|e| e.to_string())?;
    let (lattice, sub) = zeta_lattices(1).unwrap();
    let report = dominant_term(&spec, &series, &lattice, &sub).map_err(|e| e.to_string())?;
    let rows = ratio_trajectory(&census, &report).map_err(|e| e.to_string())?;
    let ratio10 = rows.last().and_then(|r| r.ratio).unwrap_or(f64::NAN);
    Ok(D1Fit { census, report, ratio10, fitted })
}

fn a5() -> Check {
    let mut notes = Vec::new();
    for name in ["k33.txt", "cube.txt"] {
        let mut converging = Vec::new();
        let mut base = f64::NAN;
        for conv in CountConvention::ALL {
            let fit = d1_fit(name, conv, 10, 6)?;
            base = apartment_core::zeta::measured_growth(&fit.census)[0].unwrap_or(f64::NAN);
            let ok = fit.fitted && (fit.ratio10 - 1.0).abs() <= CONVERGENCE_TOL;
            notes.push(format!("{name} {conv}: ratio(10)={:.6} fitted={}", fit.ratio10, fit.fitted));
            if ok {
                converging.push(conv);
            }
        }
        ensure(
            converging == [CountConvention::Iwahori],
            format!("{name}: converging conventions {converging:?}; measured base {}", three_figures(base)),
        )?;
        notes.push(format!("{name} measured base {} (q^2 = 4)", three_figures(base)));
    }
    Ok(format!("IWAHORI confirmed; {}", notes.join("; ")))
}

fn a6() -> Check {
    for name in ["k33.txt", "cube.txt"] {
        let g = graph(name);
        let cs = chamber_system_of_graph(&g).map_err(|e| e.to_string())?;
        let (spec, _) = spectra(&cs, CountConvention::Iwahori).map_err(|e| e.to_string())?;
        let oracle = oracle_census(&g, 10);
        let mut window = GeodesicCensus::empty(1, WeightConvention::IndPrimitiveLength);
        window.counts = oracle.iter().filter(|(k, _)| k.coords()[0] <= 6).map(|(k, v)| (k.clone(), v.clone())).collect();
        window.bound = 6;
        let series = fit_rational(&window, &spec).map_err(|e| format!("{name}: {e}"))?;
        for k in 7..=10 {
            let k = TranslationVector::new(vec![k]);
            let predicted = series.predict_integer(&k).map(BigRational::from_integer);
            ensure(predicted.as_ref() == Some(&oracle[&k]), format!("{name}: N{:?} predicted {predicted:?}, enumerated {}", k.coords(), oracle[&k]))?;
        }
    }
    Ok("k = 7..10 reproduced exactly on K33 and Q3".into())
}

fn a7() -> Check {
    for name in ["k4.txt", "k33.txt", "petersen.txt"] {
        let g = graph(name);
        let counts = nb_walk_counts(&g, 12).map_err(|e| e.to_string())?;
        for m in 1..=12 {
            let (dfs, tr) = (closed_nb_walks(&g, m), nb_trace(&g, m));
            ensure(
                counts[&m] == BigInt::from(dfs) && BigInt::from(tr) == counts[&m],
                format!("{name} m={m}: library {} dfs {dfs} trace {tr}", counts[&m]),
            )?;
        }
        if name == "k4.txt" {
            ensure(nb_trace(&g, 3) == 24 && nb_trace(&g, 4) == 24, "K4: tr B^3, tr B^4 != 24")?;
        }
    }
    Ok("m <= 12 on K4, K33, Petersen; K4 tr B^3 = tr B^4 = 24".into())
}

fn fano_cover() -> TriangleCover {
    let pres = parse_triangle("fano.txt", &read_text(&fixture("fano.txt")).unwrap()).unwrap();
    let words = parse_subgroup("fano_kernel.txt", &read_text(&fixture("fano_kernel.txt")).unwrap(), &pres).unwrap();
    TriangleCover::new(pres, &words, 1000).unwrap()
}

fn a8() -> Check {
    let pres = parse_triangle("fano.txt", &read_text(&fixture("fano.txt")).unwrap()).map_err(|e| e.to_string())?;
    let words = parse_subgroup("fano_kernel.txt", &read_text(&fixture("fano_kernel.txt")).unwrap(), &pres)
        .map_err(|e| e.to_string())?;
    let cover = TriangleCover::new(pres.clone(), &words, 1000).map_err(|e| e.to_string())?;
    let types = coset_types(&pres, &cover.table).map_err(|e| e.to_string())?;
    let type_preserving_index = types.iter().filter(|&&t| t == 0).count();
    ensure(type_preserving_index == 3, format!("type-preserving index {type_preserving_index}"))?;
    let flags: usize = (0..pres.points()).map(|p| pres.lines().iter().filter(|l| l.contains(&p)).count()).sum();
    ensure(flags == 21, format!("PG(2,2) has {flags} flags"))?;
    ensure(cover.chambers.chamber_count() == 3 * flags, format!("{} chambers", cover.chambers.chamber_count()))?;
    let (spec, report) = spectra(&cover.chambers, CountConvention::Iwahori).map_err(|e| e.to_string())?;
    ensure(report.rows.iter().all(|r| r.max_ratio <= 1.0 + BOUND_SLACK), "weak bound fails on the cover")?;
    let census = census_d2(&cover, 8, WeightConvention::IndPrimitiveLength).map_err(|e| e.to_string())?;
    let window = census.restrict(|k| k.coords().iter().sum::<i64>() <= 6);
    let series = fit_rational(&window, &spec).map_err(|e| e.to_string())?;
    for (k, v) in &census.counts {
        let predicted = series.predict_integer(k).map(BigRational::from_integer);
        ensure(predicted.as_ref() == Some(v), format!("N{:?} = {v}, predicted {predicted:?}", k.coords()))?;
    }
    Ok(format!(
        "coset index {} ([G0:H] = 3), 63 chambers, {} certified points exact ({:?} numerator)",
        cover.table.index(),
        census.counts.len(),
        series.mode
    ))
}

fn a9() -> Check {
    let (big, small) = build_theorem_lattices(2).map_err(|e| e.to_string())?;
    let index = IntegerLattice::full(2).index_of(&big).map_err(|e| e.to_string())?;
    ensure(index == Some(BigInt::from(3)), format!("[Z^2 : Λ] = {index:?}"))?;
    let witness = small.sublattice_witness(&big).map_err(|e| e.to_string())?;
    let two = BigRational::from_integer(2.into());
    let zero = BigRational::from_integer(0.into());
    ensure(witness == Some(vec![two, zero]), format!("witness {witness:?}"))?;
    // hand-derived: Λ = {a ≡ b mod 3}, Λ ∩ Λ' = {a ≡ b mod 3, a, b even}
    let meet = big.intersection(&small).map_err(|e| e.to_string())?;
    let labeller = CosetLabeller::new(&big, &meet).map_err(|e| e.to_string())?;
    let in_big = |a: i64, b: i64| (a - b).rem_euclid(3) == 0;
    let in_meet = |a: i64, b: i64| in_big(a, b) && a % 2 == 0 && b % 2 == 0;
    let mut runner = TestRunner::new_with_rng(Config { cases: 1000, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = ((-50i64..50, -50i64..50), (-50i64..50, -50i64..50));
    runner
        .run(&strategy, |((a, b), (c, e))| {
            let (ka, kb) = (TranslationVector::new(vec![a, b]), TranslationVector::new(vec![c, e]));
            assert_eq!(big.contains(&ka).unwrap(), in_big(a, b));
            if in_big(a, b) && in_big(c, e) {
                let same = labeller.label(&ka).unwrap() == labeller.label(&kb).unwrap();
                assert_eq!(same, in_meet(a - c, b - e));
                assert_eq!(labeller.label(&ka).unwrap().is_identity(), in_meet(a, b));
            } else if !in_big(a, b) {
                assert!(labeller.label(&ka).is_err());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("[Z^2:Λ] = 3, witness (2,0), 1000 random label/membership checks".into())
}

fn a10() -> Check {
    let behaviours = [Behavior::Ramified, Behavior::NonDecomposedOther];
    let mut patterns = 0;
    for n in [2u32, 3] {
        for s in 0..=3usize {
            for mask in 0u32..(1 << s) {
                let splitting = (0..s)
                    .map(|i| PlaceSplitting {
                        place: format!("w{i}"),
                        behavior: if mask >> i & 1 == 1 { Behavior::Inert } else { behaviours[i % 2] },
                    })
                    .collect();
                let rec = OrderRecord { order_id: "o".into(), n, h: 1, regulator: 1.0, splitting, units: Vec::new() };
                let expected = (n as u64).pow(mask.count_ones());
                let got = inertia_degree(&rec).map_err(|e| e.to_string())?;
                ensure(got == expected, format!("n={n} pattern {mask:b}: {got} vs {expected}"))?;
                patterns += 1;
            }
        }
    }
    let record = (1u64..5, 1u32..20, 0u32..8, (1i64..4, 1i64..4)).prop_map(|(h, r, inert, k)| OrderRecord {
        order_id: format!("r{h}{r}"),
        n: 3,
        h,
        regulator: r as f64 / 8.0,
        splitting: (0..3).map(|i| PlaceSplitting { place: format!("w{i}"), behavior: if inert >> i & 1 == 1 { Behavior::Inert } else { Behavior::Ramified } }).collect(),
        units: vec![TranslationVector::new(vec![k.0, k.1])],
    });
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let lists = (proptest::collection::vec(record.clone(), 0..6), proptest::collection::vec(record, 0..6));
    runner
        .run(&lists, |(a, b)| {
            let joined: Vec<OrderRecord> = a.iter().chain(&b).cloned().collect();
            for k in [(1, 1), (2, 3), (3, 3)] {
                let k = TranslationVector::new(vec![k.0, k.1]);
                let (sa, sb, sj) = (weighted_sum(&a, &k).unwrap(), weighted_sum(&b, &k).unwrap(), weighted_sum(&joined, &k).unwrap());
                prop_assert!((sj - sa - sb).abs() <= 1e-12 * sj.abs().max(1.0));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    // synthetic records carrying exactly C·c^k
    let fit = d1_fit("k33.txt", CountConvention::Iwahori, 10, 6)?;
    let records: Vec<OrderRecord> = (1..=10)
        .map(|k| {
            let k = TranslationVector::new(vec![k]);
            OrderRecord {
                order_id: format!("syn{:02}", k.coords()[0]),
                n: 2,
                h: 1,
                regulator: fit.report.dominant(&k).unwrap().unwrap(),
                splitting: Vec::new(),
                units: vec![k],
            }
        })
        .collect();
    let sums: BTreeMap<TranslationVector, f64> =
        records.iter().map(|r| (r.units[0].clone(), weighted_sum(&records, &r.units[0]).unwrap())).collect();
    let cmp = compare_to_prediction(&sums, &fit.report).map_err(|e| e.to_string())?;
    ensure(cmp.rows.len() == 10 && cmp.rows.iter().all(|r| !r.flagged), "synthetic rows flagged")?;
    for r in &cmp.rows {
        let ratio = r.ratio.ok_or("missing ratio")?;
        ensure((ratio - 1.0).abs() <= SYNTHETIC_TOL, format!("synthetic ratio {ratio} at {:?}", r.k.coords()))?;
    }
    ensure(cmp.slopes.iter().all(|s| s.slope.map_or(true, |x| x.abs() <= 1e-9)), "nonzero log-ratio slope")?;
    let _ = census_as_f64(&fit.census);
    Ok(format!("{patterns} splitting patterns, 256 additivity cases, synthetic ratio = 1"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("A1", 5, a1),
        ("A2", 1, a2),
        ("A3", 10, a3),
        ("A4", 30, a4),
        ("A5", 60, a5),
        ("A6", 60, a6),
        ("A7", 30, a7),
        ("A8", 600, a8),
        ("A9", 5, a9),
        ("A10", 5, a10),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    // libtest leaves "test acceptance ... " open on this line
    let _ = writeln!(err);
    for (id, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(msg), true) => ("PASS", msg.clone()),
            (Ok(msg), false) => ("FAIL", format!("{msg} (over the time limit)")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        let _ = writeln!(err, "{id} {status} [{:.2}s / {limit}s] {detail}", took.as_secs_f64());
        if status == "FAIL" {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
