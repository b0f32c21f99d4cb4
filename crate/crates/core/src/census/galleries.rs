//! Census by closed galleries.
//!
//! A hyperbolic class `[γ]` with generic translation vector `k` acts as a
//! translation on its minimal set; every chamber `C` there has `δ(C, γC)` a
//! translation by some `W_0`-image of `k`. Summing closed galleries of the
//! reduced types of all `t_{uk}` over the quotient therefore counts each
//! class once per chamber of its torus (the `IND` weighting). For unit
//! weights the pairs `(C, γ)` are grouped into classes by moving `C` to
//! adjacent chambers whose displacement is still a translation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gallery::GalleryContext;
use super::walks::{GeodesicCensus, WeightConvention};
use super::words::TriangleCover;
use crate::complex::ChamberSystem;
use crate::error::{Error, Result};
use crate::weyl::{epsilon_coords, finite_weyl_group, AffinePermutation, TranslationVector};

/// Largest coordinate sum accepted by [`census_d2`].
pub const MAX_D2_LENGTH: usize = 10;
/// Cap on stored closed galleries for unit weights.
pub const MAX_PAIRS: usize = 400_000;

/// Strict-cone points of the coroot lattice with coordinate sum at most `bound`.
pub fn certified_points(d: usize, bound: usize) -> Vec<TranslationVector> {
    let mut out = Vec::new();
    let mut cur = vec![1i64; d];
    if d == 0 || bound < d {
        return out;
    }
    loop {
        let k = TranslationVector::new(cur.clone());
        if epsilon_coords(&k).is_some() {
            out.push(k);
        }
        // odometer over positive vectors with bounded sum
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur.iter().sum::<i64>() as usize <= bound {
                break;
            }
            cur[i] = 1;
        }
    }
}

/// `W_0`-images `u·μ` of the ε-coordinates of `k` with the reduced word of
/// each translation.
fn orbit_words(k: &TranslationVector) -> Result<Vec<(Vec<i64>, Vec<usize>)>> {
    let mu = epsilon_coords(k).ok_or_else(|| Error::NotTypePreserving(k.coords().to_vec()))?;
    let mut out: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
    for u in finite_weyl_group(mu.len()) {
        let mut image = vec![0; mu.len()];
        for (i, &ui) in u.iter().enumerate() {
            image[ui - 1] = mu[i];
        }
        if out.iter().any(|(m, _)| *m == image) {
            continue;
        }
        let word = AffinePermutation::translation(&image)?.reduced_word();
        out.push((image, word));
    }
    Ok(out)
}

/// Census over every certified point with coordinate sum at most `bound`.
pub fn census_galleries(cs: &ChamberSystem, bound: usize, weights: WeightConvention) -> Result<GeodesicCensus> {
    let ctx = GalleryContext::new(cs);
    let mut census = GeodesicCensus::empty(cs.d(), weights);
    census.bound = bound;
    let mut stored = 0usize;
    for k in certified_points(cs.d(), bound) {
        let orbit = orbit_words(&k)?;
        let value = match weights {
            WeightConvention::IndPrimitiveLength => {
                let mut total = BigInt::zero();
                for (_, word) in &orbit {
                    for c in 0..cs.chamber_count() {
                        total += BigInt::from(ctx.closed_count(c, word));
                    }
                }
                total
            }
            WeightConvention::Unit => BigInt::from(unit_classes(&ctx, cs, &orbit, &mut stored)?),
        };
        census.counts.insert(k, BigRational::from_integer(value));
    }
    Ok(census)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut k = x;
    while parent[k] != r {
        let next = parent[k];
        parent[k] = r;
        k = next;
    }
    r
}

fn unit_classes(
    ctx: &GalleryContext,
    cs: &ChamberSystem,
    orbit: &[(Vec<i64>, Vec<usize>)],
    stored: &mut usize,
) -> Result<usize> {
    let mut keys: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut pairs: Vec<(usize, Vec<usize>)> = Vec::new();
    for (ui, (_, word)) in orbit.iter().enumerate() {
        let mut found = Vec::new();
        for c in 0..cs.chamber_count() {
            ctx.closed_galleries(c, word, MAX_PAIRS.saturating_sub(*stored + found.len()), &mut found)?;
        }
        *stored += found.len();
        for g in found {
            keys.insert((ui, g.clone()), pairs.len());
            pairs.push((ui, g));
        }
    }
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    for (id, (ui, g)) in pairs.iter().enumerate() {
        let word = &orbit[*ui].1;
        let c = g[0];
        for s in 0..ctx.rank() {
            for &c2 in ctx.neighbours(s, c) {
                let mut steps = Vec::with_capacity(word.len() + 2);
                steps.push((s, c));
                steps.extend(word.iter().copied().zip(g[1..].iter().copied()));
                steps.push((s, c2));
                let mut moved = ctx.reduce(c2, &steps)?;
                let Some(mu) = moved.element.as_translation() else { continue };
                let Some(u2) = orbit.iter().position(|(m, _)| *m == mu) else {
                    return Err(Error::Numerical("adjacent displacement left the orbit".into()));
                };
                ctx.rewrite(&mut moved, &orbit[u2].1)?;
                let other = *keys
                    .get(&(u2, moved.chambers))
                    .ok_or_else(|| Error::Numerical("moved gallery missing from the census".into()))?;
                let (a, b) = (find(&mut parent, id), find(&mut parent, other));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    Ok((0..pairs.len()).filter(|&i| find(&mut parent, i) == i).count())
}

/// `d = 2` census on a triangle cover, certified on every strict-cone point
/// of the coroot lattice with `k_1 + k_2 ≤ max_len`.
pub fn census_d2(cover: &TriangleCover, max_len: usize, weights: WeightConvention) -> Result<GeodesicCensus> {
    if max_len > MAX_D2_LENGTH {
        return Err(Error::ResourceGuard(alloc::format!("max_len {max_len} exceeds {MAX_D2_LENGTH}")));
    }
    census_galleries(&cover.chambers, max_len, weights)
}
