//! Conjugacy classes of words in a triangle group and their translation
//! vectors, read off from vertex paths in a finite cover.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::gallery::{apply_scaled, scaled_vertex, Gallery, GalleryContext};
use crate::complex::{
    chamber_system_of_presentation, coset_enumerate, free_reduce, inverse_word, ChamberSystem, CosetTable, LocalFlag,
    TrianglePresentation, Word,
};
use crate::complex::triangle::inverse_letter;
use crate::error::{Error, Result};
use crate::weyl::{from_coweight_coords, TranslationVector};

/// A `d = 2` quotient `H\X` built from a triangle presentation and a
/// finite-index type-preserving subgroup.
pub struct TriangleCover {
    pub presentation: TrianglePresentation,
    pub table: CosetTable,
    pub chambers: ChamberSystem,
    pub flags: Vec<LocalFlag>,
}

impl TriangleCover {
    pub fn new(presentation: TrianglePresentation, subgroup: &[Word], limit: usize) -> Result<Self> {
        let table = coset_enumerate(&presentation, subgroup, limit)?;
        Self::from_table(presentation, table)
    }

    pub fn from_table(presentation: TrianglePresentation, table: CosetTable) -> Result<Self> {
        let (chambers, flags) = chamber_system_of_presentation(&presentation, &table)?;
        Ok(Self { presentation, table, chambers, flags })
    }

    /// Local triple of chamber `c` seen from its vertex of type `t`.
    fn local_triple(&self, c: usize, t: usize) -> [usize; 3] {
        let tr = self.presentation.triples()[self.flags[c].triple];
        [tr[t % 3], tr[(t + 1) % 3], tr[(t + 2) % 3]]
    }

    /// Gallery steps inside the star of the type-`t` vertex of `from` to a
    /// chamber containing the edge along `letter`.
    fn star_path(&self, ctx: &GalleryContext, from: usize, t: usize, l: usize) -> Result<(Vec<(usize, usize)>, usize)> {
        let (x, inverse) = (l / 2, l % 2 == 1);
        let hit = |c: usize| {
            let loc = self.local_triple(c, t);
            if inverse {
                loc[2] == x
            } else {
                loc[0] == x
            }
        };
        let kinds: Vec<usize> = (0..3).filter(|&k| k != t).collect();
        let mut prev = vec![None; self.chambers.chamber_count()];
        prev[from] = Some((usize::MAX, usize::MAX));
        let mut queue = VecDeque::from([from]);
        while let Some(c) = queue.pop_front() {
            if hit(c) {
                let mut steps = Vec::new();
                let mut cur = c;
                while cur != from {
                    let (p, kind) = prev[cur].unwrap();
                    steps.push((kind, cur));
                    cur = p;
                }
                steps.reverse();
                let next_type = if inverse { (t + 2) % 3 } else { (t + 1) % 3 };
                return Ok((steps, next_type));
            }
            for &k in &kinds {
                for &e in ctx.neighbours(k, c) {
                    if prev[e].is_none() {
                        prev[e] = Some((c, k));
                        queue.push_back(e);
                    }
                }
            }
        }
        Err(Error::InvalidParameter(alloc::format!("letter {l} does not occur in a vertex star")))
    }

    /// Vectorial distance from the base vertex to its image under `w^n`,
    /// for `n = 1..=n_max`.
    pub fn vector_trajectory(&self, w: &[usize], n_max: usize) -> Result<Vec<TranslationVector>> {
        if let Some(&bad) = w.iter().find(|&&l| l >= 2 * self.presentation.generators()) {
            return Err(Error::InvalidParameter(alloc::format!("letter {bad} out of range")));
        }
        let ctx = GalleryContext::new(&self.chambers);
        let start = self
            .flags
            .iter()
            .position(|f| f.coset == 0)
            .ok_or_else(|| Error::InvalidParameter("cover has no base chamber".into()))?;
        let mut g: Gallery = ctx.empty(start);
        let mut t = 0;
        let mut out = Vec::with_capacity(n_max);
        for _ in 0..n_max {
            for &l in w {
                let (steps, next) = self.star_path(&ctx, g.end(), t, l)?;
                for (kind, c) in steps {
                    ctx.push(&mut g, kind, c)?;
                }
                t = next;
            }
            let pos = apply_scaled(&g.element, &scaled_vertex(3, t));
            out.push(vectorial(&pos));
        }
        Ok(out)
    }
}

/// Vectorial distance from the origin of an `n`-scaled ε-vector.
fn vectorial(scaled: &[i64]) -> TranslationVector {
    let n = scaled.len() as i64;
    let mut sorted = scaled.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let w: Vec<i64> = sorted.windows(2).map(|p| (p[0] - p[1]) / n).collect();
    from_coweight_coords(&w).unwrap_or_else(|| TranslationVector::new(w))
}

/// Increments `σ_n − σ_{n−1}` of the vectorial distance `σ_n` from the base
/// vertex to its image under `w^n`, until three consecutive increments
/// agree.
pub fn translation_vector(cover: &TriangleCover, w: &[usize], n_max: usize) -> Result<TranslationVector> {
    let reduced = cyclic_reduce(w);
    if reduced.is_empty() {
        return Err(Error::IdentityWord);
    }
    let n_max = n_max.min(12);
    let sigma = cover.vector_trajectory(&reduced, n_max)?;
    let mut previous = TranslationVector::zero(2);
    let mut increments: Vec<TranslationVector> = Vec::new();
    for s in &sigma {
        increments.push(s - &previous);
        previous = s.clone();
        let m = increments.len();
        if m >= 3 && increments[m - 1] == increments[m - 2] && increments[m - 2] == increments[m - 3] {
            let v = increments[m - 1].clone();
            if v.is_zero() {
                return Err(Error::IdentityWord);
            }
            return Ok(v);
        }
    }
    Err(Error::NotStabilized(n_max))
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[usize]) -> Word {
    let mut r = free_reduce(w);
    while r.len() >= 2 && r[r.len() - 1] == inverse_letter(r[0]) {
        r.pop();
        r.remove(0);
    }
    r
}

/// Least rotation of the cyclic reduction; equal for freely conjugate words.
pub fn canonical_cyclic_word(w: &[usize]) -> Word {
    let r = cyclic_reduce(w);
    (0..r.len().max(1))
        .map(|i| {
            let mut v = r[i.min(r.len())..].to_vec();
            v.extend_from_slice(&r[..i.min(r.len())]);
            v
        })
        .min()
        .unwrap_or_default()
}

/// Whether the cyclic reduction is not a proper power of a shorter word.
pub fn is_primitive_word(w: &[usize]) -> bool {
    let r = cyclic_reduce(w);
    let n = r.len();
    n > 0 && (1..n).filter(|p| n % p == 0).all(|p| (p..n).any(|i| r[i] != r[i - p]))
}

/// A conjugacy class represented by its canonical cyclic word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub word: Word,
    pub primitive: bool,
    pub vector: TranslationVector,
}

impl ConjClass {
    pub fn from_word(cover: &TriangleCover, w: &[usize]) -> Result<Self> {
        let word = canonical_cyclic_word(w);
        let vector = translation_vector(cover, &word, 12)?;
        Ok(Self { primitive: is_primitive_word(&word), word, vector })
    }

    pub fn inverse(&self, cover: &TriangleCover) -> Result<Self> {
        Self::from_word(cover, &inverse_word(&self.word))
    }
}
