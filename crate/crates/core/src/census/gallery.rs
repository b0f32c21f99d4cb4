//! Galleries in the universal cover, carried by their projections.
//!
//! A quotient by a group acting freely on vertices is a local isomorphism
//! on residues of corank at least one, so a gallery in the quotient lifts
//! uniquely once its first chamber is lifted, and rank-2 residues of the
//! quotient are those of the building. Reduction therefore runs entirely on
//! chamber ids: a step either lengthens the Weyl distance or is absorbed by
//! the last panel after braid moves make the type end in that panel type.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::ChamberSystem;
use crate::error::{Error, Result};
use crate::weyl::AffinePermutation;

/// Adjacency cache for gallery computations on one chamber system.
pub struct GalleryContext {
    n: usize,
    adjacency: Vec<Vec<Vec<usize>>>,
}

/// A minimal gallery `chambers[0] → … → chambers[l]` of reduced type
/// `types`, with `element` the Weyl distance of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gallery {
    pub chambers: Vec<usize>,
    pub types: Vec<usize>,
    pub element: AffinePermutation,
}

impl Gallery {
    pub fn start(&self) -> usize {
        self.chambers[0]
    }

    pub fn end(&self) -> usize {
        *self.chambers.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

impl GalleryContext {
    pub fn new(cs: &ChamberSystem) -> Self {
        Self { n: cs.d() + 1, adjacency: cs.adjacency() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, kind: usize, c: usize) -> &[usize] {
        &self.adjacency[kind][c]
    }

    /// Order of `s_a s_b`; `None` when infinite.
    fn braid_order(&self, a: usize, b: usize) -> Option<usize> {
        if self.n == 2 {
            return None;
        }
        let diff = (a + self.n - b) % self.n;
        Some(if diff == 1 || diff == self.n - 1 { 3 } else { 2 })
    }

    pub fn empty(&self, c: usize) -> Gallery {
        Gallery { chambers: vec![c], types: Vec::new(), element: AffinePermutation::identity(self.n) }
    }

    /// Extends `g` by the step to the `kind`-adjacent chamber `next`,
    /// keeping the gallery minimal.
    pub fn push(&self, g: &mut Gallery, kind: usize, next: usize) -> Result<()> {
        let end = g.end();
        if next == end || !self.adjacency[kind][end].contains(&next) {
            return Err(Error::InvalidParameter(alloc::format!("chambers {end} and {next} are not {kind}-adjacent")));
        }
        if !g.element.has_right_descent(kind) {
            g.chambers.push(next);
            g.types.push(kind);
            g.element = g.element.mul_simple(kind);
            return Ok(());
        }
        let l = g.types.len();
        self.end_with(&mut g.chambers[..], &mut g.types[..], kind)?;
        if g.chambers[l - 1] == next {
            g.chambers.pop();
            g.types.pop();
            g.element = g.element.mul_simple(kind);
        } else {
            g.chambers[l] = next;
        }
        Ok(())
    }

    /// Minimal gallery from `start` along `(type, chamber)` steps.
    pub fn reduce(&self, start: usize, steps: &[(usize, usize)]) -> Result<Gallery> {
        let mut g = self.empty(start);
        for &(kind, c) in steps {
            self.push(&mut g, kind, c)?;
        }
        Ok(g)
    }

    /// Braid moves on a minimal gallery whose element has right descent `s`
    /// until its type ends in `s`. Endpoints are unchanged.
    fn end_with(&self, ch: &mut [usize], ty: &mut [usize], s: usize) -> Result<()> {
        let l = ty.len();
        if l == 0 {
            return Err(Error::Numerical("gallery has no descent to move".into()));
        }
        let t = ty[l - 1];
        if t == s {
            return Ok(());
        }
        match self.braid_order(s, t) {
            None => Err(Error::Numerical("descent without braid relation".into())),
            Some(2) => {
                self.end_with(&mut ch[..l], &mut ty[..l - 1], s)?;
                self.rank2_replace(&mut ch[l - 2..], &mut ty[l - 2..], &[t, s])
            }
            Some(_) => {
                if l < 3 {
                    return Err(Error::Numerical("gallery too short for a braid move".into()));
                }
                self.end_with(&mut ch[..l], &mut ty[..l - 1], s)?;
                self.end_with(&mut ch[..l - 1], &mut ty[..l - 2], t)?;
                self.rank2_replace(&mut ch[l - 3..], &mut ty[l - 3..], &[s, t, s])
            }
        }
    }

    /// Replaces the gallery `ch` (inside one rank-2 residue) by the unique
    /// gallery with the same endpoints and type `new_types`.
    fn rank2_replace(&self, ch: &mut [usize], ty: &mut [usize], new_types: &[usize]) -> Result<()> {
        let (from, to) = (ch[0], ch[ch.len() - 1]);
        let mut found: Option<Vec<usize>> = None;
        let mut path = vec![from];
        self.search(&mut path, new_types, to, &mut found)?;
        let path = found.ok_or_else(|| Error::Numerical("no gallery of the braided type".into()))?;
        ch.copy_from_slice(&path);
        ty.copy_from_slice(new_types);
        Ok(())
    }

    fn search(&self, path: &mut Vec<usize>, types: &[usize], to: usize, found: &mut Option<Vec<usize>>) -> Result<()> {
        let depth = path.len() - 1;
        if depth == types.len() {
            if *path.last().unwrap() == to {
                if found.is_some() {
                    return Err(Error::Numerical("rank-2 residue does not embed in the quotient".into()));
                }
                *found = Some(path.clone());
            }
            return Ok(());
        }
        let here = *path.last().unwrap();
        for &next in &self.adjacency[types[depth]][here] {
            path.push(next);
            self.search(path, types, to, found)?;
            path.pop();
        }
        Ok(())
    }

    /// Rewrites a minimal gallery to the given reduced word of its element.
    pub fn rewrite(&self, g: &mut Gallery, target: &[usize]) -> Result<()> {
        if AffinePermutation::from_word(self.n, target) != g.element || target.len() != g.types.len() {
            return Err(Error::InvalidParameter("target word is not a reduced word of the gallery".into()));
        }
        for i in (1..=target.len()).rev() {
            self.end_with(&mut g.chambers[..=i], &mut g.types[..i], target[i - 1])?;
        }
        Ok(())
    }

    /// Number of galleries of type `word` from `start` back to `start`,
    /// by propagating path counts.
    pub fn closed_count(&self, start: usize, word: &[usize]) -> u128 {
        let chambers = self.adjacency[0].len();
        let mut v = vec![0u128; chambers];
        v[start] = 1;
        for &kind in word {
            let mut next = vec![0u128; chambers];
            for (c, &x) in v.iter().enumerate().filter(|(_, x)| **x != 0) {
                for &e in &self.adjacency[kind][c] {
                    next[e] += x;
                }
            }
            v = next;
        }
        v[start]
    }

    /// Every closed gallery of type `word` from `start`, as chamber lists.
    pub fn closed_galleries(&self, start: usize, word: &[usize], limit: usize, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let mut path = vec![start];
        self.collect(&mut path, word, limit, out)
    }

    fn collect(&self, path: &mut Vec<usize>, word: &[usize], limit: usize, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let depth = path.len() - 1;
        if depth == word.len() {
            if path[depth] == path[0] {
                if out.len() >= limit {
                    return Err(Error::ResourceGuard(alloc::format!("more than {limit} closed galleries")));
                }
                out.push(path.clone());
            }
            return Ok(());
        }
        let here = path[depth];
        for &next in &self.adjacency[word[depth]][here] {
            path.push(next);
            self.collect(path, word, limit, out)?;
            path.pop();
        }
        Ok(())
    }
}

/// `n`-scaled ε-coordinates of the vertex of type `t` of the fundamental
/// alcove: `n·ω_t`.
pub fn scaled_vertex(n: usize, t: usize) -> Vec<i64> {
    (0..n).map(|i| if i < t { (n - t) as i64 } else { -(t as i64) }).collect()
}

/// `n`-scaled image under `f = t_μ ∘ u` of an `n`-scaled point.
pub fn apply_scaled(f: &AffinePermutation, x: &[i64]) -> Vec<i64> {
    let n = x.len() as i64;
    let (mu, u) = f.split();
    let mut y = vec![0; x.len()];
    for (i, &ui) in u.iter().enumerate() {
        y[ui - 1] = x[i];
    }
    y.iter().zip(&mu).map(|(a, m)| a + n * m).collect()
}
