//! Triangle presentations over the projective plane `PG(2, q)`.
//!
//! A presentation is a set `T` of point triples; the group it presents is
//! `⟨a_x | a_x a_y a_z = 1 for (x, y, z) ∈ T⟩`, which acts simply
//! transitively on the vertices of an Ã_2 building. Words are sequences of
//! letters `2x` (for `a_x`) and `2x + 1` (for `a_x⁻¹`).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the generators and their inverses.
pub type Word = Vec<usize>;

pub fn letter(x: usize, inverse: bool) -> usize {
    2 * x + inverse as usize
}

pub fn inverse_letter(l: usize) -> usize {
    l ^ 1
}

pub fn inverse_word(w: &[usize]) -> Word {
    w.iter().rev().map(|&l| inverse_letter(l)).collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[usize]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&inverse_letter(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePresentation {
    q: u64,
    /// Each line as a sorted list of points.
    lines: Vec<Vec<usize>>,
    /// Basepoint bijection `λ`: point index → line index.
    lambda: Vec<usize>,
    triples: Vec<[usize; 3]>,
}

impl TrianglePresentation {
    /// Validates the projective plane, the bijection `λ`, cyclic closure,
    /// and the incidence-compatibility of the triples.
    pub fn new(q: u64, lines: Vec<Vec<usize>>, lambda: Vec<usize>, triples: Vec<[usize; 3]>) -> Result<Self> {
        let points = (q * q + q + 1) as usize;
        let bad = |reason: &str| Error::Presentation { reason: reason.into(), triple: None };
        if lines.len() != points {
            return Err(bad("projective plane needs q^2+q+1 lines"));
        }
        let mut lines = lines;
        for l in lines.iter_mut() {
            l.sort_unstable();
            l.dedup();
            if l.len() != q as usize + 1 || l.iter().any(|&p| p >= points) {
                return Err(bad("each line needs q+1 distinct points"));
            }
        }
        for a in 0..points {
            for b in a + 1..points {
                let through = lines.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                if through != 1 {
                    return Err(bad("two points must lie on exactly one line"));
                }
            }
        }
        let mut seen = vec![false; points];
        if lambda.len() != points || lambda.iter().any(|&l| l >= points || core::mem::replace(&mut seen[l], true)) {
            return Err(bad("lambda must be a bijection from points to lines"));
        }
        let pres = Self { q, lines, lambda, triples };
        pres.validate_triples()?;
        Ok(pres)
    }

    fn validate_triples(&self) -> Result<()> {
        let points = self.points();
        let set: BTreeSet<[usize; 3]> = self.triples.iter().copied().collect();
        if set.len() != self.triples.len() {
            return Err(Error::Presentation { reason: "duplicate triple".into(), triple: set.iter().next().copied() });
        }
        for t in &self.triples {
            if t.iter().any(|&p| p >= points) {
                return Err(Error::Presentation { reason: "point out of range".into(), triple: Some(*t) });
            }
            let [x, y, z] = *t;
            if !set.contains(&[y, z, x]) {
                return Err(Error::Presentation { reason: "cyclic closure fails".into(), triple: Some(*t) });
            }
        }
        // (x, y, ·) extends iff y ∈ λ(x), and then uniquely
        let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for t in &self.triples {
            *pairs.entry((t[0], t[1])).or_default() += 1;
        }
        for x in 0..points {
            for y in 0..points {
                let incident = self.lines[self.lambda[x]].contains(&y);
                let count = pairs.get(&(x, y)).copied().unwrap_or(0);
                if incident != (count == 1) || count > 1 {
                    let triple = self.triples.iter().find(|t| t[0] == x && t[1] == y).copied();
                    let reason = if count > 1 {
                        "pair extends to more than one triple"
                    } else if incident {
                        "incident pair has no triple"
                    } else {
                        "triple pairs a point with a non-incident point"
                    };
                    return Err(Error::Presentation { reason: reason.into(), triple });
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn points(&self) -> usize {
        self.lines.len()
    }

    pub fn generators(&self) -> usize {
        self.points()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Index of a triple in [`Self::triples`].
    pub fn triple_index(&self, t: &[usize; 3]) -> Option<usize> {
        self.triples.iter().position(|s| s == t)
    }

    /// One representative (lexicographically least rotation) per cyclic orbit.
    pub fn orbit_representatives(&self) -> Vec<[usize; 3]> {
        let reps: BTreeSet<[usize; 3]> = self
            .triples
            .iter()
            .map(|&[x, y, z]| [[x, y, z], [y, z, x], [z, x, y]].into_iter().min().unwrap())
            .collect();
        reps.into_iter().collect()
    }

    /// Relators `a_x a_y a_z`, one per triple.
    pub fn relators(&self) -> Vec<Word> {
        self.triples.iter().map(|t| t.iter().map(|&x| letter(x, false)).collect()).collect()
    }

    /// All homomorphisms to `ℤ/p`, as values on the generators: the kernel of
    /// the relation matrix over `𝔽_p`. Returns a basis of the solution space.
    pub fn characters_mod(&self, p: u64) -> Vec<Vec<u64>> {
        let m = self.generators();
        let mut rows: Vec<Vec<u64>> = self
            .orbit_representatives()
            .iter()
            .map(|t| {
                let mut r = vec![0u64; m];
                for &x in t {
                    r[x] = (r[x] + 1) % p;
                }
                r
            })
            .collect();
        nullspace_mod(&mut rows, m, p)
    }

    /// The character sending every generator to `1 mod 3`: vertex types.
    pub fn type_character(&self) -> Vec<u64> {
        vec![1; self.generators()]
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Basis of `{x : A x = 0}` over `𝔽_p` (`p` prime), in reduced form.
fn nullspace_mod(a: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, pr);
        let inv = pow_mod(a[r][c], p - 2, p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] + (p - f) * a[r][k]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Schreier generators of the kernel of `chars` (values mod `p` on the
/// generators), read off a breadth-first transversal of the image.
pub fn kernel_generators(pres: &TrianglePresentation, chars: &[Vec<u64>], p: u64) -> Vec<Word> {
    let m = pres.generators();
    let image = |x: usize| -> Vec<u64> { chars.iter().map(|c| c[x] % p).collect() };
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| (x + y) % p).collect() };
    let origin = vec![0u64; chars.len()];
    let mut transversal: BTreeMap<Vec<u64>, Word> = BTreeMap::new();
    transversal.insert(origin.clone(), Vec::new());
    let mut order = vec![origin.clone()];
    let mut queue = VecDeque::from([origin]);
    while let Some(g) = queue.pop_front() {
        for x in 0..m {
            let h = add(&g, &image(x));
            if !transversal.contains_key(&h) {
                let mut w = transversal[&g].clone();
                w.push(letter(x, false));
                transversal.insert(h.clone(), w);
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut gens: BTreeSet<Word> = BTreeSet::new();
    for g in &order {
        for x in 0..m {
            let h = add(g, &image(x));
            let mut w = transversal[g].clone();
            w.push(letter(x, false));
            w.extend(inverse_word(&transversal[&h]));
            let w = free_reduce(&w);
            if !w.is_empty() {
                gens.insert(w);
            }
        }
    }
    let mut gens: Vec<Word> = gens.into_iter().collect();
    gens.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    gens
}

/// A torsion-containing `q = 2` presentation over the cyclic Fano plane
/// `L_i = {i, i+1, i+3}`; its mod-3 abelianization has rank two.
pub fn fano_presentation() -> TrianglePresentation {
    let lines: Vec<Vec<usize>> = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    let lambda = vec![0, 1, 2, 4, 6, 5, 3];
    let orbits = [[0, 0, 3], [0, 1, 4], [1, 1, 1], [1, 2, 5], [2, 2, 2], [2, 3, 4], [3, 5, 6], [4, 6, 6], [5, 5, 5]];
    let mut triples = BTreeSet::new();
    for [x, y, z] in orbits {
        triples.extend([[x, y, z], [y, z, x], [z, x, y]]);
    }
    TrianglePresentation::new(2, lines, lambda, triples.into_iter().collect()).expect("fixture presentation is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_fixture_validates() {
        let p = fano_presentation();
        assert_eq!(p.generators(), 7);
        assert_eq!(p.triples().len(), 21);
        assert_eq!(p.orbit_representatives().len(), 9);
    }

    #[test]
    fn closure_violation_rejected() {
        let p = fano_presentation();
        let mut triples = p.triples().to_vec();
        let i = triples.iter().position(|t| *t == [1, 4, 0]).unwrap();
        triples.remove(i);
        let err = TrianglePresentation::new(2, p.lines().to_vec(), p.lambda().to_vec(), triples).unwrap_err();
        assert!(matches!(err, Error::Presentation { triple: Some(_), .. }));
    }

    #[test]
    fn empty_triples_rejected() {
        let p = fano_presentation();
        assert!(TrianglePresentation::new(2, p.lines().to_vec(), p.lambda().to_vec(), Vec::new()).is_err());
    }

    #[test]
    fn mod3_characters_have_rank_two() {
        let p = fano_presentation();
        let chars = p.characters_mod(3);
        assert_eq!(chars.len(), 2);
        for c in &chars {
            for t in p.triples() {
                assert_eq!(t.iter().map(|&x| c[x]).sum::<u64>() % 3, 0);
            }
        }
        assert!(p.characters_mod(2).is_empty());
    }

    #[test]
    fn kernel_generators_lie_in_kernel() {
        let p = fano_presentation();
        let chars = p.characters_mod(3);
        for w in kernel_generators(&p, &chars, 3) {
            for c in &chars {
                let v: u64 = w.iter().map(|&l| if l % 2 == 0 { c[l / 2] } else { 3 - c[l / 2] }).sum();
                assert_eq!(v % 3, 0);
            }
        }
    }

    #[test]
    fn word_helpers() {
        let w = vec![letter(2, false), letter(3, true)];
        assert_eq!(free_reduce(&[w.clone(), inverse_word(&w)].concat()), Vec::<usize>::new());
    }
}
