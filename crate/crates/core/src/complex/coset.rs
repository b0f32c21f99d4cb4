//! Todd–Coxeter coset enumeration (HLT strategy with lookahead).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::triangle::{inverse_letter, TrianglePresentation, Word};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Right action of the generators (and inverses) on the cosets `H\Γ`.
///
/// Coset `0` is `H`; the remaining cosets are numbered in breadth-first order
/// over the letters `0, 1, 2, …`, so tables are reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    letters: usize,
    action: Vec<Vec<usize>>,
    complete: bool,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.action.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `c · l` for a letter `l`.
    pub fn act(&self, c: usize, l: usize) -> usize {
        self.action[c][l]
    }

    pub fn act_word(&self, c: usize, w: &[usize]) -> usize {
        w.iter().fold(c, |c, &l| self.action[c][l])
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    /// Each relator fixes every coset, each letter acts as a permutation
    /// inverse to its partner, and each subgroup word fixes coset `0`.
    pub fn verify(&self, relators: &[Word], subgroup: &[Word]) -> bool {
        let n = self.index();
        let perms = (0..self.letters).all(|l| {
            let mut hit = vec![false; n];
            (0..n).all(|c| {
                let d = self.action[c][l];
                d < n && !core::mem::replace(&mut hit[d], true) && self.action[d][inverse_letter(l)] == c
            })
        });
        perms
            && relators.iter().all(|r| (0..n).all(|c| self.act_word(c, r) == c))
            && subgroup.iter().all(|w| self.act_word(0, w) == 0)
    }
}

struct Enumerator<'a> {
    letters: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    limit: usize,
    relators: &'a [Word],
}

impl<'a> Enumerator<'a> {
    fn new(letters: usize, limit: usize, relators: &'a [Word]) -> Self {
        Self { letters, table: vec![vec![NONE; letters]], parent: vec![0], live: 1, limit, relators }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn define(&mut self, c: usize, l: usize) -> Result<()> {
        if self.live >= self.limit {
            self.lookahead();
            if self.live >= self.limit {
                return Err(Error::CosetLimit(self.limit));
            }
        }
        if self.table.len() >= self.limit.saturating_mul(16) {
            return Err(Error::CosetLimit(self.limit));
        }
        let n = self.table.len();
        self.table.push(vec![NONE; self.letters]);
        self.parent.push(n);
        self.live += 1;
        self.table[c][l] = n;
        self.table[n][inverse_letter(l)] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
            self.live -= 1;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for l in 0..self.letters {
                let f = self.table[e][l];
                if f == NONE {
                    continue;
                }
                let li = inverse_letter(l);
                if self.table[f][li] == e {
                    self.table[f][li] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][l] != NONE {
                    let t = self.table[e1][l];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][li] != NONE {
                    let t = self.table[f1][li];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][l] = f1;
                    self.table[f1][li] = e1;
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions; fills gaps when `fill` is set.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inverse_letter(w[j as usize])] != NONE {
                b = self.table[b][inverse_letter(w[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                // deduction closes the cycle
                let l = w[i as usize];
                self.table[f][l] = b;
                self.table[b][inverse_letter(l)] = f;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn lookahead(&mut self) {
        let relators = self.relators;
        for c in 0..self.table.len() {
            for r in relators {
                if !self.alive(c) {
                    break;
                }
                // scans without definitions never fail
                let _ = self.scan(c, r, false);
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `pres`, keeping at most `limit` live cosets.
pub fn coset_enumerate(pres: &TrianglePresentation, subgroup: &[Word], limit: usize) -> Result<CosetTable> {
    enumerate_words(2 * pres.generators(), &pres.relators(), subgroup, limit)
}

/// Coset enumeration for an arbitrary finite presentation on `letters / 2`
/// generators.
pub fn enumerate_words(letters: usize, relators: &[Word], subgroup: &[Word], limit: usize) -> Result<CosetTable> {
    if limit == 0 {
        return Err(Error::CosetLimit(0));
    }
    if let Some(bad) = relators.iter().chain(subgroup).flatten().find(|&&l| l >= letters) {
        return Err(Error::InvalidParameter(alloc::format!("letter {bad} out of range")));
    }
    let mut en = Enumerator::new(letters, limit, relators);
    for w in subgroup {
        en.scan(0, w, true)?;
    }
    let mut c = 0;
    while c < en.table.len() {
        if en.alive(c) {
            for r in relators {
                if !en.alive(c) {
                    break;
                }
                en.scan(c, r, true)?;
            }
            if en.alive(c) {
                for l in 0..letters {
                    if en.table[c][l] == NONE {
                        en.define(c, l)?;
                    }
                }
            }
        }
        c += 1;
    }
    standardize(&mut en, relators, subgroup)
}

fn standardize(en: &mut Enumerator<'_>, relators: &[Word], subgroup: &[Word]) -> Result<CosetTable> {
    let start = en.rep(0);
    let mut number = vec![NONE; en.table.len()];
    let mut order = vec![start];
    number[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for l in 0..en.letters {
            let t = en.table[c][l];
            if t == NONE {
                return Err(Error::IncompleteTable);
            }
            let t = en.rep(t);
            if number[t] == NONE {
                number[t] = order.len();
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let mut action = Vec::with_capacity(order.len());
    for &c in &order {
        let mut row = Vec::with_capacity(en.letters);
        for l in 0..en.letters {
            let t = en.table[c][l];
            let t = en.rep(t);
            row.push(number[t]);
        }
        action.push(row);
    }
    let table = CosetTable { letters: en.letters, action, complete: true };
    if !table.verify(relators, subgroup) {
        return Err(Error::IncompleteTable);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::super::triangle::{fano_presentation, kernel_generators, letter};
    use super::*;

    #[test]
    fn whole_group_has_index_one() {
        let p = fano_presentation();
        let gens: Vec<Word> = (0..p.generators()).map(|x| vec![letter(x, false)]).collect();
        let t = coset_enumerate(&p, &gens, 100).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn type_kernel_has_index_three() {
        let p = fano_presentation();
        let gens = kernel_generators(&p, &[p.type_character()], 3);
        let t = coset_enumerate(&p, &gens, 1000).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.verify(&p.relators(), &gens));
    }

    #[test]
    fn full_mod3_kernel_has_index_nine() {
        let p = fano_presentation();
        let gens = kernel_generators(&p, &p.characters_mod(3), 3);
        let t = coset_enumerate(&p, &gens, 1000).unwrap();
        assert_eq!(t.index(), 9);
    }

    #[test]
    fn trivial_subgroup_exceeds_limit() {
        let p = fano_presentation();
        assert_eq!(coset_enumerate(&p, &[], 200).unwrap_err(), Error::CosetLimit(200));
    }

    #[test]
    fn cyclic_group() {
        // ⟨a | a^5⟩ over the trivial subgroup
        let t = enumerate_words(2, &[vec![0; 5]], &[], 50).unwrap();
        assert_eq!(t.index(), 5);
        // ⟨a, b | a^2, b^3, (ab)^2⟩ = S_3
        let rels = vec![vec![0, 0], vec![2, 2, 2], vec![0, 2, 0, 2]];
        assert_eq!(enumerate_words(4, &rels, &[], 100).unwrap().index(), 6);
    }
}
