//! The affine Weyl group of type Ã_d as affine permutations of ℤ.
//!
//! An element is a bijection `f: ℤ → ℤ` with `f(i + n) = f(i) + n` and
//! `Σ_{i=1}^{n} f(i) = Σ i`, where `n = d + 1`; it is stored through its window
//! `[f(1), …, f(n)]`. The simple reflection `s_i` (`1 ≤ i ≤ d`) swaps `i` and
//! `i + 1`; `s_0` swaps `0` and `1`. Right multiplication by `s_i` permutes
//! window positions, which is all the gallery machinery needs.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i64).collect() }
    }

    pub fn from_window(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n < 2 {
            return Err(Error::InvalidParameter("window must have length >= 2".into()));
        }
        let sum: i64 = window.iter().sum();
        if sum != n * (n + 1) / 2 {
            return Err(Error::InvalidParameter("window sum must be n(n+1)/2".into()));
        }
        let mut residues: Vec<i64> = window.iter().map(|x| x.rem_euclid(n)).collect();
        residues.sort_unstable();
        if residues.iter().enumerate().any(|(i, &r)| r != i as i64) {
            return Err(Error::InvalidParameter("window residues must be distinct".into()));
        }
        Ok(Self { window })
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `f(i)` for any integer `i`.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        let r = (i - 1).rem_euclid(n);
        let shift = (i - 1).div_euclid(n);
        self.window[r as usize] + shift * n
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x == i as i64 + 1)
    }

    /// `self ∘ s_i`.
    pub fn mul_simple(&self, i: usize) -> Self {
        let n = self.window.len();
        let mut w = self.window.clone();
        if i == 0 {
            let (first, last) = (w[0], w[n - 1]);
            w[0] = last - n as i64;
            w[n - 1] = first + n as i64;
        } else {
            w.swap(i - 1, i);
        }
        Self { window: w }
    }

    /// `s_i ∘ self`.
    pub fn simple_mul(&self, i: usize) -> Self {
        let n = self.window.len() as i64;
        let swap = |x: i64| -> i64 {
            // s_i on values: swaps i and i+1 modulo n (s_0 swaps 0 and 1)
            let r = x.rem_euclid(n);
            let i = i as i64;
            if r == i {
                x + 1
            } else if r == (i + 1) % n {
                x - 1
            } else {
                x
            }
        };
        Self { window: self.window.iter().map(|&x| swap(x)).collect() }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { window: other.window.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let n = self.window.len() as i64;
        let mut w = alloc::vec![0; self.window.len()];
        for (i, &x) in self.window.iter().enumerate() {
            let r = (x - 1).rem_euclid(n);
            let shift = (x - 1).div_euclid(n);
            w[r as usize] = i as i64 + 1 - shift * n;
        }
        Self { window: w }
    }

    /// Whether `ℓ(self · s_i) < ℓ(self)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.window.len();
        if i == 0 {
            self.window[n - 1] - n as i64 > self.window[0]
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    /// Coxeter length, counted as affine inversions.
    pub fn length(&self) -> u64 {
        let n = self.window.len() as i64;
        let mut total = 0u64;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                let diff = self.window[j] - self.window[i];
                total += diff.div_euclid(n).unsigned_abs();
            }
        }
        total
    }

    /// A reduced word `[i_1, …, i_l]` with `self = s_{i_1} ⋯ s_{i_l}`. The
    /// word is produced by peeling off the smallest right descent, so it is
    /// deterministic.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.window.len();
        let mut f = self.clone();
        let mut word = Vec::with_capacity(self.length() as usize);
        while let Some(i) = (0..n).find(|&i| f.has_right_descent(i)) {
            f = f.mul_simple(i);
            word.push(i);
        }
        word.reverse();
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(n), |f, &i| f.mul_simple(i))
    }

    /// Translation by an integral vector `mu` of sum zero (coroot lattice, ε-coordinates).
    pub fn translation(mu: &[i64]) -> Result<Self> {
        let n = mu.len() as i64;
        if mu.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidParameter("translation vector must have sum zero".into()));
        }
        Ok(Self { window: mu.iter().enumerate().map(|(i, &m)| i as i64 + 1 + n * m).collect() })
    }

    /// Split `self = t_mu ∘ u` with `u` a permutation of `1..=n`. Returns
    /// (`mu`, window of `u`).
    pub fn split(&self) -> (Vec<i64>, Vec<usize>) {
        let n = self.window.len() as i64;
        let mut mu = alloc::vec![0; self.window.len()];
        let mut u = alloc::vec![0; self.window.len()];
        for (i, &x) in self.window.iter().enumerate() {
            let r = (x - 1).rem_euclid(n);
            u[i] = r as usize + 1;
            mu[r as usize] = (x - 1).div_euclid(n);
        }
        (mu, u)
    }

    /// `Some(mu)` if `self` is a pure translation.
    pub fn as_translation(&self) -> Option<Vec<i64>> {
        let (mu, u) = self.split();
        u.iter().enumerate().all(|(i, &x)| x == i + 1).then_some(mu)
    }

    /// Image of the origin (the special type-0 vertex), in ε-coordinates.
    pub fn origin_image(&self) -> Vec<i64> {
        self.split().0
    }
}

/// Every permutation of `1..=n`, in lexicographic order; the finite Weyl group `W_0`.
pub fn finite_weyl_group(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}
