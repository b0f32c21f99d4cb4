//! Smith and Hermite normal forms over the integers.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix stored row-major as a vector of rows.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// `left · original · right = diag`, with `left`, `right` unimodular.
///
/// The inverses of both transforms are carried along so that callers can
/// reconstruct the input (`left_inv · diag · right_inv`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | …`, nonnegative, length `min(rows, cols)`.
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The `rows × cols` matrix with `diag` on its main diagonal.
    pub fn diag_matrix(&self) -> IntMatrix {
        let mut m = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, d) in self.diag.iter().enumerate() {
            m[i][i] = d.clone();
        }
        m
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += f · row_j
    fn add_row(&mut self, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = &self.a[j][c] * f;
            self.a[i][c] += t;
        }
        for c in 0..self.rows {
            let t = &self.u[j][c] * f;
            self.u[i][c] += t;
        }
        // inverse: col_j -= f · col_i
        for r in 0..self.rows {
            let t = &self.u_inv[r][i] * f;
            self.u_inv[r][j] -= t;
        }
    }

    /// col_i += f · col_j
    fn add_col(&mut self, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = &self.a[r][j] * f;
            self.a[r][i] += t;
        }
        for r in 0..self.cols {
            let t = &self.v[r][j] * f;
            self.v[r][i] += t;
        }
        for c in 0..self.cols {
            let t = &self.v_inv[i][c] * f;
            self.v_inv[j][c] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }

    /// Position of a nonzero entry of minimal absolute value in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                if self.a[r][c].is_zero() {
                    continue;
                }
                match best {
                    Some((br, bc)) if self.a[br][bc].abs() <= self.a[r][c].abs() => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let steps = self.rows.min(self.cols);
        let mut t = 0;
        while t < steps {
            let Some((r, c)) = self.min_pivot(t) else { break };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let mut dirty = false;
                for r in t + 1..self.rows {
                    if self.a[r][t].is_zero() {
                        continue;
                    }
                    let f = -self.a[r][t].div_floor(&self.a[t][t]);
                    self.add_row(r, t, &f);
                    if !self.a[r][t].is_zero() {
                        self.swap_rows(t, r);
                        dirty = true;
                    }
                }
                for c in t + 1..self.cols {
                    if self.a[t][c].is_zero() {
                        continue;
                    }
                    let f = -self.a[t][c].div_floor(&self.a[t][t]);
                    self.add_col(c, t, &f);
                    if !self.a[t][c].is_zero() {
                        self.swap_cols(t, c);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility of the trailing block by the pivot
                let mut offender = None;
                'scan: for r in t + 1..self.rows {
                    for c in t + 1..self.cols {
                        if !self.a[r][c].is_multiple_of(&self.a[t][t]) {
                            offender = Some(r);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(r) => self.add_row(t, r, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

/// Smith normal form of an integer matrix with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut red = Reducer {
        a: m.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    red.run();
    let diag = (0..rows.min(cols)).map(|i| red.a[i][i].clone()).collect();
    SmithDecomposition {
        diag,
        left: red.u,
        left_inv: red.u_inv,
        right: red.v,
        right_inv: red.v_inv,
        rows,
        cols,
    }
}

/// Canonical row-style Hermite normal form of the lattice spanned by `gens`
/// (each generator is one row). Returns the nonzero rows: upper triangular,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = gens.to_vec();
    let mut basis = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        // Euclid on column `col` among rows >= row
        loop {
            let pivot = (row..a.len())
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(p) = pivot else { break };
            a.swap(row, p);
            let mut done = true;
            for r in row + 1..a.len() {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].div_floor(&a[row][col]);
                for c in 0..dim {
                    let t = &a[row][c] * &f;
                    a[r][c] -= t;
                }
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < a.len() && !a[row][col].is_zero() {
            if a[row][col].is_negative() {
                for x in a[row].iter_mut() {
                    *x = -x.clone();
                }
            }
            basis.push((row, col));
            row += 1;
        }
    }
    // reduce entries above pivots
    for (i, &(r, c)) in basis.iter().enumerate() {
        for &(r2, _) in basis.iter().take(i) {
            let f = a[r2][c].div_floor(&a[r][c]);
            if !f.is_zero() {
                for cc in 0..dim {
                    let t = &a[r][cc] * &f;
                    a[r2][cc] -= t;
                }
            }
        }
    }
    a.truncate(row);
    a
}
