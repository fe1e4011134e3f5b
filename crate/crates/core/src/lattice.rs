//! Integer lattices: diagonalization by unimodular row and column operations,
//! kernels, and free quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{self, IntMatrix};

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal with nonnegative entries.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Diagonal {
    pub fn entry(&self, i: usize) -> &BigInt {
        &self.d[i][i]
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Diagonalizes an `rows × cols` matrix.
pub fn diagonalize(a: &IntMatrix, rows: usize, cols: usize) -> Diagonal {
    let mut d = a.clone();
    let mut u = matrix::identity(rows);
    let mut u_inv = matrix::identity(rows);
    let mut v = matrix::identity(cols);
    let mut v_inv = matrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in d.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut u_inv, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        v_inv.swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                let pivot_row = d[t].clone();
                for (x, y) in d[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                let urow = u[t].clone();
                for (x, y) in u[i].iter_mut().zip(&urow) {
                    *x -= &q * y;
                }
                for row in u_inv.iter_mut() {
                    let add = &q * &row[i];
                    row[t] += add;
                }
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    swap_cols(&mut u_inv, t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                for row in d.iter_mut() {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                for row in v.iter_mut() {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                let vrow = v_inv[j].clone();
                for (x, y) in v_inv[t].iter_mut().zip(&vrow) {
                    *x += &q * y;
                }
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    v_inv.swap(t, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
        t += 1;
    }
    Diagonal { u, u_inv, d, v, v_inv, rank: t }
}

pub fn mul_vec(a: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// The sublattice of cycles modulo a sublattice of boundaries, assumed free.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Columns of `kernel` form a basis of the cycle lattice.
    pub kernel: IntMatrix,
    ker_coords: IntMatrix,
    rel: Diagonal,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Quotient {
    /// Cycles of the `rows × cols` map `boundary`, modulo the span of `relations`.
    pub fn new(boundary: &IntMatrix, rows: usize, cols: usize, relations: &[Vec<BigInt>]) -> Quotient {
        let diag = diagonalize(boundary, rows, cols);
        let r = diag.rank;
        let k = cols - r;
        let kernel: IntMatrix = (0..cols).map(|i| diag.v[i][r..].to_vec()).collect();
        let ker_coords: IntMatrix = diag.v_inv[r..].to_vec();
        // relations in kernel coordinates, one column each
        let rel_cols: Vec<Vec<BigInt>> = relations.iter().map(|z| mul_vec(&ker_coords, z)).collect();
        let c: IntMatrix = (0..k).map(|i| rel_cols.iter().map(|col| col[i].clone()).collect()).collect();
        let rel = diagonalize(&c, k, relations.len());
        let torsion = (0..rel.rank).map(|i| rel.entry(i).clone()).filter(|x| !x.is_one()).collect();
        Quotient { kernel, ker_coords, rank: k - rel.rank, rel, torsion }
    }

    /// A cycle representing the i-th basis vector of the quotient.
    pub fn representative(&self, i: usize) -> Vec<BigInt> {
        let col: Vec<BigInt> = self.rel.u_inv.iter().map(|row| row[self.rel.rank + i].clone()).collect();
        mul_vec(&self.kernel, &col)
    }

    /// Quotient coordinates of a cycle.
    pub fn project(&self, z: &[BigInt]) -> Vec<BigInt> {
        let c = mul_vec(&self.ker_coords, z);
        mul_vec(&self.rel.u, &c)[self.rel.rank..].to_vec()
    }

    /// Matrix of the map induced by `f` on the quotient.
    pub fn induced(&self, f: &IntMatrix) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> =
            (0..self.rank).map(|i| self.project(&mul_vec(f, &self.representative(i)))).collect();
        (0..self.rank).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = x / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn trace(a: &IntMatrix) -> BigInt {
    a.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}
