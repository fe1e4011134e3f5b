//! Dense integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use crate::numberfield::IntMatrix;

pub fn zeros(r: usize, c: usize) -> IntMatrix {
    vec![vec![BigInt::zero(); c]; r]
}

pub fn identity(n: usize) -> IntMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn cols(m: &IntMatrix) -> usize {
    m.first().map_or(0, Vec::len)
}

/// Product, or `None` on a dimension mismatch.
pub fn mul(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    if cols(a) != b.len() {
        return None;
    }
    let n = cols(b);
    let mut out = zeros(a.len(), n);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    Some(out)
}

pub fn pow(a: &IntMatrix, k: u32) -> IntMatrix {
    let mut r = identity(a.len());
    for _ in 0..k {
        r = mul(&r, a).expect("square matrix");
    }
    r
}

pub fn is_positive(a: &IntMatrix) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_positive()))
}

pub fn row_sums(a: &IntMatrix) -> Vec<BigInt> {
    a.iter().map(|r| r.iter().sum()).collect()
}

pub fn col_sums(a: &IntMatrix) -> Vec<BigInt> {
    (0..cols(a)).map(|j| a.iter().map(|r| &r[j]).sum()).collect()
}

pub fn max_row_sum(a: &IntMatrix) -> BigInt {
    row_sums(a).into_iter().max().unwrap_or_default()
}

pub fn max_col_sum(a: &IntMatrix) -> BigInt {
    col_sums(a).into_iter().max().unwrap_or_default()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    (0..cols(a)).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}
