//! Exact rational feasibility for `A x = b, x >= 0` by two-phase simplex with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// A nonnegative solution of `a·x = b`, or `None` when the system is infeasible.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return Some(Vec::new());
    }
    // tableau columns: n structural, m artificial, then rhs
    let w = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Q::zero(); w];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Q::one();
        row[w - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // objective: minimise the sum of artificials, stored as reduced costs
    let mut obj = vec![Q::zero(); w];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[w - 1] -= &row[w - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(col) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut best: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let ratio = &t[i][w - 1] / &t[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = best else { break };
        pivot(&mut t, row, col);
        basis[row] = col;
    }
    if !t[m][w - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][w - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (x, y) in r.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn simple_systems() {
        let a = vec![vec![q(1), q(-1), q(-1)]];
        let x = feasible_point(&a, &[q(0)]).unwrap();
        assert_eq!(&x[0] - &x[1] - &x[2], q(0));
        let a = vec![vec![q(1), q(1)]];
        assert!(feasible_point(&a, &[q(-1)]).is_none());
    }
}
