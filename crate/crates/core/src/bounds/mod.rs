//! Complexity quantities of a pseudo-Anosov given by a periodic splitting
//! sequence, and the resulting generator bound.

mod extension;
mod normal;

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{self, IntMatrix};
use crate::splitting::AgolCycle;
use crate::traintrack::TrainTrack;

pub use extension::{check_extension, extension_incidence, CuspPaths};
pub use normal::NormalCurve;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("not a maximal diagonal extension: {0}")]
    NotAnExtension(String),
    #[error("normal coordinates are incompatible at switch {0}")]
    IncompatibleCoordinates(usize),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("central split inside the period")]
    CentralInPeriod,
    #[error("bad bound report: {0}")]
    Parse(String),
    #[error(transparent)]
    Split(#[from] crate::splitting::SplitError),
}

/// Largest column sum.
pub fn r_of_psi(m: &IntMatrix) -> BigInt {
    matrix::max_col_sum(m)
}

/// Least K with M^K strictly positive; `None` past the Wielandt bound (n−1)² + 1.
pub fn power_positive_k(m: &IntMatrix) -> Option<u32> {
    let n = m.len();
    if n == 0 || matrix::cols(m) != n {
        return None;
    }
    // the zero pattern suffices, so iterate on booleans
    let pat: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|x| !x.is_zero()).collect()).collect();
    let cap = (n - 1) * (n - 1) + 1;
    let mut p = pat.clone();
    for k in 1..=cap {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return Some(k as u32);
        }
        let mut q = vec![vec![false; n]; n];
        for i in 0..n {
            for t in 0..n {
                if p[i][t] {
                    for j in 0..n {
                        q[i][j] |= pat[t][j];
                    }
                }
            }
        }
        p = q;
    }
    None
}

pub fn power_positive_k_checked(m: &IntMatrix) -> Result<u32, BoundsError> {
    power_positive_k(m).ok_or(BoundsError::NotPrimitive)
}

/// F(x) = (1 + r)x + r x³ applied 2g times to `c_total`.
pub fn m_of_psi(g: u32, r: &BigInt, c_total: &BigInt) -> BigInt {
    let mut x = c_total.clone();
    for _ in 0..2 * g {
        x = (BigInt::one() + r) * &x + r * &x * &x * &x;
    }
    x
}

/// (20(g+s)−18)^s · ((2M)^{2g} + (2M+8)^{2(g+s−1)}).
pub fn dd_bound(g: u32, s: u32, m: &BigInt) -> BigInt {
    let base = BigInt::from(20 * (g + s) - 18);
    let two_m = BigInt::from(2) * m;
    let left = num_traits::pow(two_m.clone(), (2 * g) as usize);
    let right = num_traits::pow(two_m + 8, (2 * (g + s - 1)) as usize);
    num_traits::pow(base, s as usize) * (left + right)
}

/// Image vector, its length bound 1ᵀMV and the intersection bound VᵀMV.
pub fn push_curve(m: &IntMatrix, v: &[BigInt]) -> Result<(Vec<BigInt>, BigInt, BigInt), BoundsError> {
    if matrix::cols(m) != v.len() || m.len() != v.len() {
        return Err(BoundsError::DimensionMismatch);
    }
    let image: Vec<BigInt> = m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
    let len: BigInt = image.iter().sum();
    let int: BigInt = image.iter().zip(v).map(|(a, b)| a * b).sum();
    let ell: BigInt = v.iter().sum();
    let r = r_of_psi(m);
    debug_assert!(len <= &r * &ell);
    debug_assert!(int <= &r * &ell * &ell);
    Ok((image, len, int))
}

/// Crossings of the diagonal between two cusps of one region with the dual triangulation.
pub fn diagonal_length(t: &TrainTrack, a: usize, b: usize) -> Option<usize> {
    let f = t.faces();
    let r = f.of_cusp(t, a);
    if f.of_cusp(t, b) != r {
        return None;
    }
    let darts = &f.regions[r].darts;
    // corner after traversing darts[k] lies at the arrival switch
    let pos = |w: usize| {
        darts.iter().position(|&h| {
            let x = t.alpha(h);
            x / 3 == w && x % 3 == 1
        })
    };
    let (i, j) = (pos(a)?, pos(b)?);
    let n = darts.len();
    let k = (j + n - i) % n;
    Some(k.min(n - k))
}

/// Largest diagonal length over all diagonals of all regions.
pub fn c_prime(t: &TrainTrack) -> usize {
    let mut best = 0;
    for r in t.regions() {
        let k = r.cusps.len();
        for i in 0..k {
            for j in i + 1..k {
                if (j == i + 1) || (i == 0 && j == k - 1) {
                    continue;
                }
                if let Some(x) = diagonal_length(t, r.cusps[i], r.cusps[j]) {
                    best = best.max(x);
                }
            }
        }
    }
    best
}

/// c(ψ): the largest 2·(max row sum of N) + 1 over all maximal diagonal extensions.
pub fn c_of_psi(cycle: &AgolCycle) -> Result<BigInt, BoundsError> {
    let (t, _) = cycle.start();
    let mut best = BigInt::zero();
    for ext in t.diagonal_extensions() {
        let (_, n) = extension_incidence(cycle, &ext)?;
        let c = BigInt::from(2) * matrix::max_row_sum(&n) + 1;
        if c > best {
            best = c;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub r: BigInt,
    pub k: u32,
    pub c: BigInt,
    pub c_prime: usize,
    pub m_psi: BigInt,
    pub dd_bound: BigInt,
    pub g: usize,
    pub s: usize,
    pub l: usize,
    pub m: Option<usize>,
}

impl BoundReport {
    pub fn compute(cycle: &AgolCycle) -> Result<Self, BoundsError> {
        let (t, _) = cycle.start();
        let pm = &cycle.cycle_matrix.entries;
        let k = power_positive_k_checked(pm)?;
        let r = r_of_psi(pm);
        let c = c_of_psi(cycle)?;
        let cp = c_prime(t);
        let g = t.genus().max(1);
        let m_psi = m_of_psi(g as u32, &r, &(&c + BigInt::from(cp)));
        let s = t.num_switches();
        let dd = dd_bound(g as u32, s as u32, &m_psi);
        Ok(BoundReport { r, k, c, c_prime: cp, m_psi, dd_bound: dd, g: t.genus(), s, l: t.num_branches(), m: None })
    }

    /// Aligned key/value lines.
    pub fn to_text(&self) -> String {
        let digits = |x: &BigInt| x.to_string().len();
        let mut rows = vec![
            ("g", self.g.to_string()),
            ("s", self.s.to_string()),
            ("l", self.l.to_string()),
            ("r", self.r.to_string()),
            ("K", self.k.to_string()),
            ("c", self.c.to_string()),
            ("c_prime", self.c_prime.to_string()),
        ];
        rows.push(("M_psi_digits", digits(&self.m_psi).to_string()));
        rows.push(("dd_bound_digits", digits(&self.dd_bound).to_string()));
        rows.push(("M_psi", self.m_psi.to_string()));
        rows.push(("dd_bound", self.dd_bound.to_string()));
        if let Some(m) = self.m {
            rows.push(("m", m.to_string()));
        }
        let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
    }

    /// Reads the output of `to_text`; the digit counts must match the values.
    pub fn from_text(text: &str) -> Result<Self, BoundsError> {
        let bad = |m: String| BoundsError::Parse(m);
        let lines: Vec<&str> =
            text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
        let mut kv = HashMap::new();
        for line in &lines {
            let (k, v) =
                line.split_once(char::is_whitespace).ok_or_else(|| bad(format!("expected `key value`: {line}")))?;
            kv.insert(k, v.trim());
        }
        fn field<T: FromStr>(kv: &HashMap<&str, &str>, k: &str) -> Result<T, BoundsError> {
            kv.get(k).and_then(|v| v.parse().ok()).ok_or_else(|| BoundsError::Parse(format!("missing or bad `{k}`")))
        }
        let rep = BoundReport {
            g: field(&kv, "g")?,
            s: field(&kv, "s")?,
            l: field(&kv, "l")?,
            r: field(&kv, "r")?,
            k: field(&kv, "K")?,
            c: field(&kv, "c")?,
            c_prime: field(&kv, "c_prime")?,
            m_psi: field(&kv, "M_psi")?,
            dd_bound: field(&kv, "dd_bound")?,
            m: if kv.contains_key("m") { Some(field(&kv, "m")?) } else { None },
        };
        if rep.to_text().split_whitespace().ne(lines.iter().flat_map(|l| l.split_whitespace())) {
            return Err(bad("report is inconsistent with its own fields".into()));
        }
        Ok(rep)
    }
}
