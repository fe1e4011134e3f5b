//! Supports of twisted complexes over F₂[x₁^±, …, x_n^±].
//!
//! For an even-rank complex the support is cut out by the N/2 × N/2 minors
//! of the differential. Its dimension is computed twice: from the tangent
//! space at (1, …, 1), and by counting torus points over GF(2^k), where a
//! point lies in the support iff the evaluated differential has rank below N/2.

mod complex;
mod gf;
mod laurent;

use thiserror::Error;

pub use complex::{
    change_basis, invert_f2, parse_complex, random_invertible, stabilize, tensor_complex, TwistedComplex,
};
pub use gf::Gf;
pub use laurent::LaurentPoly;

/// Upper limit on 2^{k·n}, the size of the space enumerated at one field degree.
pub const ENUMERATION_BUDGET: u64 = 1 << 24;

pub const DEFAULT_KMAX: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("polynomials over {0} and {1} variables")]
    VarMismatch(usize, usize),
    #[error("odd rank {0}: the support is the whole torus by parity")]
    OddRank(usize),
    #[error("the minor `{0}` does not vanish at (1, ..., 1)")]
    NotInSupport(String),
    #[error("enumerating GF(2^{k})^{n} exceeds the budget of {budget} points")]
    BudgetExceeded { k: u32, n: usize, budget: u64 },
    #[error("k_max must lie in 2..={max}, got {0}", max = gf::MAX_DEGREE)]
    BadKmax(u32),
    #[error("d² has a nonzero entry at ({0}, {1})")]
    NotADifferential(usize, usize),
    #[error("matrix is not square of the complex's rank")]
    NotSquare,
    #[error("change-of-basis matrix is singular over F₂")]
    Singular,
    #[error("variable `{0}` occurs in both factors")]
    SharedVariable(String),
    #[error("`{0}` has no inverse")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// The N/2 × N/2 minors, normalized and deduplicated.
pub fn minor_ideal(c: &TwistedComplex) -> Result<Vec<LaurentPoly>, SupportError> {
    if c.rank % 2 == 1 {
        return Err(SupportError::OddRank(c.rank));
    }
    Ok(c.minors(c.rank / 2))
}

/// Why the tangent computation can overstate the dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// A nonzero generator all of whose formal partials vanish identically
    /// (a square in characteristic two).
    SquareGenerator(String),
    /// A generator whose gradient at (1, …, 1) is zero.
    FlatGenerator(String),
    /// Both methods concluded with different values and no generator explains it.
    Disagreement,
}

/// Dimension of the tangent space at (1, …, 1) of the zero set of `gens`.
pub fn tangent_dimension(n_vars: usize, gens: &[LaurentPoly]) -> Result<usize, SupportError> {
    if let Some(f) = gens.iter().find(|f| f.at_ones()) {
        return Err(SupportError::NotInSupport(f.to_string()));
    }
    let rows: Vec<Vec<bool>> = gens.iter().map(LaurentPoly::gradient_at_ones).collect();
    Ok(n_vars - rank_f2(rows))
}

pub fn support_dim_tangent(c: &TwistedComplex) -> Result<usize, SupportError> {
    tangent_dimension(c.n_vars(), &minor_ideal(c)?)
}

/// The a-priori flag: a generator contributing nothing to the Jacobian.
pub fn tangent_degeneracy(gens: &[LaurentPoly]) -> Option<Degeneracy> {
    for f in gens.iter().filter(|f| !f.is_zero()) {
        if (0..f.n_vars).all(|i| f.derivative(i).is_zero()) {
            return Some(Degeneracy::SquareGenerator(f.to_string()));
        }
    }
    gens.iter().find(|f| f.gradient_at_ones().iter().all(|b| !b)).map(|f| Degeneracy::FlatGenerator(f.to_string()))
}

fn rank_f2(mut m: Vec<Vec<bool>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointDim {
    Dim(usize),
    /// No torus points over any field tried.
    Empty,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    /// `counts[k − 1]` points over GF(2^k).
    pub counts: Vec<u64>,
    pub estimate: PointDim,
}

/// Whether the support contains `point`, i.e. rank d(point) < N/2.
fn in_support(c: &TwistedComplex, f: &Gf, point: &[u32]) -> bool {
    let m: Vec<Vec<u32>> = c.d.iter().map(|row| row.iter().map(|p| p.eval(f, point)).collect()).collect();
    2 * f.rank(m) < c.rank
}

fn count_points(c: &TwistedComplex, k: u32, threads: usize) -> u64 {
    let f = Gf::new(k);
    let n = c.n_vars();
    let base = u64::from(f.size() - 1);
    let total = base.pow(n as u32);
    let point = |mut idx: u64| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let x = (idx % base) as u32 + 1;
                idx /= base;
                x
            })
            .collect()
    };
    let count_range = |lo: u64, hi: u64| (lo..hi).filter(|&i| in_support(c, &f, &point(i))).count() as u64;
    let threads = threads.max(1) as u64;
    if threads == 1 || total < 4096 {
        return count_range(0, total);
    }
    let chunk = total.div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let (lo, hi) = ((t * chunk).min(total), ((t + 1) * chunk).min(total));
                s.spawn(move || count_range(lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    })
}

/// Dimension from growth: log(count) against log(2^k − 1) between
/// successive degrees with points; the last two slopes must round alike.
pub fn estimate_dimension(counts: &[u64]) -> PointDim {
    let pts: Vec<(f64, f64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (((1u64 << (i + 1)) as f64 - 1.0).ln(), (c as f64).ln()))
        .collect();
    if pts.is_empty() {
        return PointDim::Empty;
    }
    if pts.len() < 2 {
        return PointDim::Inconclusive;
    }
    let slopes: Vec<f64> = pts.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect();
    let last = slopes[slopes.len() - 1];
    let r = last.round();
    let stable = slopes.len() < 2 || slopes[slopes.len() - 2].round() == r;
    let tol = if slopes.len() < 2 { 0.25 } else { 0.3 };
    if r >= 0.0 && stable && (last - r).abs() < tol {
        PointDim::Dim(r as usize)
    } else {
        PointDim::Inconclusive
    }
}

pub fn support_dim_pointcount(c: &TwistedComplex, k_max: u32) -> Result<PointCount, SupportError> {
    support_dim_pointcount_threads(c, k_max, 1)
}

pub fn support_dim_pointcount_threads(
    c: &TwistedComplex,
    k_max: u32,
    threads: usize,
) -> Result<PointCount, SupportError> {
    if !(2..=gf::MAX_DEGREE).contains(&k_max) {
        return Err(SupportError::BadKmax(k_max));
    }
    let n = c.n_vars();
    if (k_max as u64).saturating_mul(n as u64) >= 64 || 1u64 << (k_max as u64 * n as u64) > ENUMERATION_BUDGET {
        return Err(SupportError::BudgetExceeded { k: k_max, n, budget: ENUMERATION_BUDGET });
    }
    if c.rank % 2 == 1 {
        let counts = (1..=k_max).map(|k| ((1u64 << k) - 1).pow(n as u32)).collect();
        return Ok(PointCount { counts, estimate: PointDim::Dim(n) });
    }
    let counts: Vec<u64> = (1..=k_max).map(|k| count_points(c, k, threads)).collect();
    let estimate = estimate_dimension(&counts);
    Ok(PointCount { counts, estimate })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Tangent,
    Points,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub n_vars: usize,
    pub rank: usize,
    /// Odd rank: the support is everything.
    pub parity_full: bool,
    pub minor_count: usize,
    /// None when not requested or when (1, …, 1) is outside the support.
    pub dim_tangent: Option<usize>,
    pub tangent_note: Option<String>,
    pub dim_pointcount: Option<PointCount>,
    pub degeneracy: Option<Degeneracy>,
    /// False only when both methods concluded with different values.
    pub agreement: bool,
    /// Point count when conclusive, else an unflagged tangent value.
    pub dimension: Option<usize>,
}

pub fn support_report(
    c: &TwistedComplex,
    method: Method,
    k_max: u32,
    threads: usize,
) -> Result<SupportReport, SupportError> {
    let n = c.n_vars();
    let parity_full = c.rank % 2 == 1;
    let gens = if parity_full { Vec::new() } else { minor_ideal(c)? };
    let (mut dim_tangent, mut tangent_note, mut degeneracy) = (None, None, None);
    if method != Method::Points {
        if parity_full {
            dim_tangent = Some(n);
            tangent_note = Some("odd rank: support is the whole torus".into());
        } else {
            match tangent_dimension(n, &gens) {
                Ok(d) => {
                    dim_tangent = Some(d);
                    degeneracy = tangent_degeneracy(&gens);
                }
                Err(SupportError::NotInSupport(f)) => {
                    tangent_note = Some(format!("(1, ..., 1) is not in the support: `{f}` is nonzero there"));
                }
                Err(e) => return Err(e),
            }
        }
    }
    let dim_pointcount =
        if method == Method::Tangent { None } else { Some(support_dim_pointcount_threads(c, k_max, threads)?) };
    let point_dim = match dim_pointcount.as_ref().map(|p| &p.estimate) {
        Some(PointDim::Dim(d)) => Some(*d),
        _ => None,
    };
    let agreement = match (dim_tangent, point_dim) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    if !agreement && degeneracy.is_none() {
        degeneracy = Some(Degeneracy::Disagreement);
    }
    let dimension = point_dim.or(if degeneracy.is_none() { dim_tangent } else { None });
    Ok(SupportReport {
        n_vars: n,
        rank: c.rank,
        parity_full,
        minor_count: gens.len(),
        dim_tangent,
        tangent_note,
        dim_pointcount,
        degeneracy,
        agreement,
        dimension,
    })
}
