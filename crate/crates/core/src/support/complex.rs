//! Square matrices over F₂[x₁^±, …, x_n^±] squaring to zero, and the
//! constructions that should not change their support.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;

use super::laurent::{ExprParser, LaurentPoly};
use super::SupportError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub vars: Vec<String>,
    pub rank: usize,
    /// `d[i][j]` is the coefficient of generator i in the differential of generator j.
    pub d: Vec<Vec<LaurentPoly>>,
}

impl TwistedComplex {
    pub fn new(vars: Vec<String>, d: Vec<Vec<LaurentPoly>>) -> Result<Self, SupportError> {
        let rank = d.len();
        let n = vars.len();
        for row in &d {
            if row.len() != rank {
                return Err(SupportError::NotSquare);
            }
            if let Some(p) = row.iter().find(|p| p.n_vars != n) {
                return Err(SupportError::VarMismatch(p.n_vars, n));
            }
        }
        let c = TwistedComplex { vars, rank, d };
        c.check_differential()?;
        Ok(c)
    }

    pub fn zero(vars: Vec<String>, rank: usize) -> Self {
        let n = vars.len();
        TwistedComplex { vars, rank, d: vec![vec![LaurentPoly::zero(n); rank]; rank] }
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    fn square(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.n_vars();
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        (0..self.rank).fold(LaurentPoly::zero(n), |acc, k| {
                            acc.add(&self.d[i][k].mul(&self.d[k][j]).expect("same ring")).expect("same ring")
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn check_differential(&self) -> Result<(), SupportError> {
        for (i, row) in self.square().iter().enumerate() {
            if let Some(j) = row.iter().position(|p| !p.is_zero()) {
                return Err(SupportError::NotADifferential(i, j));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("ring vars = {}\nrank {}\n", self.vars.join(", "), self.rank);
        for (i, row) in self.d.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    s += &format!("d[{i}][{j}] = {}\n", p.fmt_with(&self.vars));
                }
            }
        }
        s
    }

    /// Every `size × size` minor, normalized to a polynomial with no monomial
    /// factor, zeros and duplicates removed.
    pub fn minors(&self, size: usize) -> Vec<LaurentPoly> {
        let n = self.n_vars();
        let mut memo: HashMap<(u64, u64), LaurentPoly> = HashMap::new();
        let mut out = BTreeSet::new();
        for rows in subsets(self.rank, size) {
            for cols in subsets(self.rank, size) {
                let m = self.minor(rows, cols, n, &mut memo);
                if !m.is_zero() {
                    out.insert(m.normalized());
                }
            }
        }
        out.into_iter().collect()
    }

    /// Laplace expansion along the lowest row, sharing sub-minors through `memo`.
    /// Signs are irrelevant in characteristic two.
    fn minor(&self, rows: u64, cols: u64, n: usize, memo: &mut HashMap<(u64, u64), LaurentPoly>) -> LaurentPoly {
        if rows == 0 {
            return LaurentPoly::one(n);
        }
        if let Some(p) = memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let mut acc = LaurentPoly::zero(n);
        let mut rest = cols;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let entry = &self.d[r][c];
            if entry.is_zero() {
                continue;
            }
            let sub = self.minor(rows & !(1 << r), cols & !(1 << c), n, memo);
            if !sub.is_zero() {
                acc = acc.add(&entry.mul(&sub).expect("same ring")).expect("same ring");
            }
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }
}

/// Bitmasks of the `size`-element subsets of {0, …, n−1}, in increasing order.
fn subsets(n: usize, size: usize) -> impl Iterator<Item = u64> {
    (0u64..1 << n).filter(move |m| m.count_ones() as usize == size)
}

/// Reads `ring vars = …`, `rank N` and `d[i][j] = expr` lines; `#` starts a comment.
pub fn parse_complex(text: &str) -> Result<TwistedComplex, SupportError> {
    let err = |line: usize, msg: String| SupportError::Parse(format!("line {line}: {msg}"));
    let mut vars: Option<Vec<String>> = None;
    let mut rank: Option<usize> = None;
    let mut entries = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring") {
            let rest = rest.trim().strip_prefix("vars").map(str::trim).and_then(|r| r.strip_prefix('='));
            let rest = rest.ok_or_else(|| err(no, "expected `ring vars = ...`".into()))?;
            let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            let valid = |s: &String| {
                s.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                    && s.chars().all(|c| c.is_alphanumeric() || c == '_')
            };
            if let Some(bad) = names.iter().find(|s| !valid(s)) {
                return Err(err(no, format!("bad variable name `{bad}`")));
            }
            if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
                return Err(err(no, "repeated variable name".into()));
            }
            vars = Some(names);
        } else if let Some(rest) = line.strip_prefix("rank") {
            rank = Some(rest.trim().parse().map_err(|_| err(no, format!("bad rank `{}`", rest.trim())))?);
        } else if line.starts_with("d[") {
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(no, "expected `=`".into()))?;
            let idx: Vec<&str> =
                lhs.trim().trim_start_matches('d').split(['[', ']']).filter(|s| !s.trim().is_empty()).collect();
            let parsed: Vec<usize> = idx.iter().filter_map(|s| s.trim().parse().ok()).collect();
            if idx.len() != 2 || parsed.len() != 2 {
                return Err(err(no, format!("bad entry `{}`", lhs.trim())));
            }
            entries.push((no, parsed[0], parsed[1], rhs.trim().to_string()));
        } else {
            return Err(err(no, format!("unrecognized line `{line}`")));
        }
    }
    let vars = vars.ok_or_else(|| SupportError::Parse("missing `ring vars = ...` line".into()))?;
    let rank = rank.ok_or_else(|| SupportError::Parse("missing `rank` line".into()))?;
    if rank > 16 {
        return Err(SupportError::Parse(format!("rank {rank} exceeds the supported maximum of 16")));
    }
    let mut c = TwistedComplex::zero(vars, rank);
    for (no, i, j, expr) in entries {
        if i >= rank || j >= rank {
            return Err(err(no, format!("entry ({i}, {j}) outside rank {rank}")));
        }
        let p = ExprParser::parse(&expr, &c.vars).map_err(|m| err(no, m))?;
        c.d[i][j] = c.d[i][j].add(&p)?;
    }
    c.check_differential()?;
    Ok(c)
}

/// d₁⊗I + I⊗d₂ on the tensor product, generator (a, b) at index a·N₂ + b.
pub fn tensor_complex(c1: &TwistedComplex, c2: &TwistedComplex) -> Result<TwistedComplex, SupportError> {
    if let Some(v) = c1.vars.iter().find(|v| c2.vars.contains(v)) {
        return Err(SupportError::SharedVariable(v.clone()));
    }
    let (n1, n2) = (c1.n_vars(), c2.n_vars());
    let n = n1 + n2;
    let (r1, r2) = (c1.rank, c2.rank);
    let mut out = TwistedComplex::zero(c1.vars.iter().chain(&c2.vars).cloned().collect(), r1 * r2);
    for a in 0..r1 {
        for b in 0..r2 {
            let j = a * r2 + b;
            for a2 in 0..r1 {
                if !c1.d[a2][a].is_zero() {
                    out.d[a2 * r2 + b][j] = c1.d[a2][a].lift(0, n);
                }
            }
            for b2 in 0..r2 {
                if !c2.d[b2][b].is_zero() {
                    let i = a * r2 + b2;
                    out.d[i][j] = out.d[i][j].add(&c2.d[b2][b].lift(n1, n))?;
                }
            }
        }
    }
    Ok(out)
}

/// Direct sum with the acyclic pair 0 → F₂ ≅ F₂ → 0.
pub fn stabilize(c: &TwistedComplex) -> TwistedComplex {
    let n = c.n_vars();
    let r = c.rank;
    let mut out = TwistedComplex::zero(c.vars.clone(), r + 2);
    for i in 0..r {
        out.d[i][..r].clone_from_slice(&c.d[i]);
    }
    out.d[r][r + 1] = LaurentPoly::one(n);
    out
}

/// Inverse of a matrix over F₂, if it exists.
pub fn invert_f2(p: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = p.len();
    let mut m: Vec<Vec<bool>> =
        p.iter().enumerate().map(|(i, row)| row.iter().copied().chain((0..n).map(|j| i == j)).collect()).collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| m[i][c])?;
        m.swap(c, piv);
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// P·d·P⁻¹ for an invertible scalar matrix P.
pub fn change_basis(c: &TwistedComplex, p: &[Vec<bool>]) -> Result<TwistedComplex, SupportError> {
    if p.len() != c.rank || p.iter().any(|r| r.len() != c.rank) {
        return Err(SupportError::NotSquare);
    }
    let inv = invert_f2(p).ok_or(SupportError::Singular)?;
    let n = c.n_vars();
    let r = c.rank;
    let scale = |a: &[Vec<LaurentPoly>], left: &[Vec<bool>], right: &[Vec<bool>]| -> Vec<Vec<LaurentPoly>> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero(n);
                        for k in (0..r).filter(|&k| left[i][k]) {
                            for l in (0..r).filter(|&l| right[l][j]) {
                                acc = acc.add(&a[k][l]).expect("same ring");
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    Ok(TwistedComplex { vars: c.vars.clone(), rank: r, d: scale(&c.d, p, &inv) })
}

/// A uniformly random invertible matrix over F₂, by rejection.
pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<bool>> {
    loop {
        let p: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| rng.gen()).collect()).collect();
        if invert_f2(&p).is_some() {
            return p;
        }
    }
}
