//! Exact arithmetic in a real number field Q(λ) with λ pinned by an isolating interval.

pub(crate) mod poly;

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use poly::{charpoly, factor_ints, q, root_bound, sgn};
pub use poly::{QPoly, Sturm};

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("interval does not isolate exactly one root (found {0})")]
    NotIsolating(usize),
    #[error("minimal polynomial must be monic of degree at least 1")]
    NonMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("matrix is not Perron-Frobenius")]
    NotPerronFrobenius,
    #[error("malformed field text: {0}")]
    Syntax(String),
}

/// Q(λ) where λ is the unique root of `minpoly` in (lo, hi].
pub struct NumberField {
    minpoly: Vec<BigInt>,
    qpoly: QPoly,
    sturm: Sturm,
    interval: (Rational, Rational),
    refined: RwLock<(Rational, Rational)>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.declaration())
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        if self.minpoly != o.minpoly {
            return false;
        }
        let lo = (&self.interval.0).max(&o.interval.0);
        let hi = (&self.interval.1).min(&o.interval.1);
        lo < hi && self.sturm.count(lo, hi) == 1
    }
}

impl Eq for NumberField {}

pub type Field = Arc<NumberField>;

/// Validates the data and returns a shared field handle.
pub fn field_create(minpoly: &[BigInt], interval: (Rational, Rational)) -> Result<Field, FieldError> {
    if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
        return Err(FieldError::NonMonic);
    }
    let (lo, hi) = interval;
    if lo >= hi {
        return Err(FieldError::NotIsolating(0));
    }
    let qpoly = QPoly::from_ints(minpoly);
    let sturm = Sturm::new(&qpoly);
    let n = sturm.count(&lo, &hi);
    if n != 1 {
        return Err(FieldError::NotIsolating(n));
    }
    Ok(Arc::new(NumberField {
        minpoly: minpoly.to_vec(),
        qpoly,
        sturm,
        refined: RwLock::new((lo.clone(), hi.clone())),
        interval: (lo, hi),
    }))
}

/// Convenience constructor from small integers.
pub fn field_from_i64(minpoly: &[i64], lo: (i64, i64), hi: (i64, i64)) -> Result<Field, FieldError> {
    let mp: Vec<BigInt> = minpoly.iter().map(|&c| BigInt::from(c)).collect();
    let r = |(n, d): (i64, i64)| Rational::new(BigInt::from(n), BigInt::from(d));
    field_create(&mp, (r(lo), r(hi)))
}

/// The field Q itself, realised as Q(1).
pub fn rational_field() -> Field {
    field_from_i64(&[-1, 1], (1, 2), (3, 2)).expect("x - 1 isolates 1")
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn interval(&self) -> &(Rational, Rational) {
        &self.interval
    }

    /// Current (possibly refined) isolating interval.
    pub fn refined_interval(&self) -> (Rational, Rational) {
        self.refined.read().unwrap().clone()
    }

    pub fn declaration(&self) -> String {
        let c: Vec<String> = self.minpoly.iter().map(|x| x.to_string()).collect();
        format!("field minpoly = {} root in ({}, {})", c.join(" "), self.interval.0, self.interval.1)
    }

    fn halve(&self) {
        let mut g = self.refined.write().unwrap();
        let (lo, hi) = g.clone();
        let mid = (&lo + &hi) / q(2);
        if self.sturm.count(&lo, &mid) == 1 {
            *g = (lo, mid);
        } else {
            *g = (mid, hi);
        }
    }

    /// Rational value of λ when it is rational and located exactly.
    fn exact_root(&self) -> Option<Rational> {
        if self.degree() == 1 {
            return Some(-Rational::from_integer(self.minpoly[0].clone()));
        }
        let (_, hi) = self.refined_interval();
        if self.qpoly.eval(&hi).is_zero() {
            return Some(hi);
        }
        None
    }

    /// Floating approximation of λ, for display only.
    pub fn approx(&self) -> f64 {
        for _ in 0..60 {
            self.halve();
        }
        let (lo, hi) = self.refined_interval();
        let m = (lo + hi) / q(2);
        rat_to_f64(&m)
    }

    fn sign_of_poly(&self, p: &QPoly) -> i8 {
        if p.is_zero() {
            return 0;
        }
        if let Some(r) = self.exact_root() {
            return sgn(&p.eval(&r));
        }
        let g = p.gcd(&self.qpoly);
        if g.degree().unwrap_or(0) > 0 {
            let (lo, hi) = self.refined_interval();
            if Sturm::new(&g).count(&lo, &hi) == 1 {
                return 0;
            }
        }
        loop {
            let (lo, hi) = self.refined_interval();
            let (a, b) = p.eval_interval(&lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            if self.qpoly.eval(&hi).is_zero() {
                return sgn(&p.eval(&hi));
            }
            self.halve();
        }
    }

    fn reduce(&self, p: QPoly) -> Vec<Rational> {
        let r = p.rem(&self.qpoly);
        let mut c = r.0;
        c.resize(self.degree(), Rational::zero());
        c
    }
}

pub(crate) fn rat_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Element of Q(λ) in the power basis 1, λ, …, λ^{d-1}.
#[derive(Clone)]
pub struct NFElement {
    field: Field,
    coeffs: Vec<Rational>,
}

impl PartialEq for NFElement {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs && (Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field)
    }
}

impl Eq for NFElement {}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn nf_arith(op: ArithOp, a: &NFElement, b: &NFElement) -> Result<NFElement, FieldError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

pub fn nf_sign(a: &NFElement) -> i8 {
    a.sign()
}

impl NFElement {
    pub fn new(field: &Field, mut coeffs: Vec<Rational>) -> Self {
        let d = field.degree();
        if coeffs.len() > d {
            let c = field.reduce(QPoly::new(coeffs));
            return NFElement { field: field.clone(), coeffs: c };
        }
        coeffs.resize(d, Rational::zero());
        NFElement { field: field.clone(), coeffs }
    }

    pub fn from_rational(field: &Field, r: Rational) -> Self {
        Self::new(field, vec![r])
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::from_rational(field, q(n))
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, vec![])
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator λ.
    pub fn generator(field: &Field) -> Self {
        Self::new(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            self.coeffs.first()
        } else {
            None
        }
    }

    fn poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    fn same_field(&self, o: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_field(o)?;
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(NFElement { field: self.field.clone(), coeffs: c })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_field(o)?;
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Ok(NFElement { field: self.field.clone(), coeffs: c })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_field(o)?;
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Ok(Self::from_rational(&self.field, a * b));
        }
        let c = self.field.reduce(self.poly().mul(&o.poly()));
        Ok(NFElement { field: self.field.clone(), coeffs: c })
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(a) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, a.recip()));
        }
        let (g, s) = self.poly().inverse_mod(&self.field.qpoly);
        if g.degree() != Some(0) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(NFElement { field: self.field.clone(), coeffs: self.field.reduce(s) })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_field(o)?;
        self.try_mul(&o.inverse()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        NFElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of the real number this element denotes.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(a) = self.as_rational() {
            return sgn(a);
        }
        self.field.sign_of_poly(&self.poly())
    }

    pub fn cmp_value(&self, o: &Self) -> std::cmp::Ordering {
        match (self - o).sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }

    /// Matrix of multiplication by this element in the power basis (columns are images of λ^j).
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.field.degree();
        let mut m = vec![vec![Rational::zero(); d]; d];
        let mut basis = Self::one(&self.field);
        let gen = Self::generator(&self.field);
        for j in 0..d {
            let col = &basis * self;
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeffs[i].clone();
            }
            basis = &basis * &gen;
        }
        m
    }

    /// Minimal polynomial over Q, as primitive integer coefficients low-to-high.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        let cp = charpoly(&self.multiplication_matrix()).squarefree();
        for f in factor_ints(&cp.to_primitive_ints()) {
            let mut acc = Self::zero(&self.field);
            for c in f.iter().rev() {
                acc = &(&acc * self) + &Self::from_rational(&self.field, Rational::from_integer(c.clone()));
            }
            if acc.is_zero() {
                return f;
            }
        }
        cp.to_primitive_ints()
    }

    pub fn approx(&self) -> f64 {
        let l = self.field.approx();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * l + rat_to_f64(c);
        }
        acc
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&NFElement> for &NFElement {
            type Output = NFElement;
            fn $m(self, o: &NFElement) -> NFElement {
                self.$f(o).expect("operands from different fields")
            }
        }
        impl std::ops::$tr<NFElement> for NFElement {
            type Output = NFElement;
            fn $m(self, o: NFElement) -> NFElement {
                (&self).$f(&o).expect("operands from different fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Nonnegative integer square matrix, rows of entries.
pub type IntMatrix = Vec<Vec<BigInt>>;

fn boolean_positive_power(m: &IntMatrix, max_pow: usize) -> Option<usize> {
    let n = m.len();
    let b: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|x| x.is_positive()).collect()).collect();
    let mut p = b.clone();
    for k in 1..=max_pow {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return Some(k);
        }
        let mut nx = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                nx[i][j] = (0..n).any(|t| p[i][t] && b[t][j]);
            }
        }
        p = nx;
    }
    None
}

/// Largest real root of `p` strictly above `lo`, as a shrinking isolating interval.
fn isolate_largest(p: &QPoly, lo: &Rational) -> Option<(Sturm, Rational, Rational)> {
    let st = Sturm::new(p);
    let mut hi = root_bound(p);
    let mut lo = lo.clone();
    if st.count(&lo, &hi) == 0 {
        return None;
    }
    while st.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / q(2);
        if st.count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((st, lo, hi))
}

/// Dominant eigenvalue field and positive eigenvector (first entry 1) of a PF matrix.
pub fn pf_eigendata(m: &IntMatrix) -> Result<(Field, Vec<NFElement>), FieldError> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n || r.iter().any(|x| x.is_negative())) {
        return Err(FieldError::NotPerronFrobenius);
    }
    if boolean_positive_power(m, n * n).is_none() {
        return Err(FieldError::NotPerronFrobenius);
    }
    let mq: Vec<Vec<Rational>> =
        m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let cp = charpoly(&mq).squarefree();
    let mut best: Option<(Sturm, Rational, Rational, Vec<BigInt>)> = None;
    for f in factor_ints(&cp.to_primitive_ints()) {
        let fp = QPoly::from_ints(&f);
        if fp.degree() == Some(0) {
            continue;
        }
        let Some((st, mut lo, mut hi)) = isolate_largest(&fp, &Rational::zero()) else {
            continue;
        };
        if let Some((bst, blo, bhi, bf)) = best.take() {
            let (mut blo, mut bhi) = (blo, bhi);
            // shrink until the two isolating intervals are disjoint
            while lo < bhi && blo < hi {
                let mid = (&lo + &hi) / q(2);
                if st.count(&lo, &mid) == 1 {
                    hi = mid
                } else {
                    lo = mid
                }
                let bmid = (&blo + &bhi) / q(2);
                if bst.count(&blo, &bmid) == 1 {
                    bhi = bmid
                } else {
                    blo = bmid
                }
            }
            if lo >= bhi {
                best = Some((st, lo, hi, f));
            } else {
                best = Some((bst, blo, bhi, bf));
            }
        } else {
            best = Some((st, lo, hi, f));
        }
    }
    let (_, lo, hi, mut f) = best.ok_or(FieldError::NotPerronFrobenius)?;
    if f.last().is_some_and(|x| x.is_negative()) {
        f = f.into_iter().map(|x| -x).collect();
    }
    let field = field_create(&f, (lo, hi))?;
    let lam = NFElement::generator(&field);
    let mut a: Vec<Vec<NFElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = NFElement::from_rational(&field, mq[i][j].clone());
                    if i == j {
                        &e - &lam
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let v = kernel_vector(&mut a).ok_or(FieldError::NotPerronFrobenius)?;
    let inv = v[0].inverse()?;
    let v: Vec<NFElement> = v.iter().map(|x| x * &inv).collect();
    if v.iter().any(|x| x.sign() != 1) {
        return Err(FieldError::NotPerronFrobenius);
    }
    Ok((field, v))
}

/// One nonzero kernel vector of a square matrix over Q(λ), if the kernel is nontrivial.
pub fn kernel_vector(a: &mut [Vec<NFElement>]) -> Option<Vec<NFElement>> {
    let n = a.len();
    let cols = a.first()?.len();
    let field = a[0][0].field().clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inverse().ok()?;
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let t = &f * &a[row][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![NFElement::zero(&field); cols];
    v[free] = NFElement::one(&field);
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -&a[r][free];
    }
    Some(v)
}

pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::Syntax(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `field minpoly = c0 c1 … root in (lo, hi)`.
pub fn parse_field_decl(line: &str) -> Result<Field, FieldError> {
    let bad = |m: &str| FieldError::Syntax(m.to_string());
    let rest = line.trim().strip_prefix("field").ok_or_else(|| bad("expected 'field'"))?;
    let rest = rest.trim().strip_prefix("minpoly").ok_or_else(|| bad("expected 'minpoly'"))?;
    let rest = rest.trim().strip_prefix('=').ok_or_else(|| bad("expected '='"))?;
    let (coeffs, iv) = rest.split_once("root in").ok_or_else(|| bad("expected 'root in'"))?;
    let mp = coeffs
        .split_whitespace()
        .map(|t| t.parse::<BigInt>().map_err(|_| bad("bad coefficient")))
        .collect::<Result<Vec<_>, _>>()?;
    let iv = iv.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| bad("bad interval"))?;
    let (lo, hi) = iv.split_once(',').ok_or_else(|| bad("bad interval"))?;
    field_create(&mp, (parse_rational(lo)?, parse_rational(hi)?))
}

/// Parses an element literal `(c0, c1, …)`.
pub fn parse_element(field: &Field, s: &str) -> Result<NFElement, FieldError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| FieldError::Syntax(format!("bad element '{s}'")))?;
    let c = inner.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    if c.len() > field.degree() {
        return Err(FieldError::Syntax(format!("element '{s}' has too many coordinates")));
    }
    Ok(NFElement::new(field, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden2() -> Field {
        field_from_i64(&[1, -3, 1], (5, 2), (3, 1)).unwrap()
    }

    fn el(f: &Field, c: &[i64]) -> NFElement {
        NFElement::new(f, c.iter().map(|&x| q(x)).collect())
    }

    fn imat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn create_examples() {
        assert!(field_from_i64(&[-1, 1], (1, 2), (3, 2)).is_ok());
        let f = field_from_i64(&[-2, 0, 1], (-2, 1), (-1, 1)).unwrap();
        assert_eq!(NFElement::generator(&f).sign(), -1);
        assert_eq!(field_from_i64(&[1, -3, 1], (0, 1), (3, 1)).unwrap_err(), FieldError::NotIsolating(2));
        assert_eq!(field_from_i64(&[1, -3, 2], (0, 1), (3, 1)).unwrap_err(), FieldError::NonMonic);
    }

    #[test]
    fn arithmetic_examples() {
        let f = golden2();
        let l = NFElement::generator(&f);
        assert_eq!(&l * &l, el(&f, &[-1, 3]));
        assert_eq!(&l + &NFElement::zero(&f), l);
        assert_eq!(NFElement::one(&f).try_div(&l).unwrap(), el(&f, &[3, -1]));
        assert_eq!(l.try_div(&NFElement::zero(&f)).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn sign_examples() {
        let f = golden2();
        assert_eq!(el(&f, &[-2, 1]).sign(), 1);
        assert_eq!(el(&f, &[0, 0]).sign(), 0);
        assert_eq!(el(&f, &[-3, 1]).sign(), -1);
    }

    #[test]
    fn pf_examples() {
        let (f, v) = pf_eigendata(&imat(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(f.minpoly(), &[BigInt::from(1), BigInt::from(-3), BigInt::from(1)]);
        assert_eq!(v[1], el(&f, &[-2, 1]));
        let (f, v) = pf_eigendata(&imat(&[&[1]])).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(v, vec![NFElement::one(&f)]);
        let (f, v) = pf_eigendata(&imat(&[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(f.minpoly(), &[BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(v[1], NFElement::generator(&f));
        assert_eq!(pf_eigendata(&imat(&[&[0, 1], &[1, 0]])).unwrap_err(), FieldError::NotPerronFrobenius);
    }

    #[test]
    fn reducible_charpoly_picks_dominant_factor() {
        // block-free primitive matrix whose characteristic polynomial is (x - 3)(x + 1)
        let (f, _) = pf_eigendata(&imat(&[&[1, 2], &[2, 1]])).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(NFElement::generator(&f).as_rational().cloned(), Some(q(3)));
    }

    #[test]
    fn element_minimal_polynomial() {
        let f = golden2();
        let l = NFElement::generator(&f);
        let mp: Vec<i64> = l.minimal_polynomial().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(mp, vec![1, -3, 1]);
        let three = NFElement::from_int(&f, 3);
        let mp: Vec<i64> = three.minimal_polynomial().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(mp, vec![-3, 1]);
    }

    #[test]
    fn text_round_trip() {
        let f = parse_field_decl("field minpoly = 1 -3 1 root in (5/2, 3)").unwrap();
        assert_eq!(*f, *golden2());
        let e = parse_element(&f, "(-2, 1)").unwrap();
        assert_eq!(e.to_string(), "(-2, 1)");
        assert_eq!(parse_field_decl(&f.declaration()).unwrap().declaration(), f.declaration());
    }
}
