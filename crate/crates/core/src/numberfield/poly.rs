//! Dense univariate polynomials over Q, coefficients stored low-to-high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<Q>);

impl QPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| Q::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let mut c = vec![Q::zero(); n];
        for (i, x) in self.0.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.0.iter().enumerate() {
            c[i] += x;
        }
        QPoly::new(c)
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        QPoly::new(c)
    }

    pub fn scale(&self, s: &Q) -> QPoly {
        QPoly::new(self.0.iter().map(|x| x * s).collect())
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, x) in d.0.iter().enumerate() {
                    r[k + j] -= &c * x;
                }
            }
            quo[k] = c;
        }
        r.truncate(dd);
        (QPoly::new(quo), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Q::one() / l))
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s) with s·self ≡ g (mod m), g = gcd(self, m) monic.
    pub fn inverse_mod(&self, m: &QPoly) -> (QPoly, QPoly) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(Q::one()));
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            let s = s0.sub(&qt.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let l = r0.lead();
        if l.is_zero() {
            return (QPoly::zero(), QPoly::zero());
        }
        let inv = Q::one() / l;
        (r0.scale(&inv), s0.scale(&inv).rem(m))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(i, x)| x * q(i as i64)).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Tight enclosure of the polynomial over [lo, hi] via interval Horner.
    pub fn eval_interval(&self, lo: &Q, hi: &Q) -> (Q, Q) {
        let (mut a, mut b) = (Q::zero(), Q::zero());
        for c in self.0.iter().rev() {
            let p = [&a * lo, &a * hi, &b * lo, &b * hi];
            let mn = p.iter().min().unwrap().clone();
            let mx = p.iter().max().unwrap().clone();
            a = mn + c;
            b = mx + c;
        }
        (a, b)
    }

    pub fn squarefree(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.divrem(&g).0.monic()
    }

    /// Primitive integer polynomial with the same roots and positive leading coefficient.
    pub fn to_primitive_ints(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        if ints.last().is_some_and(|x| x.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Sturm chain of a polynomial, used for real-root counting.
#[derive(Clone, Debug)]
pub struct Sturm(Vec<QPoly>);

impl Sturm {
    pub fn new(p: &QPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain.retain(|c| !c.is_zero());
        Sturm(chain)
    }

    fn variations(&self, x: &Q) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.0 {
            let s = sgn(&p.eval(x));
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn count(&self, lo: &Q, hi: &Q) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

pub fn sgn(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Cauchy bound: every real root lies in (-B, B).
pub fn root_bound(p: &QPoly) -> Q {
    let l = p.lead().abs();
    let mut m = Q::zero();
    for c in &p.0[..p.0.len() - 1] {
        let a = c.abs() / &l;
        if a > m {
            m = a;
        }
    }
    m + Q::one()
}

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier, monic, low-to-high.
pub fn charpoly(a: &[Vec<Q>]) -> QPoly {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut am = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for t in 0..n {
                    if !a[i][t].is_zero() && !m[t][j].is_zero() {
                        s += &a[i][t] * &m[t][j];
                    }
                }
                am[i][j] = s;
            }
        }
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = am;
        // c_{n-k} = -tr(A M_k)/k
        let mut tr = Q::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &a[i][t] * &m[t][i];
            }
        }
        coeffs[n - k] = -tr / q(k as i64);
    }
    QPoly::new(coeffs)
}

/// Irreducible factors over Z of a primitive integer polynomial.
pub fn factor_ints(p: &[BigInt]) -> Vec<Vec<BigInt>> {
    use algebraics::polynomial::Polynomial;
    let poly: Polynomial<BigInt> = p.to_vec().into();
    poly.factor().polynomial_factors.into_iter().map(|f| f.polynomial.iter().collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, -3, 0, 2]);
        let d = p(&[1, 1]);
        let (qt, r) = a.divrem(&d);
        assert_eq!(qt.mul(&d).add(&r), a);
    }

    #[test]
    fn sturm_counts_golden_roots() {
        let s = Sturm::new(&p(&[-1, -1, 1]));
        assert_eq!(s.count(&q(-2), &q(2)), 2);
        assert_eq!(s.count(&q(1), &q(2)), 1);
    }

    #[test]
    fn charpoly_of_cat_map() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert_eq!(charpoly(&a), p(&[1, -3, 1]));
    }

    #[test]
    fn factoring_separates_linear_factors() {
        let f = factor_ints(&p(&[-1, 3, 0, -3, 1]).to_primitive_ints());
        assert_eq!(f.len(), 3);
    }
}
