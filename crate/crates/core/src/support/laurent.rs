//! Laurent polynomials over F₂ as sets of exponent vectors.

use std::collections::BTreeSet;
use std::fmt;

use super::gf::Gf;
use super::SupportError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    pub n_vars: usize,
    /// Exponent vectors of the monomials with coefficient 1.
    pub terms: BTreeSet<Vec<i64>>,
}

impl LaurentPoly {
    pub fn zero(n_vars: usize) -> Self {
        LaurentPoly { n_vars, terms: BTreeSet::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::monomial(vec![0; n_vars])
    }

    pub fn monomial(exps: Vec<i64>) -> Self {
        LaurentPoly { n_vars: exps.len(), terms: BTreeSet::from([exps]) }
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self::monomial(e)
    }

    /// Builds a polynomial from exponent vectors, cancelling repeats in pairs.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let mut p = Self::zero(n_vars);
        for t in terms {
            debug_assert_eq!(t.len(), n_vars);
            p.toggle(t);
        }
        p
    }

    fn toggle(&mut self, t: Vec<i64>) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn same_ring(&self, o: &Self) -> Result<(), SupportError> {
        if self.n_vars == o.n_vars {
            Ok(())
        } else {
            Err(SupportError::VarMismatch(self.n_vars, o.n_vars))
        }
    }

    /// Sum: symmetric difference of the term sets.
    pub fn add(&self, o: &Self) -> Result<Self, SupportError> {
        self.same_ring(o)?;
        Ok(LaurentPoly { n_vars: self.n_vars, terms: self.terms.symmetric_difference(&o.terms).cloned().collect() })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SupportError> {
        self.same_ring(o)?;
        let mut p = Self::zero(self.n_vars);
        for a in &self.terms {
            for b in &o.terms {
                p.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Ok(p)
    }

    /// Power with a nonnegative exponent, or any exponent for a monomial.
    pub fn pow(&self, k: i64) -> Result<Self, SupportError> {
        if k < 0 {
            let t = match (self.is_monomial(), self.terms.first()) {
                (true, Some(t)) => t,
                _ => return Err(SupportError::NotInvertible(self.to_string())),
            };
            return Ok(Self::monomial(t.iter().map(|e| e * k).collect()));
        }
        let mut acc = Self::one(self.n_vars);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Embeds into a ring with `before` new variables in front and `total` in all.
    pub fn lift(&self, before: usize, total: usize) -> Self {
        LaurentPoly {
            n_vars: total,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let mut e = vec![0; total];
                    e[before..before + t.len()].copy_from_slice(t);
                    e
                })
                .collect(),
        }
    }

    /// The associate with every variable's least exponent at zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let low: Vec<i64> = (0..self.n_vars).map(|i| self.terms.iter().map(|t| t[i]).min().unwrap_or(0)).collect();
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|t| t.iter().zip(&low).map(|(a, b)| a - b).collect()).collect(),
        }
    }

    /// Value at (1, …, 1): the parity of the number of terms.
    pub fn at_ones(&self) -> bool {
        self.terms.len() % 2 == 1
    }

    /// Formal partial derivative in variable i: x^k ↦ k·x^{k−1}, coefficients mod 2.
    pub fn derivative(&self, i: usize) -> Self {
        LaurentPoly::from_terms(
            self.n_vars,
            self.terms.iter().filter(|t| t[i].rem_euclid(2) == 1).map(|t| {
                let mut e = t.clone();
                e[i] -= 1;
                e
            }),
        )
    }

    /// Gradient at (1, …, 1) over F₂.
    pub fn gradient_at_ones(&self) -> Vec<bool> {
        (0..self.n_vars).map(|i| self.terms.iter().filter(|t| t[i].rem_euclid(2) == 1).count() % 2 == 1).collect()
    }

    /// Value at a point of the torus over GF(2^k).
    pub fn eval(&self, f: &Gf, point: &[u32]) -> u32 {
        self.terms.iter().fold(0, |acc, t| acc ^ t.iter().zip(point).fold(1, |m, (&e, &x)| f.mul(m, f.pow(x, e))))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mons: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let factors: Vec<String> = t
                    .iter()
                    .zip(names)
                    .filter(|(e, _)| **e != 0)
                    .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
                    .collect();
                if factors.is_empty() {
                    "1".into()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        mons.join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.n_vars).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

/// Recursive-descent parser for `+`, `-`, `*`, `^`, parentheses and integers mod 2.
pub struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> ExprParser<'a> {
    pub fn parse(text: &str, vars: &'a [String]) -> Result<LaurentPoly, String> {
        let mut p = ExprParser { chars: text.chars().collect(), pos: 0, vars };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(format!("unexpected `{}` at column {}", p.chars[p.pos], p.pos + 1));
        }
        Ok(e)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, String> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            let _ = c;
            self.pos += 1;
            acc = acc.add(&self.term()?).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.exponent()?;
            return base.pow(k).map_err(|e| e.to_string());
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, String> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let k = self.exponent()?;
            if self.peek() != Some(')') {
                return Err("expected `)` after exponent".into());
            }
            self.pos += 1;
            return Ok(k);
        }
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let k = self.integer()?;
        Ok(if neg { -k } else { k })
    }

    fn integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| format!("expected an integer at column {}", start + 1))
    }

    fn atom(&mut self) -> Result<LaurentPoly, String> {
        let n = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(if k % 2 == 1 { LaurentPoly::one(n) } else { LaurentPoly::zero(n) })
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = self.vars.iter().position(|v| *v == name).ok_or(format!("unknown variable `{name}`"))?;
                Ok(LaurentPoly::var(n, i))
            }
            Some(c) => Err(format!("unexpected `{c}` at column {}", self.pos + 1)),
            None => Err("unexpected end of expression".into()),
        }
    }
}
