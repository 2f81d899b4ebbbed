//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic with `x0 > x1 > ... > xn`. Zero coefficients are never stored.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{format_rational, parse_rational, to_complex, Rational};

/// Exponent vector of a monomial in `x0, ..., xn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::one();
        for (x, &e) in point.iter().zip(&self.0) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        acc
    }

    pub fn evaluate_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (x, &e) in point.iter().zip(&self.0) {
            for _ in 0..e {
                acc *= x;
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `deg` in `nvars` variables, in descending graded lex order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, 0, deg, &mut vec![0; nvars], &mut out);
    out
}

/// Sparse polynomial over the rationals in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_i`. Panics if `i >= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn monomial(mono: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(mono.nvars());
        p.add_term(mono, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        debug_assert_eq!(mono.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree if every term has the same total degree; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: len });
        }
        Ok(())
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        self.check_point(point.len())?;
        Ok(self
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.evaluate(point)))
    }

    pub fn evaluate_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        self.check_point(point.len())?;
        Ok(self
            .terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, (m, c)| acc + to_complex(c) * m.evaluate_complex(point)))
    }

    /// `sum |c_a| |x^a|`, the natural scale for a backward-error residual.
    pub fn evaluate_abs(&self, point: &[Complex64]) -> Result<f64> {
        self.check_point(point.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| to_complex(c).norm() * m.evaluate_complex(point).norm())
            .sum())
    }

    /// `|p(x)| / sum |c_a x^a|`; zero when the polynomial vanishes identically.
    pub fn relative_residual(&self, point: &[Complex64]) -> Result<f64> {
        let v = self.evaluate_complex(point)?.norm();
        let s = self.evaluate_abs(point)?;
        Ok(if s > 0.0 { v / s } else { v })
    }

    /// Sum of absolute coefficient values.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.values().map(|c| crate::numbers::to_f64(&c.abs())).sum()
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, len: self.nvars });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Substitutes `Some(value)` entries and keeps the `None` variables, in order, as the
    /// variables of the result.
    pub fn substitute(&self, values: &[Option<Rational>]) -> Result<Poly> {
        self.check_point(values.len())?;
        let keep: Vec<usize> = (0..self.nvars).filter(|&i| values[i].is_none()).collect();
        let mut out = Poly::zero(keep.len());
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    let e = m.0[i];
                    if e > 0 {
                        coef *= num_traits::pow(v.clone(), e as usize);
                    }
                }
            }
            let exps = keep.iter().map(|&i| m.0[i]).collect();
            out.add_term(Monomial(exps), coef);
        }
        Ok(out)
    }

    /// Renames variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Parses the text format `c * x0^a0 x1^a1 ... + ...`.
    pub fn parse(nvars: usize, text: &str) -> Result<Poly> {
        let mut p = Poly::zero(nvars);
        let s: Vec<char> = text.chars().collect();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < s.len() && s[*i].is_whitespace() {
                *i += 1;
            }
        };
        let mut first = true;
        loop {
            skip_ws(&mut i);
            if i >= s.len() {
                if first {
                    return Err(Error::Parse("empty polynomial".into()));
                }
                break;
            }
            let mut negative = false;
            if s[i] == '+' || s[i] == '-' {
                negative = s[i] == '-';
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(Error::Parse(alloc::format!("expected `+` or `-` at offset {i}")));
            }
            first = false;
            // coefficient
            let start = i;
            while i < s.len() && (s[i].is_ascii_digit() || s[i] == '/' || s[i] == '.') {
                i += 1;
            }
            let mut coef = if i > start {
                let lit: String = s[start..i].iter().collect();
                parse_rational(&lit)?
            } else {
                Rational::one()
            };
            if negative {
                coef = -coef;
            }
            let mut exps = vec![0u32; nvars];
            loop {
                skip_ws(&mut i);
                if i < s.len() && s[i] == '*' {
                    i += 1;
                    skip_ws(&mut i);
                }
                if i < s.len() && s[i] == 'x' {
                    i += 1;
                    let st = i;
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    let idx: usize = s[st..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| Error::Parse(alloc::format!("bad variable at offset {st}")))?;
                    if idx >= nvars {
                        return Err(Error::IndexOutOfRange { index: idx, len: nvars });
                    }
                    skip_ws(&mut i);
                    let mut e = 1u32;
                    if i < s.len() && s[i] == '^' {
                        i += 1;
                        skip_ws(&mut i);
                        let st = i;
                        while i < s.len() && s[i].is_ascii_digit() {
                            i += 1;
                        }
                        e = s[st..i]
                            .iter()
                            .collect::<String>()
                            .parse()
                            .map_err(|_| Error::Parse(alloc::format!("bad exponent at offset {st}")))?;
                    }
                    exps[idx] += e;
                } else {
                    break;
                }
            }
            if i == start {
                return Err(Error::Parse(alloc::format!("expected a term at offset {i}")));
            }
            p.add_term(Monomial(exps), coef);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    /// Text format, terms in descending graded lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}", format_rational(&c.abs()))?;
            let mut star = false;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !star {
                    write!(f, " *")?;
                    star = true;
                }
                write!(f, " x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, ratio};
    use alloc::string::ToString;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn fermat3() -> Poly {
        (0..4).fold(Poly::zero(4), |acc, i| &acc + &x(4, i).pow(3))
    }

    #[test]
    fn evaluate_examples() {
        let p = &x(4, 0).pow(2) + &x(4, 1).pow(2);
        assert_eq!(p.evaluate(&[rat(1), rat(1), rat(0), rat(0)]).unwrap(), rat(2));
        assert_eq!(fermat3().evaluate(&[rat(1), rat(1), rat(1), rat(1)]).unwrap(), rat(4));
        let z = &(&x(4, 0) * &x(4, 1)) - &(&x(4, 1) * &x(4, 0));
        assert!(z.is_zero());
        assert_eq!(z.evaluate(&[rat(3), rat(-2), ratio(1, 2), rat(7)]).unwrap(), rat(0));
        assert!(matches!(p.evaluate(&[rat(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn derivative_examples() {
        let d0 = fermat3().partial_derivative(0).unwrap();
        assert_eq!(d0, x(4, 0).pow(2).scale(&rat(3)));
        assert!(x(4, 0).pow(2).partial_derivative(1).unwrap().is_zero());
        assert!(matches!(fermat3().partial_derivative(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn parse_display_round_trip() {
        let p = Poly::parse(3, "3/2 * x0^2 x1^1 - x2^3 + 5").unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 1, 0])), ratio(3, 2));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 0, 3])), rat(-1));
        assert_eq!(Poly::parse(3, &p.to_string()).unwrap(), p);
        assert_eq!(Poly::parse(2, "x0*x1 + 2*x1^2").unwrap().len(), 2);
        assert!(Poly::parse(2, "x2").is_err());
        assert!(Poly::parse(2, "").is_err());
        assert_eq!(Poly::zero(2).to_string(), "0");
    }

    #[test]
    fn monomial_enumeration_is_graded_lex_descending() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].exponents(), &[2, 0, 0]);
        assert_eq!(ms[5].exponents(), &[0, 0, 2]);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
    }

    #[test]
    fn substitute_dehomogenizes() {
        let p = Poly::parse(3, "x0^2 + x0 x1 - x2^2").unwrap();
        let q = p.substitute(&[Some(rat(1)), None, None]).unwrap();
        assert_eq!(q, Poly::parse(2, "1 + x0 - x1^2").unwrap());
    }
}
