//! Dense univariate polynomials over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numbers::{to_complex, Rational};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        UPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// `t - r`
    pub fn linear_root(r: &Rational) -> Self {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + to_complex(c))
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(nd) = self.degree() else {
            return Ok((UPoly::zero(), UPoly::zero()));
        };
        if nd < dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let inv = d.leading_coeff().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UPoly::new(q), UPoly::new(r)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// True when the polynomial has no repeated complex roots.
    pub fn is_squarefree(&self) -> bool {
        if self.degree().unwrap_or(0) <= 1 {
            return true;
        }
        if modular_coprime_with_derivative(self) {
            return true;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's decomposition: `self = lc * prod f_i^i` with each `f_i` monic and squarefree.
    /// Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_squarefree() {
            return Ok(if self.is_constant() { Vec::new() } else { vec![(self.monic(), 1)] });
        }
        let mut out = Vec::new();
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0)?;
        let c = df.div_exact(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.div_exact(&a)?;
            let c = d.div_exact(&a)?;
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// Product of the distinct monic irreducible-free factors (the radical).
    pub fn squarefree_part(&self) -> Result<UPoly> {
        Ok(self
            .squarefree_decomposition()?
            .into_iter()
            .fold(UPoly::one(), |acc, (f, _)| &acc * &f))
    }

    pub fn mul_mod(&self, other: &UPoly, m: &UPoly) -> Result<UPoly> {
        (self * other).rem(m)
    }

    /// Inverse modulo `m`; `None` when `gcd(self, m)` is not constant.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m).ok()?);
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).ok()?;
            let s = &s0 - &(&q * &s1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        if !r0.is_constant() {
            return None;
        }
        s0.scale(&r0.coeff(0).recip()).rem(m).ok()
    }

    /// Sylvester resultant, by fraction-free elimination of the Sylvester matrix.
    pub fn resultant(&self, other: &UPoly) -> Rational {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Rational::zero();
        };
        if m == 0 && n == 0 {
            return Rational::one();
        }
        let size = m + n;
        let mut rows = vec![vec![Rational::zero(); size]; size];
        for i in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                rows[i][i + k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + i][i + k] = c.clone();
            }
        }
        determinant(rows)
    }
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        let piv = rows[c][c].clone();
        det *= &piv;
        let (head, tail) = rows.split_at_mut(c + 1);
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &piv;
            for (x, y) in row.iter_mut().zip(&head[c]).skip(c) {
                *x -= &f * y;
            }
        }
    }
    det
}

pub(crate) const MODULI: [u64; 3] = [0x1fff_ffff_ffff_ffff, 0xffff_ffff_ffff_ffc5, 0xffff_ffff_ffff_ff43];

pub(crate) fn mod_of(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = r.numer().mod_floor(&pb).to_u64()?;
    let d = r.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, p - 2, p), p))
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// If `f mod p` keeps its degree and is coprime to its derivative mod p for some prime,
/// then `f` is squarefree over the rationals.
fn modular_coprime_with_derivative(f: &UPoly) -> bool {
    let deg = f.degree().unwrap_or(0);
    'primes: for &p in &MODULI {
        let mut a: Vec<u64> = Vec::with_capacity(deg + 1);
        for c in &f.coeffs {
            match mod_of(c, p) {
                Some(v) => a.push(v),
                None => continue 'primes,
            }
        }
        if *a.last().unwrap() == 0 || (deg as u64) >= p {
            continue;
        }
        let mut b: Vec<u64> = a.iter().enumerate().skip(1).map(|(k, &c)| mulmod(c, k as u64 % p, p)).collect();
        trim(&mut b);
        while !b.is_empty() {
            // a <- a mod b
            let inv = powmod(*b.last().unwrap(), p - 2, p);
            while a.len() >= b.len() {
                let shift = a.len() - b.len();
                let c = mulmod(*a.last().unwrap(), inv, p);
                for (j, &bc) in b.iter().enumerate() {
                    let t = mulmod(c, bc, p);
                    a[shift + j] = (a[shift + j] + p - t) % p;
                }
                trim(&mut a);
                if a.is_empty() {
                    break;
                }
            }
            core::mem::swap(&mut a, &mut b);
        }
        return a.len() == 1;
    }
    false
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use num_traits::Signed;

    #[test]
    fn division_and_gcd() {
        let f = UPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let g = UPoly::from_ints(&[-1, 1]); // t - 1
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, UPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&UPoly::from_ints(&[1, -2, 1])), g);
        assert!(f.div_rem(&UPoly::zero()).is_err());
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^2 (t+2)^3 t
        let a = UPoly::from_ints(&[-1, 1]);
        let b = UPoly::from_ints(&[2, 1]);
        let f = &(&(&a * &a) * &(&(&b * &b) * &b)) * &UPoly::t();
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec, vec![(UPoly::t(), 1), (a.clone(), 2), (b.clone(), 3)]);
        assert!(!f.is_squarefree());
        assert!(UPoly::from_ints(&[0, -1, 0, 1]).is_squarefree());
        assert_eq!(f.squarefree_part().unwrap(), &(&a * &b) * &UPoly::t());
    }

    #[test]
    fn resultant_detects_common_roots() {
        let f = UPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(f.resultant(&UPoly::from_ints(&[-1, 1])), rat(0));
        // res(t^2 - 1, t - 2) = (2^2 - 1) up to sign
        assert_eq!(f.resultant(&UPoly::from_ints(&[-2, 1])).abs(), rat(3));
    }
}
