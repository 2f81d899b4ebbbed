//! Exact rational scalars and the conversions between exact and floating values.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `num/den`, `num`, or a signed decimal literal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = || Error::Parse(alloc::format!("invalid rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(alloc::format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = alloc::format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), fp.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = String::new();
        let _ = write!(s, "{}/{}", r.numer(), r.denom());
        s
    }
}

/// Nearest binary64 value; saturates to +-inf only when the magnitude is out of range.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn to_complex(r: &Rational) -> Complex64 {
    Complex64::new(to_f64(r), 0.0)
}

/// Exact rational value of a finite f64.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// log2 of |r|, rounded up; `None` for zero.
pub fn log2_ceil(r: &Rational) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(r.numer().bits() as i64 - r.denom().bits() as i64 + 1)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Gcd of a list of integers (zero for an empty or all-zero list).
pub fn content<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for x in it {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    g
}

/// Simplest rational approximating `x` (given as an exact dyadic value) to within `tol`,
/// searched over continued-fraction convergents with denominators below `max_den`.
pub fn rationalize(x: &Rational, tol: &Rational, max_den: &BigInt) -> Option<Rational> {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for _ in 0..4096 {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            return None;
        }
        let cand = Rational::new(h2.clone(), k2.clone());
        if (&cand - x).abs() <= *tol {
            return Some(cand);
        }
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        h0 = core::mem::replace(&mut h1, h2);
        k0 = core::mem::replace(&mut k1, k2);
    }
    None
}

/// Larger bit length of numerator and denominator.
pub(crate) fn bit_size(r: &Rational) -> u64 {
    r.numer().bits().max(r.denom().bits())
}

/// Integer vector from a rational vector by clearing denominators and removing content.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|r| r.numer() * (&den / r.denom()))
        .collect();
    let g = content(ints.iter());
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient fits in 64 bits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(format_rational(&ratio(-3, 6)), "-1/2");
        assert_eq!(format_rational(&rat(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        let x = from_f64(2.0 / 7.0).unwrap();
        let tol = ratio(1, 1_000_000_000);
        let r = rationalize(&x, &tol, &BigInt::from(1_000_000)).unwrap();
        assert_eq!(r, ratio(2, 7));
        let pi = from_f64(core::f64::consts::PI).unwrap();
        assert!(rationalize(&pi, &ratio(1, 1 << 50), &BigInt::from(1000)).is_none());
    }

    #[test]
    fn to_f64_handles_huge_values() {
        let big = Rational::new(num_traits::pow(BigInt::from(10), 400), num_traits::pow(BigInt::from(10), 399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-12);
    }
}
