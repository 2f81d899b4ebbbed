//! Univariate root isolation.
//!
//! Roots of each squarefree factor start from the eigenvalues of a (rescaled) binary64
//! companion matrix and are then polished by Aberth iterations carried out in
//! fixed-point complex arithmetic (`BigInt` mantissas over a common `2^prec` scale).
//! The high-precision values are what later back-substitution and rational recovery
//! consume; callers that only need binary64 output use [`univariate_roots`].

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{from_f64, log2_ceil, primitive_integer_vector, rationalize, to_f64, Rational};
use crate::upoly::UPoly;

/// Complex number `(re + i im) / 2^prec` with the scale carried by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
}

impl FixedComplex {
    pub fn zero() -> Self {
        FixedComplex { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        FixedComplex { re: (r.numer() << prec as usize) / r.denom(), im: BigInt::zero() }
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        let conv = |x: f64| {
            let r = from_f64(if x.is_finite() { x } else { 0.0 }).unwrap_or_else(Rational::zero);
            (r.numer() << prec as usize) / r.denom()
        };
        FixedComplex { re: conv(z.re), im: conv(z.im) }
    }

    pub fn to_c64(&self, prec: u32) -> Complex64 {
        Complex64::new(scaled_to_f64(&self.re, prec), scaled_to_f64(&self.im, prec))
    }

    pub fn re_rational(&self, prec: u32) -> Rational {
        Rational::new(self.re.clone(), BigInt::one() << prec as usize)
    }

    pub fn add(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let p = prec as usize;
        FixedComplex {
            re: (&self.re * &o.re - &self.im * &o.im) >> p,
            im: (&self.re * &o.im + &self.im * &o.re) >> p,
        }
    }

    /// Multiplication by an exact rational.
    pub fn mul_rational(&self, r: &Rational) -> Self {
        FixedComplex { re: &self.re * r.numer() / r.denom(), im: &self.im * r.numer() / r.denom() }
    }

    pub fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let p = prec as usize;
        let re = (&self.re * &o.re + &self.im * &o.im) << p;
        let im = (&self.im * &o.re - &self.re * &o.im) << p;
        Some(FixedComplex { re: re / &den, im: im / den })
    }

    pub fn shift(&self, e: i64) -> Self {
        if e >= 0 {
            FixedComplex { re: &self.re << e as usize, im: &self.im << e as usize }
        } else {
            let s = (-e) as usize;
            FixedComplex { re: &self.re >> s, im: &self.im >> s }
        }
    }

    /// Bit length of the larger component mantissa.
    pub fn mantissa_bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

fn scaled_to_f64(m: &BigInt, prec: u32) -> f64 {
    to_f64(&Rational::new(m.clone(), BigInt::one() << prec as usize))
}

/// Horner evaluation at a fixed-point argument; coefficients are pre-converted.
pub(crate) fn horner(coeffs: &[FixedComplex], z: &FixedComplex, prec: u32) -> FixedComplex {
    let mut acc = FixedComplex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c);
    }
    acc
}

/// Value and derivative at `z`.
fn horner_with_derivative(coeffs: &[FixedComplex], z: &FixedComplex, prec: u32) -> (FixedComplex, FixedComplex) {
    let mut p = FixedComplex::zero();
    let mut dp = FixedComplex::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z, prec).add(&p);
        p = p.mul(z, prec).add(c);
    }
    (p, dp)
}

/// Power-of-two root scale `2^e` with every root of the monic `f` inside `|t| <= 2^e`.
fn root_scale_exponent(f: &UPoly) -> i64 {
    let m = f.degree().unwrap_or(0);
    let lc = f.leading_coeff();
    let mut best = i64::MIN;
    for k in 1..=m {
        let a = &f.coeff(m - k) / &lc;
        if let Some(l) = log2_ceil(&a) {
            // ceil(l / k) without floating point
            let q = if l >= 0 { (l + k as i64 - 1) / k as i64 } else { l / k as i64 };
            best = best.max(q);
        }
    }
    if best == i64::MIN {
        0
    } else {
        best + 1
    }
}

/// Initial guesses from the companion matrix of the rescaled monic polynomial.
fn companion_guesses(scaled: &[f64]) -> Vec<Complex64> {
    let m = scaled.len() - 1;
    let fallback = || {
        (0..m)
            .map(|k| {
                let a = 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / m as f64;
                Complex64::from_polar(0.9, a)
            })
            .collect::<Vec<_>>()
    };
    if m == 0 {
        return Vec::new();
    }
    let mut c = DMatrix::<f64>::zeros(m, m);
    for i in 1..m {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..m {
        c[(i, m - 1)] = -scaled[i];
    }
    if c.iter().any(|x| !x.is_finite()) {
        return fallback();
    }
    match nalgebra::linalg::Schur::try_new(c, f64::EPSILON, 20_000) {
        Some(s) => {
            let ev = s.complex_eigenvalues();
            let mut out: Vec<Complex64> = ev.iter().map(|z| Complex64::new(z.re, z.im)).collect();
            if out.len() != m || out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return fallback();
            }
            // Aberth needs distinct starting points.
            for k in 0..m {
                for j in 0..k {
                    if (out[k] - out[j]).norm() < 1e-14 {
                        out[k] += Complex64::new(1e-9 * (k as f64 + 1.0), 1e-9);
                    }
                }
            }
            out
        }
        None => fallback(),
    }
}

/// All roots of a squarefree nonconstant polynomial, to about `prec` bits of absolute
/// accuracy relative to the root scale, as fixed-point values at scale `2^prec`.
pub fn squarefree_roots(f: &UPoly, prec: u32) -> Result<Vec<FixedComplex>> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 {
        return Ok(Vec::new());
    }
    if m == 1 {
        let r = -&f.coeff(0) / &f.coeff(1);
        return Ok(vec![FixedComplex::from_rational(&r, prec)]);
    }
    let e = root_scale_exponent(f);
    let lc = f.leading_coeff();
    // coefficients of f(2^e u) / (lc 2^(e m))
    let scaled: Vec<Rational> = (0..=m)
        .map(|k| {
            let shift = e * (k as i64 - m as i64);
            let c = &f.coeff(k) / &lc;
            if shift >= 0 {
                c * Rational::from_integer(BigInt::one() << shift as usize)
            } else {
                c / Rational::from_integer(BigInt::one() << (-shift) as usize)
            }
        })
        .collect();
    let guesses = companion_guesses(&scaled.iter().map(to_f64).collect::<Vec<_>>());
    // Aberth separates the roots at a moderate precision; Newton then refines each one.
    let coarse = prec.min(96 + coefficient_bits(f) + 4 * m as u32);
    let coeffs: Vec<FixedComplex> = scaled.iter().map(|c| FixedComplex::from_rational(c, coarse)).collect();
    let start: Vec<FixedComplex> = guesses.iter().map(|g| FixedComplex::from_c64(*g, coarse)).collect();
    let mut z = aberth(&coeffs, start, coarse)?;
    if coarse < prec {
        let fine: Vec<FixedComplex> = scaled.iter().map(|c| FixedComplex::from_rational(c, prec)).collect();
        let lifted: Vec<FixedComplex> = z.iter().map(|u| u.shift((prec - coarse) as i64)).collect();
        z = match newton_refine(&fine, &lifted, prec, prec - coarse / 2) {
            Some(r) => r,
            None => aberth(&fine, lifted, prec)?,
        };
    }
    Ok(z.into_iter().map(|u| u.shift(e)).collect())
}

/// Simultaneous Aberth iteration on a polynomial with roots in the unit disk.
fn aberth(coeffs: &[FixedComplex], mut z: Vec<FixedComplex>, prec: u32) -> Result<Vec<FixedComplex>> {
    let m = z.len();
    let one = FixedComplex { re: BigInt::one() << prec as usize, im: BigInt::zero() };
    // Corrections stop shrinking once they reach the evaluation noise floor; accept that
    // floor when it is still far below the root scale.
    let mut best = u64::MAX;
    let mut stalled = 0;
    for _ in 0..600 {
        let mut max_corr = 0u64;
        for k in 0..m {
            let (p, dp) = horner_with_derivative(coeffs, &z[k], prec);
            if p.re.is_zero() && p.im.is_zero() {
                continue;
            }
            let Some(w) = p.div(&dp, prec) else {
                z[k] = z[k].add(&FixedComplex { re: BigInt::one() << (prec as usize / 2), im: BigInt::zero() });
                max_corr = u64::MAX;
                continue;
            };
            let mut s = FixedComplex::zero();
            for j in 0..m {
                if j == k {
                    continue;
                }
                let diff = z[k].sub(&z[j]);
                if let Some(inv) = one.div(&diff, prec) {
                    s = s.add(&inv);
                }
            }
            let denom = one.sub(&w.mul(&s, prec));
            let corr = w.div(&denom, prec).unwrap_or(w);
            max_corr = max_corr.max(corr.mantissa_bits());
            z[k] = z[k].sub(&corr);
        }
        if max_corr <= DONE_BITS {
            return Ok(z);
        }
        if max_corr < best {
            best = max_corr;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 3 && best + 64 < prec as u64 {
                return Ok(z);
            }
        }
    }
    Err(Error::Inconsistent("root polishing did not converge".into()))
}

const DONE_BITS: u64 = 24;

/// Newton refinement of each root separately. Returns `None` if some root moves by
/// more than `2^max_move_bits` (in scaled units), which signals a poor starting value.
fn newton_refine(coeffs: &[FixedComplex], start: &[FixedComplex], prec: u32, max_move_bits: u32) -> Option<Vec<FixedComplex>> {
    let mut out = Vec::with_capacity(start.len());
    for z0 in start {
        let mut z = z0.clone();
        let mut best = u64::MAX;
        let mut stalled = 0;
        for _ in 0..200 {
            let (p, dp) = horner_with_derivative(coeffs, &z, prec);
            if p.re.is_zero() && p.im.is_zero() {
                break;
            }
            let corr = p.div(&dp, prec)?;
            let bits = corr.mantissa_bits();
            z = z.sub(&corr);
            if bits <= DONE_BITS {
                break;
            }
            if bits < best {
                best = bits;
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= 3 {
                    break;
                }
            }
        }
        if z.sub(z0).mantissa_bits() > max_move_bits as u64 {
            return None;
        }
        out.push(z);
    }
    Some(out)
}

/// Exact rational value of a fixed-point root when one fits it. Candidates are
/// convergents with denominator dividing the leading coefficient of the primitive
/// integer multiple of `f`, and are confirmed by exact evaluation.
pub fn recover_rational_root(f: &UPoly, z: &FixedComplex, prec: u32) -> Option<Rational> {
    let half = (prec / 2) as usize;
    if z.im.abs().bits() as usize > half.saturating_sub(8).max(1) && !z.im.is_zero() {
        return None;
    }
    let ints = primitive_integer_vector(f.coeffs());
    let lc = ints.last()?.abs();
    let x = z.re_rational(prec);
    let tol = Rational::new(BigInt::one(), BigInt::one() << half);
    let r = rationalize(&x, &tol, &lc)?;
    let (p, q) = (r.numer(), r.denom());
    if !(&lc % q).is_zero() {
        return None;
    }
    // q^deg f(p/q) with integer arithmetic
    let deg = ints.len() - 1;
    let mut qpow = vec![BigInt::one()];
    for k in 1..=deg {
        let next = &qpow[k - 1] * q;
        qpow.push(next);
    }
    let mut acc = ints[deg].clone();
    for k in (0..deg).rev() {
        acc = acc * p + &ints[k] * &qpow[deg - k];
    }
    acc.is_zero().then_some(r)
}

/// One root of [`univariate_roots`].
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// Present when the root is rational and was verified exactly.
    pub exact: Option<Rational>,
    /// `|s(z)| / sum |c_k| |z|^k` on the squarefree factor `s` the root belongs to.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOptions {
    pub residual_tolerance: f64,
    pub precision_bits: u32,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { residual_tolerance: 1e-12, precision_bits: 256 }
    }
}

/// All complex roots with multiplicities; multiplicities sum to the degree.
pub fn univariate_roots(p: &UPoly, opts: &RootOptions) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition()? {
        let prec = opts.precision_bits.max(64) + coefficient_bits(&factor);
        for z in squarefree_roots(&factor, prec)? {
            let exact = recover_rational_root(&factor, &z, prec);
            let value = match &exact {
                Some(r) => Complex64::new(to_f64(r), 0.0),
                None => z.to_c64(prec),
            };
            let residual = if exact.is_some() { 0.0 } else { relative_residual(&factor, value) };
            if residual > opts.residual_tolerance {
                return Err(Error::Inconsistent(alloc::format!(
                    "root residual {residual:e} above tolerance {:e}",
                    opts.residual_tolerance
                )));
            }
            out.push(Root { value, multiplicity: mult, exact, residual });
        }
    }
    out.sort_by(|a, b| {
        a.value
            .re
            .partial_cmp(&b.value.re)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.value.im.partial_cmp(&b.value.im).unwrap_or(core::cmp::Ordering::Equal))
    });
    Ok(out)
}

pub fn relative_residual(f: &UPoly, z: Complex64) -> f64 {
    let v = f.eval_complex(z).norm();
    let s: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| to_f64(c).abs() * z.norm().powi(k as i32))
        .sum();
    if s > 0.0 {
        v / s
    } else {
        v
    }
}

/// Largest coefficient size in bits (numerator or denominator).
pub(crate) fn coefficient_bits(f: &UPoly) -> u32 {
    f.coeffs().iter().map(crate::numbers::bit_size).max().unwrap_or(0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    #[test]
    fn t_squared_minus_one() {
        let r = univariate_roots(&UPoly::from_ints(&[-1, 0, 1]), &RootOptions::default()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].exact, Some(rat(-1)));
        assert_eq!(r[1].exact, Some(rat(1)));
        assert!(r.iter().all(|x| x.multiplicity == 1));
    }

    #[test]
    fn double_root() {
        let r = univariate_roots(&UPoly::from_ints(&[1, -2, 1]), &RootOptions::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert_eq!(r[0].exact, Some(rat(1)));
    }

    #[test]
    fn cubic_from_fermat_chart() {
        let r = univariate_roots(&UPoly::from_ints(&[0, -1, 0, 1]), &RootOptions::default()).unwrap();
        let exact: Vec<_> = r.iter().map(|x| x.exact.clone().unwrap()).collect();
        assert_eq!(exact, vec![rat(-1), rat(0), rat(1)]);
    }

    #[test]
    fn complex_and_irrational_roots() {
        // t^4 + 1 and t^2 - 2
        let r = univariate_roots(&UPoly::from_ints(&[1, 0, 0, 0, 1]), &RootOptions::default()).unwrap();
        assert_eq!(r.len(), 4);
        for x in &r {
            assert!((x.value.norm() - 1.0).abs() < 1e-14);
            assert!(x.exact.is_none());
        }
        let r = univariate_roots(&UPoly::from_ints(&[-2, 0, 1]), &RootOptions::default()).unwrap();
        assert!((r[1].value.re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(univariate_roots(&UPoly::zero(), &RootOptions::default()).is_err());
    }

    #[test]
    fn wilkinson_twenty() {
        let mut p = UPoly::one();
        for k in 1..=20 {
            p = &p * &UPoly::from_ints(&[-k, 1]);
        }
        let r = univariate_roots(&p, &RootOptions::default()).unwrap();
        let exact: Vec<_> = r.iter().map(|x| x.exact.clone().unwrap()).collect();
        assert_eq!(exact, (1..=20).map(rat).collect::<Vec<_>>());
    }
}
