//! Arithmetic in `Q[t]/(m)` with integer numerators over a shared denominator.
//!
//! Rational coefficient arithmetic normalizes by a gcd at every operation, which
//! dominates the cost once coefficients reach thousands of bits. Here an element is an
//! integer vector with one denominator, products are plain integer convolutions, and
//! reduction is a pseudo-remainder against the primitive integer multiple of `m`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{common_denominator, Rational};
use crate::poly::Poly;
use crate::upoly::{mod_of, mulmod, powmod, UPoly, MODULI};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: UPoly,
    /// Primitive integer multiple of the modulus, lowest degree first.
    m: Vec<BigInt>,
    deg: usize,
}

impl ResidueRing {
    pub fn new(modulus: &UPoly) -> Result<Self> {
        let deg = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        let m = crate::numbers::primitive_integer_vector(modulus.coeffs());
        Ok(ResidueRing { modulus: modulus.clone(), m, deg })
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn zero(&self) -> Residue {
        Residue { num: vec![BigInt::zero(); self.deg], den: BigInt::one() }
    }

    pub fn one(&self) -> Residue {
        self.constant(&Rational::one())
    }

    pub fn constant(&self, c: &Rational) -> Residue {
        let mut r = self.zero();
        if self.deg == 0 {
            return r;
        }
        r.num[0] = c.numer().clone();
        r.den = c.denom().clone();
        r
    }

    pub fn from_upoly(&self, p: &UPoly) -> Result<Residue> {
        let den = common_denominator(p.coeffs());
        let num: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(self.reduce(num, den))
    }

    pub fn to_upoly(&self, r: &Residue) -> UPoly {
        UPoly::new(r.num.iter().map(|c| Rational::new(c.clone(), r.den.clone())).collect())
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        normalize(Residue { num, den: &a.den * &b.den })
    }

    pub fn scale(&self, a: &Residue, c: &Rational) -> Residue {
        let num = a.num.iter().map(|x| x * c.numer()).collect();
        let mut r = normalize(Residue { num, den: &a.den * c.denom() });
        if r.den.is_negative() {
            r.den = -r.den;
            r.num.iter_mut().for_each(|x| *x = -core::mem::take(x));
        }
        r
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut prod = vec![BigInt::zero(); 2 * self.deg];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod, &a.den * &b.den)
    }

    /// Pseudo-remainder of `num / den` by `m`, then content removal.
    fn reduce(&self, mut num: Vec<BigInt>, mut den: BigInt) -> Residue {
        let lc = &self.m[self.deg];
        while num.len() > self.deg {
            let top = num.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = num.len() - self.deg;
            let g = top.gcd(lc);
            let a = lc / &g;
            let b = &top / &g;
            if !a.is_one() {
                num.iter_mut().for_each(|x| *x *= &a);
                den *= &a;
            }
            for (k, mk) in self.m[..self.deg].iter().enumerate() {
                if !mk.is_zero() {
                    num[shift + k] -= &b * mk;
                }
            }
        }
        num.resize(self.deg, BigInt::zero());
        normalize(Residue { num, den })
    }
}

fn normalize(mut r: Residue) -> Residue {
    if r.is_zero() {
        r.den = BigInt::one();
        return r;
    }
    let mut g = r.den.abs();
    for x in &r.num {
        if g.is_one() {
            return r;
        }
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if !g.is_one() {
        r.num.iter_mut().for_each(|x| *x = &*x / &g);
        r.den = &r.den / &g;
    }
    r
}

/// Values of monomials and polynomials at a point of `(Q[t]/(m))^k`. Each monomial is
/// computed once, from the value of a monomial of one lower degree.
pub struct MonomialValues<'a> {
    ring: &'a ResidueRing,
    point: &'a [Residue],
    memo: BTreeMap<Vec<u32>, Residue>,
}

impl<'a> MonomialValues<'a> {
    pub fn new(ring: &'a ResidueRing, point: &'a [Residue]) -> Self {
        MonomialValues { ring, point, memo: BTreeMap::new() }
    }

    pub fn monomial(&mut self, e: &[u32]) -> Residue {
        if let Some(r) = self.memo.get(e) {
            return r.clone();
        }
        let r = match e.iter().rposition(|&x| x > 0) {
            None => self.ring.one(),
            Some(v) => {
                let mut lower = e.to_vec();
                lower[v] -= 1;
                let base = self.monomial(&lower);
                self.ring.mul(&base, &self.point[v])
            }
        };
        self.memo.insert(e.to_vec(), r.clone());
        r
    }

    pub fn poly(&mut self, p: &Poly) -> Residue {
        let mut acc = self.ring.zero();
        for (m, c) in p.terms() {
            let v = self.monomial(m.exponents());
            acc = self.ring.add(&acc, &self.ring.scale(&v, c));
        }
        acc
    }
}

/// Checks `p(coords(t)) = 0 mod m` modulo a 61-bit or 64-bit prime. Returns `None` when
/// every prime divides some denominator or the leading coefficient of `m`.
pub fn vanishes_modular(polys: &[Poly], coords: &[UPoly], m: &UPoly) -> Option<bool> {
    'primes: for &q in &MODULI {
        let reduce = |u: &UPoly| -> Option<Vec<u64>> { u.coeffs().iter().map(|c| mod_of(c, q)).collect() };
        let Some(mut mm) = reduce(m) else { continue };
        let &lead = mm.last()?;
        if lead == 0 {
            continue;
        }
        let inv = powmod(lead, q - 2, q);
        mm.iter_mut().for_each(|c| *c = mulmod(*c, inv, q));
        let mut hs = Vec::with_capacity(coords.len());
        for h in coords {
            let Some(v) = reduce(h) else { continue 'primes };
            hs.push(rem_monic(v, &mm, q));
        }
        for p in polys {
            let maxdeg = p.total_degree().unwrap_or(0) as usize;
            let powers: Vec<Vec<Vec<u64>>> = hs
                .iter()
                .map(|h| {
                    let mut row = vec![vec![1u64]];
                    for k in 1..=maxdeg {
                        let next = rem_monic(mul_poly(&row[k - 1], h, q), &mm, q);
                        row.push(next);
                    }
                    row
                })
                .collect();
            let mut acc = vec![0u64; mm.len() - 1];
            for (mono, c) in p.terms() {
                let Some(c) = mod_of(c, q) else { continue 'primes };
                let mut term = vec![c];
                for (v, &e) in mono.exponents().iter().enumerate() {
                    if e > 0 {
                        term = rem_monic(mul_poly(&term, &powers[v][e as usize], q), &mm, q);
                    }
                }
                for (a, t) in acc.iter_mut().zip(term) {
                    *a = (*a + t) % q;
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return Some(false);
            }
        }
        return Some(true);
    }
    None
}

fn mul_poly(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % q as u128;
        }
    }
    out.into_iter().map(|x| x as u64).collect()
}

/// Remainder modulo a monic polynomial, padded to `deg m` coefficients.
fn rem_monic(mut a: Vec<u64>, m: &[u64], q: u64) -> Vec<u64> {
    let d = m.len() - 1;
    while a.len() > d {
        let top = a.pop().expect("nonempty");
        if top == 0 {
            continue;
        }
        let shift = a.len() - d;
        for k in 0..d {
            let t = mulmod(top, m[k], q);
            a[shift + k] = (a[shift + k] + q - t) % q;
        }
    }
    a.resize(d, 0);
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, ratio};

    #[test]
    fn agrees_with_rational_mul_mod() {
        let m = UPoly::new(vec![ratio(3, 7), rat(-2), ratio(1, 5), rat(1)]);
        let a = UPoly::new(vec![ratio(1, 2), ratio(-4, 3), rat(5)]);
        let b = UPoly::new(vec![ratio(9, 4), rat(0), ratio(2, 11)]);
        let ring = ResidueRing::new(&m).unwrap();
        let prod = ring.mul(&ring.from_upoly(&a).unwrap(), &ring.from_upoly(&b).unwrap());
        assert_eq!(ring.to_upoly(&prod), a.mul_mod(&b, &m).unwrap());
        let sum = ring.add(&ring.from_upoly(&a).unwrap(), &ring.from_upoly(&b).unwrap());
        assert_eq!(ring.to_upoly(&sum), (&a + &b).rem(&m).unwrap());
    }

    #[test]
    fn square_root_of_two() {
        let ring = ResidueRing::new(&UPoly::from_ints(&[-2, 0, 1])).unwrap();
        let t = ring.from_upoly(&UPoly::t()).unwrap();
        assert_eq!(ring.to_upoly(&ring.mul(&t, &t)), UPoly::constant(rat(2)));
    }

    #[test]
    fn modular_vanishing() {
        // (t, t + 1) on t^2 = 2 satisfies y - x - 1 and x^2 - 2 but not x y - 2
        let m = UPoly::from_ints(&[-2, 0, 1]);
        let coords = [UPoly::t(), UPoly::from_ints(&[1, 1])];
        let good = [Poly::parse(2, "x1 - x0 - 1").unwrap(), Poly::parse(2, "x0^2 - 2").unwrap()];
        assert_eq!(vanishes_modular(&good, &coords, &m), Some(true));
        assert_eq!(vanishes_modular(&[Poly::parse(2, "x0 x1 - 2").unwrap()], &coords, &m), Some(false));
    }
}
