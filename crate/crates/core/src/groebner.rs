//! Buchberger's algorithm over the integers in degree reverse lexicographic order.
//!
//! Polynomials are kept primitive (content one, positive leading coefficient) and
//! reductions are fraction-free. Pairs are chosen by the sugar strategy and pruned
//! with the Gebauer–Möller criteria. The module also provides the quotient-ring view
//! of a zero-dimensional ideal: the staircase of standard monomials and exact normal
//! forms over the rationals.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{common_denominator, content, Rational};
use crate::poly::Poly;

/// Most variables a solver system may have.
pub const MAX_VARS: usize = 8;

/// Exponent vector packed for fast comparison in degree reverse lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    deg: u16,
    e: [u8; MAX_VARS],
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Mono::default();
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidArgument(alloc::format!("at most {MAX_VARS} variables")));
        }
        let mut m = Mono::default();
        for (i, &x) in exps.iter().enumerate() {
            m.e[i] = u8::try_from(x).map_err(|_| Error::InvalidArgument("exponent above 255".into()))?;
            m.deg += x as u16;
        }
        Ok(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.e[i] -= self.e[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut m = Mono::default();
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].max(o.e[i]);
            m.deg += m.e[i] as u16;
        }
        m
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    /// Pure power of variable `i`, if it is one.
    pub fn pure_power_of(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&i| self.e[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&x| x as u32).collect()
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                match self.e[i].cmp(&o.e[i]) {
                    Ordering::Equal => continue,
                    other => return other.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial with integer coefficients, terms sorted by decreasing monomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IPoly {
    terms: Vec<(Mono, BigInt)>,
}

impl IPoly {
    pub fn zero() -> Self {
        IPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.deg == 0
    }

    /// Clears denominators of a rational polynomial. Fails beyond [`MAX_VARS`] variables.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        let den = common_denominator(p.terms().map(|(_, c)| c));
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            terms.push((Mono::from_exponents(m.exponents())?, c.numer() * (&den / c.denom())));
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out = IPoly { terms };
        out.make_primitive();
        Ok(out)
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (m.exponents(nvars), Rational::from_integer(c.clone()))),
        )
        .expect("exponent length matches")
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = content(self.terms.iter().map(|(_, c)| c));
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    /// `a * self - b * shift * g`, where the leading terms are known to cancel.
    fn sub_scaled(&self, a: &BigInt, g: &IPoly, b: &BigInt, shift: &Mono) -> IPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (1, 1);
        let (s, t) = (&self.terms, &g.terms);
        while i < s.len() || j < t.len() {
            let gm = (j < t.len()).then(|| t[j].0.mul(shift));
            match (i < s.len(), gm) {
                (true, Some(m)) => match s[i].0.cmp(&m) {
                    Ordering::Greater => {
                        out.push((s[i].0, a * &s[i].1));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((m, -(b * &t[j].1)));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = a * &s[i].1 - b * &t[j].1;
                        if !c.is_zero() {
                            out.push((m, c));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (true, None) => {
                    out.push((s[i].0, a * &s[i].1));
                    i += 1;
                }
                (false, Some(m)) => {
                    out.push((m, -(b * &t[j].1)));
                    j += 1;
                }
                (false, None) => unreachable!(),
            }
        }
        IPoly { terms: out }
    }
}

struct Basis {
    polys: Vec<IPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

impl Basis {
    fn reducer_for(&self, m: &Mono) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, g) in self.polys.iter().enumerate() {
            if self.active[k] && g.lm().divides(m) {
                match best {
                    Some(b) if self.polys[b].terms.len() <= g.terms.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Reduces until the leading term is irreducible (or the polynomial is zero).
    fn top_reduce(&self, mut h: IPoly) -> IPoly {
        let mut steps = 0;
        while !h.is_zero() {
            let m = h.lm();
            let Some(k) = self.reducer_for(&m) else { break };
            let g = &self.polys[k];
            let gg = g.lc().gcd(h.lc());
            let a = g.lc() / &gg;
            let b = h.lc() / &gg;
            let shift = g.lm().quotient_of(&m);
            h = h.sub_scaled(&a, g, &b, &shift);
            steps += 1;
            if steps % 8 == 0 {
                h.make_primitive();
            }
        }
        h.make_primitive();
        h
    }
}

/// Fully reduces `h` modulo `basis`. Returns `(r, s)` with `s * h = r mod basis`,
/// `s` a positive integer and no term of `r` divisible by a leading monomial.
fn full_reduce(basis: &[IPoly], h: &IPoly) -> (IPoly, BigInt) {
    let mut scale = BigInt::one();
    let mut done: Vec<(Mono, BigInt)> = Vec::new();
    let mut rest = h.clone();
    while !rest.is_zero() {
        let m = rest.lm();
        let reducer = basis.iter().filter(|g| g.lm().divides(&m)).min_by_key(|g| g.terms.len());
        match reducer {
            Some(g) => {
                let gg = g.lc().gcd(rest.lc());
                let a = g.lc() / &gg;
                let b = rest.lc() / &gg;
                let shift = g.lm().quotient_of(&m);
                rest = rest.sub_scaled(&a, g, &b, &shift);
                if !a.is_one() {
                    for (_, c) in done.iter_mut() {
                        *c *= &a;
                    }
                    scale *= &a;
                }
            }
            None => {
                let t = rest.terms.remove(0);
                done.push(t);
            }
        }
        // keep sizes in check
        if done.len() + rest.terms.len() > 0 && done.len().is_multiple_of(4) {
            let g = content(done.iter().map(|(_, c)| c).chain(rest.terms.iter().map(|(_, c)| c)));
            let g = g.gcd(&scale);
            if !g.is_zero() && !g.is_one() {
                for (_, c) in done.iter_mut().chain(rest.terms.iter_mut()) {
                    *c = &*c / &g;
                }
                scale = &scale / &g;
            }
        }
    }
    (IPoly { terms: done }, scale)
}

/// Reduced Gröbner basis of the ideal generated by `input` (degree reverse lex order).
/// Each element is primitive with a positive leading coefficient; the unit ideal is `[1]`.
pub fn groebner_basis(input: &[IPoly]) -> Vec<IPoly> {
    let mut basis = Basis { polys: Vec::new(), sugar: Vec::new(), active: Vec::new() };
    let mut pairs: Vec<Pair> = Vec::new();
    let one = || vec![IPoly { terms: vec![(Mono::one(), BigInt::one())] }];

    let mut seeds: Vec<IPoly> = input.iter().filter(|p| !p.is_zero()).cloned().collect();
    seeds.sort_by(|a, b| a.lm().cmp(&b.lm()));
    for mut f in seeds {
        f.make_primitive();
        let f = basis.top_reduce(f);
        if f.is_zero() {
            continue;
        }
        if f.is_constant() {
            return one();
        }
        let s = f.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        insert(&mut basis, &mut pairs, f, s);
    }

    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar.cmp(&q.sugar).then(p.lcm.cmp(&q.lcm)).then((p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        let (f, g) = (&basis.polys[pair.i], &basis.polys[pair.j]);
        let gg = f.lc().gcd(g.lc());
        let mf = f.lm().quotient_of(&pair.lcm);
        let mg = g.lm().quotient_of(&pair.lcm);
        // S = (lc g / gg) * mf * f - (lc f / gg) * mg * g
        let f_shift = IPoly { terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect() };
        let s = f_shift.sub_scaled(&(g.lc() / &gg), g, &(f.lc() / &gg), &mg);
        let h = basis.top_reduce(s);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return one();
        }
        insert(&mut basis, &mut pairs, h, pair.sugar);
    }

    // minimal basis, then interreduction
    let mut kept: Vec<IPoly> = Vec::new();
    let active: Vec<&IPoly> = basis.polys.iter().zip(&basis.active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
    for (k, p) in active.iter().enumerate() {
        let redundant = active.iter().enumerate().any(|(j, q)| {
            j != k && q.lm().divides(&p.lm()) && (q.lm() != p.lm() || j < k)
        });
        if !redundant {
            kept.push((*p).clone());
        }
    }
    kept.sort_by(|a, b| a.lm().cmp(&b.lm()));
    let mut reduced = Vec::with_capacity(kept.len());
    for k in 0..kept.len() {
        let lead = IPoly { terms: vec![kept[k].terms[0].clone()] };
        let tail = IPoly { terms: kept[k].terms[1..].to_vec() };
        let others: Vec<IPoly> = kept.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
        let (r, s) = full_reduce(&others, &tail);
        let mut terms: Vec<(Mono, BigInt)> = vec![(lead.terms[0].0, &lead.terms[0].1 * &s)];
        terms.extend(r.terms);
        let mut p = IPoly { terms };
        p.make_primitive();
        reduced.push(p);
    }
    reduced
}

fn insert(basis: &mut Basis, pairs: &mut Vec<Pair>, h: IPoly, sugar: u32) {
    let hk = basis.polys.len();
    let hm = h.lm();
    // Gebauer–Möller update.
    let candidates: Vec<Pair> = (0..hk)
        .filter(|&k| basis.active[k])
        .map(|k| {
            let g = &basis.polys[k];
            let lcm = hm.lcm(&g.lm());
            let s = (sugar + hm.quotient_of(&lcm).degree()).max(basis.sugar[k] + g.lm().quotient_of(&lcm).degree());
            Pair { i: k, j: hk, lcm, sugar: s }
        })
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    for (a, p) in candidates.iter().enumerate() {
        let coprime = hm.coprime(&basis.polys[p.i].lm());
        let dominated = candidates.iter().enumerate().any(|(b, q)| {
            b != a && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || b < a)
        });
        if coprime || !dominated {
            kept.push(*p);
        }
    }
    // lcm-equal duplicates among survivors: keep one
    let mut seen = BTreeSet::new();
    let mut fresh = Vec::new();
    for p in kept.iter() {
        let key = lcm_key(&p.lcm);
        if seen.insert(key) || hm.coprime(&basis.polys[p.i].lm()) {
            fresh.push(*p);
        }
    }
    // product criterion: drop pairs whose lcm group contains a coprime pair
    let coprime_lcms: BTreeSet<_> = fresh
        .iter()
        .filter(|p| hm.coprime(&basis.polys[p.i].lm()))
        .map(|p| lcm_key(&p.lcm))
        .collect();
    fresh.retain(|p| !coprime_lcms.contains(&lcm_key(&p.lcm)));
    pairs.retain(|p| {
        let l1 = basis.polys[p.i].lm().lcm(&hm);
        let l2 = basis.polys[p.j].lm().lcm(&hm);
        !(hm.divides(&p.lcm) && l1 != p.lcm && l2 != p.lcm)
    });
    pairs.extend(fresh);
    for k in 0..hk {
        if basis.active[k] && hm.divides(&basis.polys[k].lm()) {
            basis.active[k] = false;
        }
    }
    basis.polys.push(h);
    basis.sugar.push(sugar);
    basis.active.push(true);
}

fn lcm_key(m: &Mono) -> (u16, [u8; MAX_VARS]) {
    (m.deg, m.e)
}

/// Quotient algebra `Q[x]/I` of a zero-dimensional ideal, from its reduced basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub nvars: usize,
    pub basis: Vec<IPoly>,
    /// Standard monomials, increasing.
    pub staircase: Vec<Mono>,
}

impl Quotient {
    /// Fails with [`Error::PositiveDimensional`] when some variable has no pure-power
    /// leading monomial, i.e. the staircase is infinite.
    pub fn new(nvars: usize, basis: Vec<IPoly>) -> Result<Self> {
        if basis.len() == 1 && basis[0].is_constant() {
            return Ok(Quotient { nvars, basis, staircase: Vec::new() });
        }
        for v in 0..nvars {
            let has = basis.iter().any(|g| g.lm().pure_power_of() == Some(v) || g.lm().degree() == 0);
            if !has {
                return Err(Error::PositiveDimensional(alloc::format!(
                    "no leading monomial is a pure power of variable {v}"
                )));
            }
        }
        let mut stair: Vec<Mono> = Vec::new();
        let mut queue = vec![Mono::one()];
        let mut seen = BTreeSet::new();
        seen.insert(lcm_key(&Mono::one()));
        while let Some(m) = queue.pop() {
            if basis.iter().any(|g| g.lm().divides(&m)) {
                continue;
            }
            stair.push(m);
            for v in 0..nvars {
                let n = m.mul(&Mono::var(v));
                if seen.insert(lcm_key(&n)) {
                    queue.push(n);
                }
            }
        }
        stair.sort();
        Ok(Quotient { nvars, basis, staircase: stair })
    }

    pub fn dimension(&self) -> usize {
        self.staircase.len()
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.staircase.binary_search(m).ok()
    }

    /// Coordinates of the normal form of `p` on the staircase.
    pub fn normal_form(&self, p: &IPoly) -> Vec<Rational> {
        let (r, s) = full_reduce(&self.basis, p);
        let s = Rational::from_integer(s);
        let mut v = vec![Rational::zero(); self.dimension()];
        for (m, c) in r.terms {
            let k = self.index_of(&m).expect("reduced term lies on the staircase");
            v[k] = Rational::from_integer(c) / &s;
        }
        v
    }

    pub fn normal_form_of_monomial(&self, m: Mono) -> Vec<Rational> {
        if let Some(k) = self.index_of(&m) {
            let mut v = vec![Rational::zero(); self.dimension()];
            v[k] = Rational::one();
            return v;
        }
        self.normal_form(&IPoly { terms: vec![(m, BigInt::one())] })
    }

    /// Matrix of multiplication by `x_v`: column `k` holds the normal form of `x_v * b_k`.
    /// Stored row-major as `rows[i][k]`.
    pub fn multiplication_matrix(&self, v: usize) -> Vec<Vec<Rational>> {
        let d = self.dimension();
        let mut rows = vec![vec![Rational::zero(); d]; d];
        for (k, b) in self.staircase.iter().enumerate() {
            let col = self.normal_form_of_monomial(b.mul(&Mono::var(v)));
            for (i, c) in col.into_iter().enumerate() {
                rows[i][k] = c;
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(nvars: usize, s: &str) -> IPoly {
        IPoly::from_poly(&Poly::parse(nvars, s).unwrap()).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let x = Mono::from_exponents(&[1, 0, 0]).unwrap();
        let y = Mono::from_exponents(&[0, 1, 0]).unwrap();
        let xz = Mono::from_exponents(&[1, 0, 1]).unwrap();
        let y2 = Mono::from_exponents(&[0, 2, 0]).unwrap();
        assert!(x > y);
        // degree reverse lex: y^2 > x z
        assert!(y2 > xz);
    }

    #[test]
    fn grid_ideal() {
        let g = groebner_basis(&[ip(2, "x0^2 - x0"), ip(2, "x1^2 - x1")]);
        assert_eq!(g.len(), 2);
        let q = Quotient::new(2, g).unwrap();
        assert_eq!(q.dimension(), 4);
    }

    #[test]
    fn unit_ideal() {
        let g = groebner_basis(&[ip(2, "x0"), ip(2, "x0 - 1")]);
        assert_eq!(g.len(), 1);
        assert!(g[0].is_constant());
        assert_eq!(Quotient::new(2, g).unwrap().dimension(), 0);
    }

    #[test]
    fn positive_dimensional_detected() {
        let g = groebner_basis(&[ip(2, "x0 x1"), ip(2, "x0^2")]);
        assert!(matches!(Quotient::new(2, g), Err(Error::PositiveDimensional(_))));
    }

    #[test]
    fn cyclic_three_has_six_points() {
        let g = groebner_basis(&[
            ip(3, "x0 + x1 + x2"),
            ip(3, "x0 x1 + x1 x2 + x2 x0"),
            ip(3, "x0 x1 x2 - 1"),
        ]);
        let q = Quotient::new(3, g.clone()).unwrap();
        assert_eq!(q.dimension(), 6);
        // every input reduces to zero
        for s in ["x0 + x1 + x2", "x0 x1 + x1 x2 + x2 x0", "x0 x1 x2 - 1"] {
            assert!(q.normal_form(&ip(3, s)).iter().all(Zero::is_zero));
        }
    }
}
