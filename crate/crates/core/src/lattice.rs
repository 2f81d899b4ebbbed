//! Integer intersection lattices of eigensurfaces and the identities built on them.
//!
//! The Picard groups are taken as given data: `<H, L>` with `H^2 = deg S`, `H.L = 1`,
//! `L^2 = 2 - d` in general, and the blow-up of the plane in six points for cubics.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{binomial, rat, Rational};
use crate::tensor::{eigencurve_degree, eigensurface_degree, expected_count};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        if self.rank() != other.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: other.rank() });
        }
        Ok(DivisorClass::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// `a * self + b * other`
    pub fn combine(a: i64, x: &DivisorClass, b: i64, y: &DivisorClass) -> Result<DivisorClass> {
        x.scale(a).add(&y.scale(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub canonical: DivisorClass,
    pub hyperplane: DivisorClass,
    /// The distinguished line class `L`.
    pub line: DivisorClass,
}

impl SurfaceLattice {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        for c in [a, b] {
            if c.rank() != self.rank() {
                return Err(Error::DimensionMismatch { expected: self.rank(), got: c.rank() });
            }
        }
        let mut s = 0;
        for (i, x) in a.coords.iter().enumerate() {
            for (j, y) in b.coords.iter().enumerate() {
                s += x * self.gram[i][j] * y;
            }
        }
        Ok(s)
    }

    pub fn degree(&self, c: &DivisorClass) -> Result<i64> {
        self.dot(c, &self.hyperplane)
    }
}

/// The rank-two lattice `<H, L>` without the cubic-surface redirect.
pub fn rank_two_lattice(n: u32, d: u32) -> Result<SurfaceLattice> {
    if n < 3 || d < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 3 and d >= 3, got n = {n}, d = {d}")));
    }
    let h2 = i64::try_from(eigensurface_degree(n, d)).map_err(|_| Error::InvalidArgument("surface degree overflows".into()))?;
    let (n, d) = (n as i64, d as i64);
    Ok(SurfaceLattice {
        labels: vec!["H".to_string(), "L".to_string()],
        gram: vec![vec![h2, 1], vec![1, 2 - d]],
        canonical: DivisorClass::new(vec![(n - 3) * (d - 1) + d - n - 1, n - 3]),
        hyperplane: DivisorClass::new(vec![1, 0]),
        line: DivisorClass::new(vec![0, 1]),
    })
}

/// Picard lattice of the surface `S_01` cut by the minors of the first two columns.
/// At `(3, 3)` this is the cubic-surface lattice with `L = e_1`.
pub fn eigensurface_lattice(n: u32, d: u32) -> Result<SurfaceLattice> {
    if (n, d) == (3, 3) {
        return Ok(cubic_surface().lattice);
    }
    rank_two_lattice(n, d)
}

/// `(d-1) H + L`, checked against the eigencurve degree.
pub fn eigencurve_class(n: u32, d: u32) -> Result<DivisorClass> {
    let lat = eigensurface_lattice(n, d)?;
    curve_class_in(&lat, n, d)
}

fn curve_class_in(lat: &SurfaceLattice, n: u32, d: u32) -> Result<DivisorClass> {
    let c = DivisorClass::combine(d as i64 - 1, &lat.hyperplane, 1, &lat.line)?;
    let deg = lat.degree(&c)?;
    if deg as u64 != eigencurve_degree(n, d) {
        return Err(Error::Inconsistent(format!("curve class has degree {deg}, expected {}", eigencurve_degree(n, d))));
    }
    Ok(c)
}

pub fn ci_degree(lat: &SurfaceLattice, c0: &DivisorClass, c1: &DivisorClass) -> Result<i64> {
    lat.dot(c0, c1)
}

/// Arithmetic genus `((K + C).C) / 2 + 1`.
pub fn adjunction_genus(lat: &SurfaceLattice, c: &DivisorClass) -> Result<i64> {
    let kc = lat.canonical.add(c)?;
    let v = lat.dot(&kc, c)?;
    if v % 2 != 0 {
        return Err(Error::Parity(v));
    }
    Ok(v / 2 + 1)
}

/// `d^3 - 7 d (d-1) / 2 - 1`
pub fn curve_genus_closed_form(d: u32) -> i64 {
    let d = d as i64;
    d * d * d - 7 * d * (d - 1) / 2 - 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBeta {
    /// The integral solution `(d-1, 1)`.
    pub integral: (Rational, Rational),
    /// The other solution, `((d^2-d+2)/d, -1)`.
    pub other: (Rational, Rational),
}

/// Classes `C = aH + bL` on the degree-`d` surface of `P^3` with `C.H = d^2-d+1` and
/// the eigencurve genus. Solves the linear and quadratic equations exactly.
pub fn alpha_beta_solutions(d: u32) -> Result<AlphaBeta> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("need d >= 3, got {d}")));
    }
    let lat = rank_two_lattice(3, d)?;
    let (hh, hl, ll) = (rat(lat.gram[0][0]), rat(lat.gram[0][1]), rat(lat.gram[1][1]));
    let (kh, kl) = (rat(lat.canonical.coords[0]), rat(lat.canonical.coords[1]));
    let deg = rat(eigencurve_degree(3, d) as i64);
    let target = rat(2 * curve_genus_closed_form(d) - 2);
    // b = s - t a from the degree equation a (H.H) + b (H.L) = deg
    let kdot_h = &kh * &hh + &kl * &hl;
    let kdot_l = &kh * &hl + &kl * &ll;
    let s = &deg / &hl;
    let t = &hh / &hl;
    // (a H + b L)^2 + K.(a H + b L) = target, with b = s - t a
    let qa = &hh - rat(2) * &hl * &t + &ll * &t * &t;
    let qb = rat(2) * &hl * &s - rat(2) * &ll * &s * &t + &kdot_h - &kdot_l * &t;
    let qc = &ll * &s * &s + &kdot_l * &s - &target;
    if qa.is_zero() {
        return Err(Error::Inconsistent("degenerate quadratic".into()));
    }
    let disc = &qb * &qb - rat(4) * &qa * &qc;
    let root = exact_sqrt(&disc).ok_or_else(|| Error::Inconsistent(format!("irrational discriminant {disc}")))?;
    let mut sols: Vec<(Rational, Rational)> = [&root, &-root.clone()]
        .iter()
        .map(|r| {
            let a = (-&qb + *r) / (rat(2) * &qa);
            let b = &s - &t * &a;
            (a, b)
        })
        .collect();
    sols.sort_by_key(|(a, _)| !a.is_integer());
    let (integral, other) = (sols[0].clone(), sols[1].clone());
    if !(integral.0.is_integer() && integral.1.is_integer()) || other.0.is_integer() {
        return Err(Error::Inconsistent(format!("integrality dichotomy fails at d = {d}")));
    }
    Ok(AlphaBeta { integral, other })
}

fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd): (BigInt, BigInt) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RiemannRoch {
    /// `chi(O_S((d-1)H + L))` from the lattice.
    pub chi: i64,
    /// `3 C(d,2) + 3 + C(d-1,3)`.
    pub closed_form: i64,
    /// Largest enlargeable point count, `chi - 2`.
    pub bound: i64,
}

/// Euler characteristic of the eigencurve class on a degree-`d` surface of `P^3`, with
/// `p_a(S) = C(d-1, 3)`.
pub fn riemann_roch_chi(d: u32) -> Result<RiemannRoch> {
    let lat = rank_two_lattice(3, d)?;
    let c = curve_class_in(&lat, 3, d)?;
    let minus_k = lat.canonical.scale(-1);
    let v = lat.dot(&c, &c.add(&minus_k)?)?;
    if v % 2 != 0 {
        return Err(Error::Parity(v));
    }
    let pa = binomial(d as u64 - 1, 3) as i64;
    let chi = v / 2 + 1 + pa;
    let closed_form = 3 * binomial(d as u64, 2) as i64 + 3 + pa;
    if chi != closed_form {
        return Err(Error::Inconsistent(format!("lattice chi {chi} differs from closed form {closed_form}")));
    }
    Ok(RiemannRoch { chi, closed_form, bound: chi - 2 })
}

/// Largest size of a point set in `P^3` that can be enlarged to an eigenscheme of degree `d`.
pub fn enlargement_bound(d: u32) -> u64 {
    binomial(d as u64 - 1, 3) + 3 * binomial(d as u64, 2) + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicSurface {
    pub lattice: SurfaceLattice,
    pub lines: Vec<DivisorClass>,
}

/// Blow-up of the plane in six points: basis `l, e_1..e_6`, `H = 3l - sum e_i = -K`.
pub fn cubic_surface() -> CubicSurface {
    let mut labels = vec!["l".to_string()];
    labels.extend((1..=6).map(|i| format!("e{i}")));
    let gram = (0..7).map(|i| (0..7).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect()).collect();
    let hyperplane = DivisorClass::new(vec![3, -1, -1, -1, -1, -1, -1]);
    let e = |i: usize| {
        let mut v = vec![0; 7];
        v[i] = 1;
        v
    };
    let mut lines = Vec::with_capacity(27);
    for i in 1..=6 {
        lines.push(DivisorClass::new(e(i)));
    }
    for i in 1..=6 {
        for j in i + 1..=6 {
            let mut v = e(0);
            v[i] = -1;
            v[j] = -1;
            lines.push(DivisorClass::new(v));
        }
    }
    for skip in 1..=6 {
        let mut v = vec![-1; 7];
        v[0] = 2;
        v[skip] = 0;
        lines.push(DivisorClass::new(v));
    }
    let lattice = SurfaceLattice {
        labels,
        gram,
        canonical: hyperplane.scale(-1),
        hyperplane,
        line: DivisorClass::new(e(1)),
    };
    CubicSurface { lattice, lines }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: i64,
    pub got: i64,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, expected: i64, got: i64) -> Self {
        IdentityCheck { name: name.into(), expected, got }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

/// Every identity available at `(n, d)`.
pub fn identity_report(n: u32, d: u32) -> Result<(SurfaceLattice, Vec<IdentityCheck>)> {
    let lat = eigensurface_lattice(n, d)?;
    let mut out = Vec::new();
    out.push(IdentityCheck::new("gram matrix symmetric", 1, lat.is_symmetric() as i64));
    out.push(IdentityCheck::new("H.H = surface degree", eigensurface_degree(n, d) as i64, lat.dot(&lat.hyperplane, &lat.hyperplane)?));
    out.push(IdentityCheck::new("H.L", 1, lat.dot(&lat.hyperplane, &lat.line)?));
    out.push(IdentityCheck::new("genus of L", 0, adjunction_genus(&lat, &lat.line)?));
    let c = curve_class_in(&lat, n, d)?;
    out.push(IdentityCheck::new("C.H = curve degree", eigencurve_degree(n, d) as i64, lat.degree(&c)?));
    out.push(IdentityCheck::new("C.C = eigenscheme length", expected_count(n, d) as i64, ci_degree(&lat, &c, &c)?));
    if n == 3 {
        out.push(IdentityCheck::new("genus of C", curve_genus_closed_form(d), adjunction_genus(&lat, &c)?));
        let ab = alpha_beta_solutions(d)?;
        out.push(IdentityCheck::new("alpha of integral solution", d as i64 - 1, as_int(&ab.integral.0)));
        out.push(IdentityCheck::new("beta of integral solution", 1, as_int(&ab.integral.1)));
        out.push(IdentityCheck::new("second solution non-integral", 1, (!ab.other.0.is_integer()) as i64));
        let rr = riemann_roch_chi(d)?;
        out.push(IdentityCheck::new("Riemann-Roch chi", rr.closed_form, rr.chi));
        out.push(IdentityCheck::new("enlargement bound", enlargement_bound(d) as i64, rr.bound));
    }
    if (n, d) == (3, 3) {
        let cs = cubic_surface();
        let lat = &cs.lattice;
        out.push(IdentityCheck::new("line census", 27, cs.lines.len() as i64));
        let mut ok = 0;
        for l in &cs.lines {
            let c = l.add(&lat.hyperplane.scale(2))?;
            let good = lat.dot(l, l)? == -1
                && adjunction_genus(lat, l)? == 0
                && lat.degree(l)? == 1
                && lat.degree(&c)? == 7
                && adjunction_genus(lat, &c)? == 5;
            ok += good as i64;
        }
        out.push(IdentityCheck::new("lines with L^2 = -1, g = 0, deg 1 and L+2H of degree 7, genus 5", 27, ok));
    }
    Ok((lat, out))
}

fn as_int(r: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.to_integer().to_i64().unwrap_or(i64::MIN)
    } else {
        i64::MIN
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::ratio;

    #[test]
    fn gram_matrices() {
        assert_eq!(eigensurface_lattice(4, 3).unwrap().gram, vec![vec![7, 1], vec![1, -1]]);
        assert_eq!(eigensurface_lattice(3, 4).unwrap().gram, vec![vec![4, 1], vec![1, -2]]);
        for d in 4..9 {
            assert_eq!(eigensurface_lattice(3, d).unwrap().canonical.coords, vec![d as i64 - 4, 0]);
        }
        assert_eq!(eigensurface_lattice(3, 3).unwrap().rank(), 7);
    }

    #[test]
    fn curve_classes() {
        let lat = eigensurface_lattice(3, 4).unwrap();
        let c = eigencurve_class(3, 4).unwrap();
        assert_eq!(c.coords, vec![3, 1]);
        assert_eq!(ci_degree(&lat, &c, &c).unwrap(), 40);
        let lat = eigensurface_lattice(3, 3).unwrap();
        let c = eigencurve_class(3, 3).unwrap();
        assert_eq!(lat.degree(&c).unwrap(), 7);
        assert_eq!(ci_degree(&lat, &c, &c).unwrap(), 15);
        assert_eq!(adjunction_genus(&lat, &c).unwrap(), 5);
        assert_eq!(eigencurve_class(4, 3).unwrap(), DivisorClass::new(vec![2, 1]));
        assert_eq!(lat.degree(&eigencurve_class(3, 3).unwrap()).unwrap(), 7);
    }

    #[test]
    fn alpha_beta() {
        let ab = alpha_beta_solutions(3).unwrap();
        assert_eq!(ab.integral, (rat(2), rat(1)));
        assert_eq!(ab.other, (ratio(8, 3), rat(-1)));
        let ab = alpha_beta_solutions(4).unwrap();
        assert_eq!(ab.other, (ratio(14, 4), rat(-1)));
    }

    #[test]
    fn riemann_roch_values() {
        assert_eq!(riemann_roch_chi(3).unwrap(), RiemannRoch { chi: 12, closed_form: 12, bound: 10 });
        assert_eq!(riemann_roch_chi(4).unwrap(), RiemannRoch { chi: 22, closed_form: 22, bound: 20 });
        assert_eq!(enlargement_bound(3), 10);
    }

    #[test]
    fn cubic_census() {
        let cs = cubic_surface();
        let lat = &cs.lattice;
        assert_eq!(cs.lines.len(), 27);
        let mut sorted = cs.lines.clone();
        sorted.sort_by(|a, b| a.coords.cmp(&b.coords));
        sorted.dedup();
        assert_eq!(sorted.len(), 27);
        assert_eq!(lat.dot(&lat.hyperplane, &lat.hyperplane).unwrap(), 3);
        assert_eq!(lat.dot(&lat.canonical, &lat.canonical).unwrap(), 3);
        let c = lat.line.add(&lat.hyperplane.scale(2)).unwrap();
        assert_eq!(lat.degree(&c).unwrap(), 7);
        assert_eq!(adjunction_genus(lat, &c).unwrap(), 5);
    }

    #[test]
    fn parity_is_enforced() {
        let lat = rank_two_lattice(3, 4).unwrap();
        // an odd unimodular form with K = 0
        let odd = SurfaceLattice { gram: vec![vec![1, 0], vec![0, 1]], canonical: DivisorClass::new(vec![0, 0]), ..lat };
        assert_eq!(adjunction_genus(&odd, &DivisorClass::new(vec![1, 0])), Err(Error::Parity(1)));
    }

    #[test]
    fn reports_pass() {
        for (n, d) in [(3, 3), (3, 5), (4, 3), (5, 4)] {
            let (_, checks) = identity_report(n, d).unwrap();
            assert!(checks.iter().all(IdentityCheck::passed), "{n} {d}: {checks:?}");
        }
    }
}
