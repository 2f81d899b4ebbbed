//! Points of projective space with exact or floating coordinates.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::{to_complex, Rational};
use crate::upoly::UPoly;

/// Exact points are scaled so the first nonzero coordinate is one; floating points so
/// the coordinate of largest modulus is one.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjectivePoint {
    Exact(Vec<Rational>),
    Float(Vec<Complex64>),
}

/// Moduli within this relative distance of the maximum count as ties when choosing
/// the normalizing coordinate.
const TIE: f64 = 1e-12;

impl ProjectivePoint {
    pub fn exact(coords: Vec<Rational>) -> Result<Self> {
        let k = coords.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
        let lead = coords[k].clone();
        Ok(ProjectivePoint::Exact(coords.into_iter().map(|c| c / &lead).collect()))
    }

    pub fn float(coords: Vec<Complex64>) -> Result<Self> {
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        let k = max_index(&coords).ok_or(Error::ZeroPoint)?;
        let lead = coords[k];
        Ok(ProjectivePoint::Float(coords.into_iter().map(|c| c / lead).collect()))
    }

    /// Number of homogeneous coordinates, `n + 1`.
    pub fn len(&self) -> usize {
        match self {
            ProjectivePoint::Exact(v) => v.len(),
            ProjectivePoint::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ProjectivePoint::Exact(_))
    }

    pub fn exact_coords(&self) -> Option<&[Rational]> {
        match self {
            ProjectivePoint::Exact(v) => Some(v),
            ProjectivePoint::Float(_) => None,
        }
    }

    /// Coordinates as complex numbers, in the stored normalization.
    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            ProjectivePoint::Exact(v) => v.iter().map(to_complex).collect(),
            ProjectivePoint::Float(v) => v.clone(),
        }
    }

    /// Complex coordinates scaled so the largest-modulus coordinate is one.
    pub fn max_normalized(&self) -> Vec<Complex64> {
        let c = self.to_complex();
        match max_index(&c) {
            Some(k) => {
                let lead = c[k];
                c.into_iter().map(|x| x / lead).collect()
            }
            None => c,
        }
    }

    /// True when some representative has all imaginary parts below `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        match self {
            ProjectivePoint::Exact(_) => true,
            ProjectivePoint::Float(v) => v.iter().all(|c| c.im.abs() <= tol),
        }
    }

    /// Largest coordinate difference after scaling both points by the same coordinate,
    /// the one of largest modulus in `self`.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        let a = self.to_complex();
        let b = other.to_complex();
        let Some(k) = max_index(&a) else { return f64::INFINITY };
        if b[k].norm() == 0.0 {
            return f64::INFINITY;
        }
        let (sa, sb) = (a[k], b[k]);
        a.iter().zip(&b).map(|(x, y)| (x / sa - y / sb).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ProjectivePoint, tol: f64) -> bool {
        match (self, other) {
            (ProjectivePoint::Exact(a), ProjectivePoint::Exact(b)) => a == b,
            _ => self.distance(other) < tol,
        }
    }

    /// Deterministic order: exact points first, lexicographic on coordinates; then
    /// floating points, lexicographic on (real, imaginary) of the stored coordinates.
    pub fn lex_cmp(&self, other: &ProjectivePoint) -> Ordering {
        match (self, other) {
            (ProjectivePoint::Exact(a), ProjectivePoint::Exact(b)) => a.cmp(b),
            (ProjectivePoint::Exact(_), ProjectivePoint::Float(_)) => Ordering::Less,
            (ProjectivePoint::Float(_), ProjectivePoint::Exact(_)) => Ordering::Greater,
            (ProjectivePoint::Float(a), ProjectivePoint::Float(b)) => crate::solver::compare_coords(a, b),
        }
    }
}

fn max_index(c: &[Complex64]) -> Option<usize> {
    let m = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return None;
    }
    c.iter().position(|x| x.norm() >= m * (1.0 - TIE))
}

/// Conjugate points `(coords[0](t) : ... : coords[n](t))` over the roots of `minpoly`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointGroup {
    pub minpoly: UPoly,
    pub coords: Vec<UPoly>,
    pub multiplicity: usize,
}

impl PointGroup {
    pub fn size(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// Lifts an affine group of the chart `x_0 = .. = x_(j-1) = 0, x_j = 1`.
    pub fn from_chart(nvars: usize, j: usize, minpoly: UPoly, affine: Vec<UPoly>, multiplicity: usize) -> Self {
        let mut coords = Vec::with_capacity(nvars);
        coords.extend((0..j).map(|_| UPoly::zero()));
        coords.push(UPoly::constant(Rational::one()));
        coords.extend(affine);
        PointGroup { minpoly, coords, multiplicity }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use alloc::vec;

    #[test]
    fn exact_normalization() {
        let p = ProjectivePoint::exact(vec![rat(0), rat(2), rat(4)]).unwrap();
        assert_eq!(p, ProjectivePoint::Exact(vec![rat(0), rat(1), rat(2)]));
        assert_eq!(ProjectivePoint::exact(vec![rat(0), rat(0)]), Err(Error::ZeroPoint));
    }

    #[test]
    fn float_normalization_and_distance() {
        let p = ProjectivePoint::float(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]).unwrap();
        assert_eq!(p.to_complex()[1], Complex64::new(1.0, 0.0));
        let q = ProjectivePoint::exact(vec![rat(1), rat(0)]).unwrap();
        let r = ProjectivePoint::float(vec![Complex64::new(3.0, 3.0), Complex64::new(0.0, 0.0)]).unwrap();
        assert!(q.approx_eq(&r, 1e-12));
        assert!(!q.approx_eq(&p, 1e-3));
    }

    #[test]
    fn ordering() {
        let a = ProjectivePoint::exact(vec![rat(0), rat(1)]).unwrap();
        let b = ProjectivePoint::exact(vec![rat(1), rat(0)]).unwrap();
        let c = ProjectivePoint::float(vec![Complex64::new(1.0, 0.5), Complex64::new(0.2, 0.0)]).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&c), Ordering::Less);
    }
}
