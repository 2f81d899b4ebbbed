//! Incidence predicates on finite point sets: collinearity and points on hypersurfaces.
//!
//! Ranks are exact when every point involved has rational coordinates. Otherwise the
//! points are scaled to unit max-modulus and ranks are read off singular values with
//! relative threshold [`NUMERIC_RANK_TOL`]; such reports carry `numeric = true`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::eigensolver::EigenSolution;
use crate::error::{Error, Result};
use crate::matrix::{numeric_rank, ExactMatrix};
use crate::numbers::Rational;
use crate::point::{PointGroup, ProjectivePoint};
use crate::poly::{monomials_of_degree, Monomial, Poly};

pub const NUMERIC_RANK_TOL: f64 = 1e-8;
/// Floating points closer than this (after max-modulus normalization) are merged.
pub const DEDUP_TOL: f64 = 1e-8;
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    n: usize,
    points: Vec<ProjectivePoint>,
    group_of: Vec<Option<usize>>,
    groups: Vec<PointGroup>,
}

impl PointSet {
    pub fn new(n: usize, points: Vec<ProjectivePoint>) -> Result<Self> {
        let k = points.len();
        Self::with_groups(n, points, vec![None; k], Vec::new())
    }

    /// Points of which some are conjugates in exact groups; `group_of[i]` names the group
    /// containing point `i`. Duplicates are dropped, keeping the first occurrence.
    pub fn with_groups(n: usize, points: Vec<ProjectivePoint>, group_of: Vec<Option<usize>>, groups: Vec<PointGroup>) -> Result<Self> {
        if group_of.len() != points.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: group_of.len() });
        }
        if let Some(p) = points.iter().find(|p| p.len() != n + 1) {
            return Err(Error::DimensionMismatch { expected: n + 1, got: p.len() });
        }
        if let Some(g) = groups.iter().find(|g| g.coords.len() != n + 1) {
            return Err(Error::DimensionMismatch { expected: n + 1, got: g.coords.len() });
        }
        if let Some(&Some(g)) = group_of.iter().find(|g| g.is_some_and(|g| g >= groups.len())) {
            return Err(Error::IndexOutOfRange { index: g, len: groups.len() });
        }
        let mut kept: Vec<ProjectivePoint> = Vec::with_capacity(points.len());
        let mut kept_groups = Vec::with_capacity(points.len());
        for (p, g) in points.into_iter().zip(group_of) {
            if !kept.iter().any(|q| q.approx_eq(&p, DEDUP_TOL)) {
                kept.push(p);
                kept_groups.push(g);
            }
        }
        Ok(PointSet { n, points: kept, group_of: kept_groups, groups })
    }

    pub fn from_solution(sol: &EigenSolution) -> Self {
        PointSet {
            n: sol.n,
            points: sol.points.iter().map(|p| p.point.clone()).collect(),
            group_of: sol.points.iter().map(|p| p.group).collect(),
            groups: sol.groups.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn groups(&self) -> &[PointGroup] {
        &self.groups
    }

    pub fn group_of(&self, i: usize) -> Option<usize> {
        self.group_of[i]
    }

    pub fn is_exact(&self) -> bool {
        self.points.iter().all(ProjectivePoint::is_exact)
    }

    /// Indices of floating points not covered by an exact group.
    pub fn loose_float_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.points[i].is_exact() && self.group_of[i].is_none()).collect()
    }

    pub fn subset(&self, indices: &[usize]) -> Result<PointSet> {
        if let Some(&i) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let group_of = indices.iter().map(|&i| self.group_of[i]).collect();
        // a partial group is no longer closed under conjugation
        let mut set = PointSet::with_groups(self.n, points, group_of, self.groups.clone())?;
        for g in 0..set.groups.len() {
            let members = set.group_of.iter().filter(|&&x| x == Some(g)).count();
            if members != set.groups[g].size() {
                set.group_of.iter_mut().filter(|x| **x == Some(g)).for_each(|x| *x = None);
            }
        }
        Ok(set)
    }
}

/// Rows of a matrix whose entries are either all exact or all floating.
enum Rows {
    Exact(Vec<Vec<Rational>>),
    Float(Vec<Vec<Complex64>>),
}

impl Rows {
    fn evaluate(points: &[ProjectivePoint], monos: &[Monomial]) -> Rows {
        if points.iter().all(ProjectivePoint::is_exact) {
            Rows::Exact(
                points
                    .iter()
                    .map(|p| {
                        let c = p.exact_coords().expect("exact");
                        monos.iter().map(|m| m.evaluate(c)).collect()
                    })
                    .collect(),
            )
        } else {
            Rows::Float(
                points
                    .iter()
                    .map(|p| {
                        let c = p.max_normalized();
                        monos.iter().map(|m| m.evaluate_complex(&c)).collect()
                    })
                    .collect(),
            )
        }
    }

    fn is_numeric(&self) -> bool {
        matches!(self, Rows::Float(_))
    }

    fn rank_of(&self, idx: &[usize], cols: usize) -> usize {
        match self {
            Rows::Exact(r) => ExactMatrix::from_rows(idx.iter().map(|&i| r[i].clone()).collect())
                .map(|m| if idx.is_empty() { 0 } else { m.rank() })
                .unwrap_or(0),
            Rows::Float(r) => numeric_rank(&idx.iter().map(|&i| r[i].clone()).collect::<Vec<_>>(), cols, NUMERIC_RANK_TOL),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearReport {
    pub max: usize,
    /// Indices of the points on a line achieving the maximum.
    pub witness: Vec<usize>,
    pub numeric: bool,
}

/// Largest number of points on a line spanned by two of them.
pub fn max_collinear(z: &PointSet) -> CollinearReport {
    let k = z.len();
    let monos = monomials_of_degree(z.n + 1, 1);
    let rows = Rows::evaluate(&z.points, &monos);
    let mut best = CollinearReport { max: k.min(1), witness: (0..k.min(1)).collect(), numeric: rows.is_numeric() };
    for i in 0..k {
        for j in i + 1..k {
            let on: Vec<usize> = (0..k).filter(|&l| l == i || l == j || rows.rank_of(&[i, j, l], monos.len()) < 3).collect();
            if on.len() > best.max {
                best.max = on.len();
                best.witness = on;
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceReport {
    pub predicate: String,
    pub degree: u32,
    /// Subset size `m`.
    pub threshold: usize,
    /// Some `m`-subset lies on a hypersurface of the given degree.
    pub found: bool,
    /// First offending subset in lexicographic order of indices.
    pub witness: Option<Vec<usize>>,
    /// A hypersurface through the witness, for exact points.
    pub witness_form: Option<Poly>,
    pub subsets_checked: u128,
    pub numeric: bool,
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// Does some `m`-subset of `z` lie on a hypersurface of degree `e`?
pub fn subset_on_hypersurface(z: &PointSet, e: u32, m: usize, cap: u128) -> Result<IncidenceReport> {
    if m > z.len() {
        return Err(Error::InvalidArgument(format!("subset size {m} exceeds the {} points", z.len())));
    }
    let monos = monomials_of_degree(z.n + 1, e);
    let cols = monos.len();
    let rows = Rows::evaluate(&z.points, &monos);
    let mut report = IncidenceReport {
        predicate: format!("{m} points on a hypersurface of degree {e}"),
        degree: e,
        threshold: m,
        found: false,
        witness: None,
        witness_form: None,
        subsets_checked: 0,
        numeric: rows.is_numeric(),
    };
    let all: Vec<usize> = (0..z.len()).collect();
    let hit = if m < cols || rows.rank_of(&all, cols) < cols {
        report.subsets_checked = 1;
        Some((0..m).collect::<Vec<_>>())
    } else {
        let needed = binomial_u128(z.len(), m);
        if needed > cap {
            return Err(Error::EnumerationCap { cap, needed });
        }
        let mut comb: Vec<usize> = (0..m).collect();
        let mut hit = None;
        loop {
            report.subsets_checked += 1;
            if rows.rank_of(&comb, cols) < cols {
                hit = Some(comb.clone());
                break;
            }
            if !next_combination(&mut comb, z.len()) {
                break;
            }
        }
        hit
    };
    if let Some(w) = hit {
        if rows.rank_of(&w, cols) >= cols {
            return Err(Error::Inconsistent("offending subset does not re-verify".into()));
        }
        if let Rows::Exact(r) = &rows {
            let sub = ExactMatrix::from_rows(w.iter().map(|&i| r[i].clone()).collect())?;
            let kernel = if w.is_empty() { ExactMatrix::identity(cols).row_vectors() } else { sub.kernel() };
            if let Some(v) = kernel.first() {
                let mut f = Poly::zero(z.n + 1);
                for (c, mono) in v.iter().zip(&monos) {
                    f.add_term(mono.clone(), c.clone());
                }
                report.witness_form = Some(f);
            }
        }
        report.found = true;
        report.witness = Some(w);
    }
    Ok(report)
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq)]
pub struct BezoutReport {
    pub d: u32,
    /// One report per curve degree `s = 1 .. d-1`, checking `s d + 1` points.
    pub checks: Vec<IncidenceReport>,
    pub passed: bool,
}

/// For plane sets: no `s d + 1` points on a curve of degree `s`, for `s < d`.
pub fn bezout_guard(z: &PointSet, d: u32, cap: u128) -> Result<BezoutReport> {
    if z.n != 2 {
        return Err(Error::InvalidArgument(format!("the plane-curve guard needs n = 2, got n = {}", z.n)));
    }
    let mut checks = Vec::new();
    for s in 1..d.max(2) {
        let m = (s * d + 1) as usize;
        if m > z.len() {
            continue;
        }
        checks.push(subset_on_hypersurface(z, s, m, cap)?);
    }
    let passed = checks.iter().all(|c| !c.found);
    Ok(BezoutReport { d, checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn exact(n: usize, pts: &[&[i64]]) -> PointSet {
        PointSet::new(n, pts.iter().map(|p| ProjectivePoint::exact(p.iter().map(|&x| rat(x)).collect()).unwrap()).collect()).unwrap()
    }

    fn fermat15() -> PointSet {
        let pts: Vec<Vec<i64>> = (1u32..16).map(|m| (0..4).map(|i| ((m >> i) & 1) as i64).collect()).collect();
        let refs: Vec<&[i64]> = pts.iter().map(|v| v.as_slice()).collect();
        exact(3, &refs)
    }

    #[test]
    fn collinear_counts() {
        let z = fermat15();
        let r = max_collinear(&z);
        assert_eq!(r.max, 3);
        assert!(!r.numeric);
        let z = exact(3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0], &[1, 2, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(max_collinear(&z).max, 4);
        assert_eq!(max_collinear(&exact(2, &[&[1, 0, 0], &[0, 1, 0]])).max, 2);
    }

    #[test]
    fn dedup() {
        let z = exact(2, &[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(z.len(), 2);
        let f = ProjectivePoint::float(vec![Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.5, 0.0)]).unwrap();
        let z = PointSet::new(2, vec![z.points()[0].clone(), f]).unwrap();
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn nine_points_always_on_a_quadric() {
        let pts: Vec<Vec<i64>> = (0..9).map(|i| vec![1, i, i * i + 1, i * i * i - 2]).collect();
        let refs: Vec<&[i64]> = pts.iter().map(|v| v.as_slice()).collect();
        let z = exact(3, &refs);
        let r = subset_on_hypersurface(&z, 2, 9, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(r.found);
        let f = r.witness_form.unwrap();
        for p in z.points() {
            assert_eq!(f.evaluate(p.exact_coords().unwrap()).unwrap(), rat(0));
        }
    }

    #[test]
    fn fermat_not_fourteen_on_a_quadric() {
        let r = subset_on_hypersurface(&fermat15(), 2, 14, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(!r.found);
        assert_eq!(r.subsets_checked, 15);
    }

    #[test]
    fn cap_is_enforced() {
        let pts: Vec<Vec<i64>> = (0..30).map(|i| vec![1, i, (7 * i * i + 3) % 31, (5 * i * i * i + 11) % 37]).collect();
        let refs: Vec<&[i64]> = pts.iter().map(|v| v.as_slice()).collect();
        let z = exact(3, &refs);
        assert!(matches!(subset_on_hypersurface(&z, 2, 15, 1000), Err(Error::EnumerationCap { cap: 1000, .. })));
    }

    #[test]
    fn plane_guard() {
        // six points on the conic x0 x2 = x1^2 plus one off it
        let conic = exact(2, &[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4], &[1, 3, 9], &[1, -1, 1], &[1, -2, 4], &[1, 5, 25]]);
        let r = bezout_guard(&conic, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(!r.passed);
        assert!(!r.checks[0].found);
        assert!(r.checks[1].found);
        let line = exact(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let r = bezout_guard(&line, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(!r.passed);
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
