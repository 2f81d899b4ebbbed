//! Eigenpoints of a tensor by affine charts.
//!
//! The chart `x_0 = 1` carries the square system `g_k - x_k g_0`. The hyperplane
//! `x_0 = 0` is then searched chart by chart: on `x_0 = .. = x_(j-1) = 0, x_j = 1` the
//! minors reduce to `g_a = 0` for `a < j` together with `g_k - x_k g_j` for `k > j`.
//! These charts partition projective space, so each point is found exactly once.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::{to_complex, Rational};
use crate::point::{PointGroup, ProjectivePoint};
use crate::poly::Poly;
use crate::residue::{MonomialValues, ResidueRing};
use crate::solver::{solve_zero_dimensional, SolveOptions};
use crate::tensor::{expected_count, minor_ideal_generators, EigenMatrix, PartialSymTensor};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EigenOptions {
    pub solve: SolveOptions,
    /// Keep only points with a real representative.
    pub real_only: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPoint {
    pub point: ProjectivePoint,
    pub multiplicity: usize,
    /// Index `j` of the chart `x_0 = .. = x_(j-1) = 0, x_j = 1` the point lies in.
    pub chart: usize,
    /// `g_j(p)` at the representative with `x_j = 1`; depends on the representative.
    pub eigenvalue: Complex64,
    pub group: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartRecord {
    pub chart: usize,
    pub unknowns: usize,
    pub seed: u64,
    /// Total multiplicity found in the chart; `None` if the chart is positive-dimensional.
    pub length: Option<usize>,
    pub points: usize,
    pub shear: Vec<Rational>,
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenSolution {
    pub n: usize,
    pub d: u32,
    pub points: Vec<EigenPoint>,
    pub groups: Vec<PointGroup>,
    pub charts: Vec<ChartRecord>,
    pub expected: u64,
    /// Total multiplicity equals the expected count and every point is simple.
    pub certified: bool,
    pub positive_dimensional: bool,
    pub diagnostic: Option<String>,
    pub seed: u64,
}

impl EigenSolution {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn projective_points(&self) -> Vec<ProjectivePoint> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }
}

/// The square system of the chart `x_j = 1`: `g_k - x_k g_j` for `k != j`, in the
/// remaining variables in increasing order.
pub fn chart_system(t: &PartialSymTensor, j: usize) -> Result<Vec<Poly>> {
    let n = t.n();
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, len: n + 1 });
    }
    let mut values = vec![None; n + 1];
    values[j] = Some(Rational::one());
    let g: Vec<Poly> = t.slices().iter().map(|s| s.substitute(&values)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n);
    for k in (0..=n).filter(|&k| k != j) {
        let var = if k < j { k } else { k - 1 };
        out.push(&g[k] - &(&Poly::var(n, var) * &g[j]));
    }
    Ok(out)
}

/// System of the chart `x_0 = .. = x_(j-1) = 0, x_j = 1` for the eigenscheme.
fn hyperplane_chart_system(t: &PartialSymTensor, j: usize) -> Result<Vec<Poly>> {
    let n = t.n();
    let mut values = vec![None; n + 1];
    for v in values.iter_mut().take(j) {
        *v = Some(Rational::zero());
    }
    values[j] = Some(Rational::one());
    let g: Vec<Poly> = t.slices().iter().map(|s| s.substitute(&values)).collect::<Result<_>>()?;
    let free = n - j;
    let mut out: Vec<Poly> = g[..j].to_vec();
    for k in j + 1..=n {
        out.push(&g[k] - &(&Poly::var(free, k - j - 1) * &g[j]));
    }
    Ok(out)
}

/// Points of a homogeneous system in `nvars` variables, chart by chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveSolution {
    pub points: Vec<(ProjectivePoint, usize, usize, Option<usize>)>,
    pub groups: Vec<PointGroup>,
    pub charts: Vec<ChartRecord>,
    pub positive_dimensional: Vec<usize>,
}

fn solve_charts<F>(nvars: usize, opts: &SolveOptions, mut system_for: F) -> Result<ProjectiveSolution>
where
    F: FnMut(usize) -> Result<Vec<Poly>>,
{
    let mut out = ProjectiveSolution { points: Vec::new(), groups: Vec::new(), charts: Vec::new(), positive_dimensional: Vec::new() };
    for j in 0..nvars {
        let system = system_for(j)?;
        let free = nvars - 1 - j;
        let seed = opts.seed.wrapping_add(j as u64);
        let chart_opts = SolveOptions { seed, ..*opts };
        let mut record = ChartRecord { chart: j, unknowns: free, seed, length: None, points: 0, shear: Vec::new(), attempts: 0 };
        match solve_zero_dimensional(free, &system, &chart_opts) {
            Ok(sol) => {
                let offset = out.groups.len();
                for g in &sol.groups {
                    out.groups.push(PointGroup::from_chart(nvars, j, g.minpoly.clone(), g.coords.clone(), g.multiplicity));
                }
                for s in &sol.solutions {
                    let point = match &s.exact {
                        Some(e) => ProjectivePoint::exact(lift(j, Rational::zero(), Rational::one(), e))?,
                        None => ProjectivePoint::float(lift(j, Complex64::zero(), Complex64::one(), &s.coords))?,
                    };
                    out.points.push((point, s.multiplicity, j, s.group.map(|g| g + offset)));
                }
                record.length = Some(sol.length);
                record.points = sol.solutions.len();
                record.shear = sol.shear;
                record.attempts = sol.attempts;
            }
            Err(Error::PositiveDimensional(_)) => out.positive_dimensional.push(j),
            Err(e) => return Err(e),
        }
        out.charts.push(record);
    }
    Ok(out)
}

fn lift<T: Clone>(j: usize, zero: T, one: T, rest: &[T]) -> Vec<T> {
    let mut v = vec![zero; j];
    v.push(one);
    v.extend_from_slice(rest);
    v
}

/// Common zeros in projective space of homogeneous polynomials in `nvars` variables.
pub fn projective_zeros(nvars: usize, polys: &[Poly], opts: &SolveOptions) -> Result<ProjectiveSolution> {
    solve_charts(nvars, opts, |j| {
        let mut values = vec![None; nvars];
        for v in values.iter_mut().take(j) {
            *v = Some(Rational::zero());
        }
        values[j] = Some(Rational::one());
        polys.iter().map(|p| p.substitute(&values)).collect()
    })
}

/// All eigenpoints of `t` with multiplicities.
pub fn eigenpoints(t: &PartialSymTensor, opts: &EigenOptions) -> Result<EigenSolution> {
    let n = t.n();
    let sol = solve_charts(n + 1, &opts.solve, |j| if j == 0 { chart_system(t, 0) } else { hyperplane_chart_system(t, j) })?;
    let expected = expected_count(n as u32, t.d());
    let mut points: Vec<EigenPoint> = sol
        .points
        .into_iter()
        .map(|(point, multiplicity, chart, group)| {
            let z = point.to_complex();
            let scale = z[chart];
            let rep: Vec<Complex64> = z.iter().map(|c| c / scale).collect();
            let eigenvalue = t.slice(chart).evaluate_complex(&rep).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            let eigenvalue = match point.exact_coords() {
                Some(e) => to_complex(&t.slice(chart).evaluate(e).expect("arity")),
                None => eigenvalue,
            };
            EigenPoint { point, multiplicity, chart, eigenvalue, group }
        })
        .collect();
    if opts.real_only {
        points.retain(|p| p.point.is_real(1e-8));
    }
    points.sort_by(|a, b| a.point.lex_cmp(&b.point));
    let positive_dimensional = !sol.positive_dimensional.is_empty();
    let total: usize = points.iter().map(|p| p.multiplicity).sum();
    let all_simple = points.iter().all(|p| p.multiplicity == 1);
    let certified = !positive_dimensional && !opts.real_only && total as u64 == expected && all_simple;
    let diagnostic = if positive_dimensional {
        Some(format!("positive-dimensional eigenscheme: charts {:?} have infinitely many solutions", sol.positive_dimensional))
    } else if opts.real_only {
        Some("real points only; certification needs the complex count".into())
    } else if total as u64 != expected {
        Some(format!("found total multiplicity {total}, expected {expected}"))
    } else if !all_simple {
        Some("non-reduced eigenscheme: some point has multiplicity above one".into())
    } else {
        None
    };
    Ok(EigenSolution {
        n,
        d: t.d(),
        points,
        groups: sol.groups,
        charts: sol.charts,
        expected,
        certified,
        positive_dimensional,
        diagnostic,
        seed: opts.solve.seed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub columns: (usize, usize),
    pub points_checked: usize,
    /// Rational points and algebraic groups that vanish exactly on every generator.
    pub exact_checked: usize,
    pub exact_failures: usize,
    /// Largest relative residual over floating points (zero if there are none).
    pub max_residual: f64,
}

impl MembershipReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.exact_failures == 0 && self.max_residual < tol
    }
}

/// Checks that every eigenpoint lies on the curves cut by `M` without column `i` and
/// `M` without column `j`.
pub fn curve_membership_check(t: &PartialSymTensor, i: usize, j: usize, solution: &EigenSolution) -> Result<MembershipReport> {
    if i == j {
        return Err(Error::InvalidArgument("columns must differ".into()));
    }
    let mut gens = minor_ideal_generators(&EigenMatrix::deleting(t, &[i])?)?;
    gens.extend(minor_ideal_generators(&EigenMatrix::deleting(t, &[j])?)?);
    let mut report = MembershipReport { columns: (i, j), points_checked: 0, exact_checked: 0, exact_failures: 0, max_residual: 0.0 };
    for p in &solution.points {
        report.points_checked += 1;
        match p.point.exact_coords() {
            Some(e) => {
                report.exact_checked += 1;
                if !gens.iter().all(|g| g.evaluate(e).is_ok_and(|v| v.is_zero())) {
                    report.exact_failures += 1;
                }
            }
            None => {
                let z = p.point.to_complex();
                let r = gens.iter().map(|g| g.relative_residual(&z).unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
                report.max_residual = report.max_residual.max(r);
            }
        }
    }
    for g in &solution.groups {
        report.exact_checked += 1;
        if !group_satisfies(g, &gens)? {
            report.exact_failures += 1;
        }
    }
    Ok(report)
}

/// Exact test that every point of the group is a zero of every polynomial.
pub fn group_satisfies(g: &PointGroup, polys: &[Poly]) -> Result<bool> {
    let ring = ResidueRing::new(&g.minpoly)?;
    let hs = g.coords.iter().map(|h| ring.from_upoly(h)).collect::<Result<Vec<_>>>()?;
    let mut values = MonomialValues::new(&ring, &hs);
    Ok(polys.iter().all(|p| values.poly(p).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use crate::tensor::{degenerate_shift, fermat_tensor};

    fn fermat_points() -> Vec<Vec<Rational>> {
        // the 15 nonempty 0/1 vectors of length 4
        let mut out = Vec::new();
        for mask in 1u32..16 {
            out.push((0..4).map(|i| rat(((mask >> (3 - i)) & 1) as i64)).collect());
        }
        out
    }

    #[test]
    fn fermat_chart_zero() {
        let t = fermat_tensor(3, 3).unwrap().to_partial();
        let sys = chart_system(&t, 0).unwrap();
        assert_eq!(sys[0], Poly::parse(3, "3 * x0^2 - 3 * x0").unwrap());
        let sol = solve_zero_dimensional(3, &sys, &SolveOptions::default()).unwrap();
        assert_eq!(sol.solutions.len(), 8);
    }

    #[test]
    fn fermat_fifteen_points() {
        let t = fermat_tensor(3, 3).unwrap().to_partial();
        let sol = eigenpoints(&t, &EigenOptions::default()).unwrap();
        assert!(sol.certified, "{:?}", sol.diagnostic);
        let mut got: Vec<Vec<Rational>> = sol.points.iter().map(|p| p.point.exact_coords().unwrap().to_vec()).collect();
        let mut want: Vec<Vec<Rational>> =
            fermat_points().into_iter().map(|v| ProjectivePoint::exact(v).unwrap().exact_coords().unwrap().to_vec()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        let report = curve_membership_check(&t, 0, 1, &sol).unwrap();
        assert!(report.holds(1e-12));
        assert_eq!(report.exact_checked, 15);
    }

    #[test]
    fn degenerate_is_positive_dimensional() {
        let h = Poly::parse(4, "x0 + x1 - x3").unwrap();
        let slices = (0..4).map(|i| &Poly::var(4, i) * &h).collect();
        let t = PartialSymTensor::new(3, 3, slices).unwrap();
        let sol = eigenpoints(&t, &EigenOptions::default()).unwrap();
        assert!(sol.positive_dimensional);
        assert!(!sol.certified);
        assert!(sol.diagnostic.is_some());
    }

    #[test]
    fn shift_and_scaling_invariance() {
        let t = fermat_tensor(2, 3).unwrap().to_partial();
        let base = eigenpoints(&t, &EigenOptions::default()).unwrap();
        assert!(base.certified);
        let scaled = eigenpoints(&t.scale(&rat(-7)), &EigenOptions::default()).unwrap();
        assert_eq!(base.projective_points(), scaled.projective_points());
        let shifted = degenerate_shift(&t, &Poly::parse(3, "x0 - 2 * x2").unwrap()).unwrap();
        let s = eigenpoints(&shifted, &EigenOptions::default()).unwrap();
        assert!(s.certified);
        assert_eq!(base.projective_points(), s.projective_points());
    }

    #[test]
    fn projective_zeros_of_a_conic_and_line() {
        // x0 x1 = x2^2 meets x2 = 0 in (1:0:0) and (0:1:0)
        let polys = [Poly::parse(3, "x0 x1 - x2^2").unwrap(), Poly::parse(3, "x2").unwrap()];
        let z = projective_zeros(3, &polys, &SolveOptions::default()).unwrap();
        let pts: Vec<_> = z.points.iter().map(|p| p.0.clone()).collect();
        assert_eq!(pts.len(), 2);
        assert!(pts.contains(&ProjectivePoint::exact(vec![rat(1), rat(0), rat(0)]).unwrap()));
        assert!(pts.contains(&ProjectivePoint::exact(vec![rat(0), rat(1), rat(0)]).unwrap()));
    }
}
