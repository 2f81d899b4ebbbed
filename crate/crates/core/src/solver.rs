//! Zero-dimensional polynomial systems over the rationals.
//!
//! The ideal is brought to a reduced Gröbner basis, and the quotient algebra is probed
//! with a sheared linear form `l`. When `l` generates the quotient and its minimal
//! polynomial is squarefree, every coordinate is a polynomial in `l` (shape position).
//! Otherwise a rational univariate representation is built from traces, which also
//! yields multiplicities. Each representation is checked by substitution modulo a
//! large prime before its roots are isolated.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, IPoly, Mono, Quotient, MAX_VARS};
use crate::matrix::{rref_of_rows, solve_integer};
use crate::numbers::{common_denominator, content, primitive_integer_vector, rat, to_f64, Rational};
use crate::poly::Poly;
use crate::roots::{coefficient_bits, horner, recover_rational_root, squarefree_roots, FixedComplex};
use crate::residue::{vanishes_modular, MonomialValues, Residue, ResidueRing};
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub seed: u64,
    /// Shears tried before giving up.
    pub shear_attempts: u32,
    /// Working precision floor for root polishing, in bits.
    pub precision_bits: u32,
    /// Largest accepted relative residual on any input polynomial.
    pub residual_tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0, shear_attempts: 8, precision_bits: 128, residual_tolerance: 1e-10 }
    }
}

/// Conjugate solutions `x_i = coords[i](t)` for `t` ranging over the roots of `minpoly`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicGroup {
    pub minpoly: UPoly,
    pub coords: Vec<UPoly>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub coords: Vec<Complex64>,
    pub exact: Option<Vec<Rational>>,
    pub multiplicity: usize,
    /// Largest relative residual over the input polynomials.
    pub residual: f64,
    /// Index into [`SystemSolution::groups`] for irrational solutions.
    pub group: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemSolution {
    pub nvars: usize,
    pub solutions: Vec<AffineSolution>,
    pub groups: Vec<AlgebraicGroup>,
    /// Dimension of the quotient algebra (total multiplicity).
    pub length: usize,
    /// Coefficients of the separating form, last variable coefficient one.
    pub shear: Vec<Rational>,
    pub attempts: u32,
}

impl SystemSolution {
    pub fn total_multiplicity(&self) -> usize {
        self.solutions.iter().map(|s| s.multiplicity).sum()
    }
}

/// Radical piece of a representation: every root of `poly` is a solution of multiplicity `mult`.
struct Piece {
    poly: UPoly,
    coords: Vec<UPoly>,
    mult: usize,
}

type Matrix = Vec<Vec<Rational>>;

fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// All isolated solutions of `system` in `nvars` unknowns, with multiplicities.
///
/// Fails with [`Error::PositiveDimensional`] when the solution set is not finite.
pub fn solve_zero_dimensional(nvars: usize, system: &[Poly], opts: &SolveOptions) -> Result<SystemSolution> {
    if nvars > MAX_VARS {
        return Err(Error::InvalidArgument(format!("at most {MAX_VARS} unknowns")));
    }
    if let Some(p) = system.iter().find(|p| p.nvars() != nvars) {
        return Err(Error::DimensionMismatch { expected: nvars, got: p.nvars() });
    }
    let ints: Vec<IPoly> = system.iter().map(IPoly::from_poly).collect::<Result<_>>()?;
    let quotient = Quotient::new(nvars, groebner_basis(&ints))?;
    let mut out = SystemSolution {
        nvars,
        solutions: Vec::new(),
        groups: Vec::new(),
        length: quotient.dimension(),
        shear: Vec::new(),
        attempts: 0,
    };
    if quotient.dimension() == 0 {
        return Ok(out);
    }
    if nvars == 0 {
        out.solutions.push(AffineSolution { coords: Vec::new(), exact: Some(Vec::new()), multiplicity: 1, residual: 0.0, group: None });
        return Ok(out);
    }

    let mults: Vec<Matrix> = (0..nvars).map(|v| quotient.multiplication_matrix(v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..opts.shear_attempts.max(1) {
        let bound = 3 + 4 * attempt as i64;
        let mut shear: Vec<Rational> = (0..nvars - 1).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
        shear.push(Rational::one());
        out.attempts = attempt + 1;
        let ml = combine(&mults, &shear);
        let pieces = match shape_position(&quotient, &ml)? {
            Some(p) => Some(p),
            None => rational_univariate(&quotient, &ml)?,
        };
        let Some(pieces) = pieces else { continue };
        if !pieces.iter().all(|p| verify_piece(system, p)) {
            continue;
        }
        out.shear = shear;
        for piece in pieces {
            isolate(system, piece, opts, &mut out)?;
        }
        out.solutions.sort_by(|a, b| compare_coords(&a.coords, &b.coords));
        if out.total_multiplicity() != out.length {
            return Err(Error::Inconsistent(format!(
                "multiplicities sum to {} but the quotient has dimension {}",
                out.total_multiplicity(),
                out.length
            )));
        }
        return Ok(out);
    }
    Err(Error::RetriesExhausted(format!("no separating form found in {} attempts", opts.shear_attempts)))
}

pub(crate) fn compare_coords(a: &[Complex64], b: &[Complex64]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.partial_cmp(&y.re).unwrap_or(core::cmp::Ordering::Equal);
        if o != core::cmp::Ordering::Equal {
            return o;
        }
        let o = x.im.partial_cmp(&y.im).unwrap_or(core::cmp::Ordering::Equal);
        if o != core::cmp::Ordering::Equal {
            return o;
        }
    }
    core::cmp::Ordering::Equal
}

fn combine(mats: &[Matrix], c: &[Rational]) -> Matrix {
    let d = mats[0].len();
    let mut out = vec![vec![Rational::zero(); d]; d];
    for (m, ci) in mats.iter().zip(c) {
        if ci.is_zero() {
            continue;
        }
        for (orow, mrow) in out.iter_mut().zip(m) {
            for (o, x) in orow.iter_mut().zip(mrow) {
                if !x.is_zero() {
                    *o += ci * x;
                }
            }
        }
    }
    out
}

/// Shape position: `1, l, ..., l^(D-1)` is a basis and the minimal polynomial of `l` is
/// squarefree. Returns `None` when either fails.
fn shape_position(q: &Quotient, ml: &Matrix) -> Result<Option<Vec<Piece>>> {
    let d = q.dimension();
    let nvars = q.nvars;
    // integer Krylov sequence: w_k = s_k * NF(l^k) with w_k primitive
    let den = common_denominator(ml.iter().flatten());
    let mint: Vec<Vec<BigInt>> =
        ml.iter().map(|row| row.iter().map(|c| c.numer() * (&den / c.denom())).collect()).collect();
    let (w0, s0) = scaled_primitive(&q.normal_form_of_monomial(Mono::one()));
    let mut krylov = vec![w0];
    let mut scale = vec![s0];
    for k in 0..d {
        let next: Vec<BigInt> = mint
            .iter()
            .map(|row| {
                row.iter().zip(&krylov[k]).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        let g = content(next.iter());
        if g.is_zero() {
            krylov.push(next);
            scale.push(Rational::zero());
            continue;
        }
        let next: Vec<BigInt> = next.into_iter().map(|x| x / &g).collect();
        scale.push(&scale[k] * Rational::new(den.clone(), g));
        krylov.push(next);
    }
    let targets: Vec<(Vec<BigInt>, Rational)> =
        (0..nvars).map(|v| scaled_primitive(&q.normal_form_of_monomial(Mono::var(v)))).collect();
    let a: Vec<Vec<BigInt>> = (0..d).map(|r| (0..d).map(|k| krylov[k][r].clone()).collect()).collect();
    let b: Vec<Vec<BigInt>> = (0..d)
        .map(|r| {
            let mut row = vec![krylov[d][r].clone()];
            row.extend(targets.iter().map(|(t, _)| t[r].clone()));
            row
        })
        .collect();
    let Some(sol) = solve_integer(&a, &b) else { return Ok(None) };
    if scale[d].is_zero() {
        return Ok(None);
    }
    // NF(l^D) = w_D / s_D = sum_k x_k w_k / s_D, so mu_k = -x_k s_k / s_D
    let mut mu: Vec<Rational> = (0..d).map(|k| -(&sol[0][k] * &scale[k] / &scale[d])).collect();
    mu.push(Rational::one());
    let mu = UPoly::new(mu);
    if !mu.is_squarefree() {
        return Ok(None);
    }
    let coords = targets
        .iter()
        .enumerate()
        .map(|(v, (_, sigma))| UPoly::new((0..d).map(|k| &sol[v + 1][k] * &scale[k] / sigma).collect()))
        .collect();
    Ok(Some(vec![Piece { poly: mu, coords, mult: 1 }]))
}

/// `(w, s)` with `w` primitive integer and `v = w / s`.
fn scaled_primitive(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let w = primitive_integer_vector(v);
    let Some(k) = v.iter().position(|x| !x.is_zero()) else { return (w, Rational::one()) };
    let s = Rational::from_integer(w[k].clone()) / &v[k];
    (w, s)
}

/// Characteristic polynomial from power sums `s_0..s_D` by Newton's identities.
fn charpoly_from_power_sums(s: &[Rational]) -> UPoly {
    let d = s.len() - 1;
    // e_0 = 1, k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} s_i
    let mut e = vec![Rational::one()];
    for k in 1..=d {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / rat(k as i64));
    }
    // chi(T) = sum_k (-1)^k e_k T^(D-k)
    let mut c = vec![Rational::zero(); d + 1];
    for (k, ek) in e.into_iter().enumerate() {
        c[d - k] = if k % 2 == 0 { ek } else { -ek };
    }
    UPoly::new(c)
}

/// Rational univariate representation from the trace form. Returns `None` when `l`
/// does not separate the solutions.
fn rational_univariate(q: &Quotient, ml: &Matrix) -> Result<Option<Vec<Piece>>> {
    let d = q.dimension();
    let nvars = q.nvars;
    // products of staircase monomials, and the trace of each basis element
    let mut products: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); d];
    for j in 0..d {
        for k in 0..d {
            let v = if k < j { products[k][j].clone() } else { q.normal_form_of_monomial(q.staircase[j].mul(&q.staircase[k])) };
            products[j].push(v);
        }
    }
    let tau: Vec<Rational> = (0..d).map(|k| (0..d).fold(Rational::zero(), |acc, j| acc + &products[k][j][j])).collect();
    let hermite: Vec<Vec<Rational>> = (0..d).map(|j| (0..d).map(|k| dot(&tau, &products[j][k])).collect()).collect();
    let distinct = rref_of_rows(hermite, d).rank();

    let power_traces = |start: Vec<Rational>, count: usize| -> Vec<Rational> {
        let mut w = start;
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            out.push(dot(&tau, &w));
            if k + 1 < count {
                w = mat_vec(ml, &w);
            }
        }
        out
    };
    let one = q.normal_form_of_monomial(Mono::one());
    let s = power_traces(one.clone(), d + 1);
    let chi = charpoly_from_power_sums(&s);
    let chibar = chi.squarefree_part()?;
    let delta = chibar.degree().unwrap_or(0);
    if delta != distinct {
        return Ok(None);
    }
    let c = chibar.coeffs().to_vec();
    let g_of = |traces: &[Rational]| -> UPoly {
        UPoly::new(
            (0..delta)
                .map(|k| ((k + 1)..=delta).fold(Rational::zero(), |acc, j| acc + &c[j] * &traces[j - k - 1]))
                .collect(),
        )
    };
    let g1 = g_of(&s[..delta]);
    let Some(g1_inv) = g1.inverse_mod(&chibar) else { return Ok(None) };
    let coords: Vec<UPoly> = (0..nvars)
        .map(|v| {
            let gv = g_of(&power_traces(q.normal_form_of_monomial(Mono::var(v)), delta));
            gv.mul_mod(&g1_inv, &chibar)
        })
        .collect::<Result<_>>()?;
    let Some(dinv) = chibar.derivative().inverse_mod(&chibar) else { return Ok(None) };
    let mult_poly = g1.mul_mod(&dinv, &chibar)?;
    let mut pieces = Vec::new();
    let mut covered = 0;
    for m in 1..=d {
        if covered == delta {
            break;
        }
        let f = chibar.gcd(&(&mult_poly - &UPoly::constant(rat(m as i64))));
        let deg = f.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        covered += deg;
        let coords = coords.iter().map(|h| h.rem(&f)).collect::<Result<_>>()?;
        pieces.push(Piece { poly: f, coords, mult: m });
    }
    if covered != delta {
        return Err(Error::Inconsistent("multiplicity classes do not cover the radical".into()));
    }
    Ok(Some(pieces))
}

/// Substitution check of a representation modulo a large prime. The representation is
/// exact by construction, so this only guards against internal errors.
fn verify_piece(system: &[Poly], piece: &Piece) -> bool {
    match vanishes_modular(system, &piece.coords, &piece.poly) {
        Some(ok) => ok,
        None => system.iter().all(|p| substitute_mod(p, &piece.coords, &piece.poly).is_ok_and(|r| r.is_zero())),
    }
}

/// `p(coords(t)) mod m`.
pub fn substitute_mod(p: &Poly, coords: &[UPoly], m: &UPoly) -> Result<UPoly> {
    let ring = ResidueRing::new(m)?;
    let hs: Vec<Residue> = coords.iter().map(|h| ring.from_upoly(h)).collect::<Result<_>>()?;
    Ok(ring.to_upoly(&substitute_in(&ring, p, &hs)))
}

fn substitute_in(ring: &ResidueRing, p: &Poly, hs: &[Residue]) -> Residue {
    MonomialValues::new(ring, hs).poly(p)
}

fn max_residual(system: &[Poly], z: &[Complex64]) -> f64 {
    system.iter().map(|p| p.relative_residual(z).unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

/// Splits off rational roots and isolates the rest numerically.
fn isolate(system: &[Poly], piece: Piece, opts: &SolveOptions, out: &mut SystemSolution) -> Result<()> {
    let coef_bits = coefficient_bits(&piece.poly)
        + piece.coords.iter().map(coefficient_bits).max().unwrap_or(0);
    let deg = piece.poly.degree().unwrap_or(0) as u32;
    let mut prec = opts.precision_bits.max(64) + coef_bits + 8 * deg;
    for _ in 0..4 {
        let roots = squarefree_roots(&piece.poly, prec)?;
        let mut rational = Vec::new();
        let mut numeric = Vec::new();
        for z in roots {
            match recover_rational_root(&piece.poly, &z, prec) {
                Some(r) => rational.push(r),
                None => numeric.push(z),
            }
        }
        let fixed_coords: Vec<Vec<FixedComplex>> = piece
            .coords
            .iter()
            .map(|h| h.coeffs().iter().map(|c| FixedComplex::from_rational(c, prec)).collect())
            .collect();
        let mut numeric_solutions = Vec::new();
        let mut ok = true;
        for z in &numeric {
            let coords: Vec<Complex64> = fixed_coords.iter().map(|h| horner(h, z, prec).to_c64(prec)).collect();
            let residual = max_residual(system, &coords);
            if !(residual <= opts.residual_tolerance) {
                ok = false;
                break;
            }
            numeric_solutions.push((coords, residual));
        }
        if !ok {
            prec *= 2;
            continue;
        }
        for r in rational.iter() {
            let exact: Vec<Rational> = piece.coords.iter().map(|h| h.eval(r)).collect();
            out.solutions.push(AffineSolution {
                coords: exact.iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect(),
                exact: Some(exact),
                multiplicity: piece.mult,
                residual: 0.0,
                group: None,
            });
        }
        if !numeric_solutions.is_empty() {
            let minpoly = rational.iter().try_fold(piece.poly.clone(), |acc, r| acc.div_exact(&UPoly::linear_root(r)))?;
            let coords = piece.coords.iter().map(|h| h.rem(&minpoly)).collect::<Result<_>>()?;
            let gi = out.groups.len();
            out.groups.push(AlgebraicGroup { minpoly, coords, multiplicity: piece.mult });
            for (coords, residual) in numeric_solutions {
                out.solutions.push(AffineSolution { coords, exact: None, multiplicity: piece.mult, residual, group: Some(gi) });
            }
        }
        return Ok(());
    }
    Err(Error::Inconsistent(format!("residual above {:e} after precision increases", opts.residual_tolerance)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(nvars: usize, polys: &[&str]) -> Vec<Poly> {
        polys.iter().map(|s| Poly::parse(nvars, s).unwrap()).collect()
    }

    #[test]
    fn grid() {
        let s = solve_zero_dimensional(2, &sys(2, &["x0^2 - x0", "x1^2 - x1"]), &SolveOptions::default()).unwrap();
        assert_eq!(s.solutions.len(), 4);
        assert!(s.solutions.iter().all(|p| p.multiplicity == 1 && p.exact.is_some()));
        let pts: Vec<Vec<Rational>> = s.solutions.iter().map(|p| p.exact.clone().unwrap()).collect();
        assert_eq!(pts, vec![vec![rat(0), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(0)], vec![rat(1), rat(1)]]);
    }

    #[test]
    fn double_point() {
        let s = solve_zero_dimensional(2, &sys(2, &["x0^2", "x1"]), &SolveOptions::default()).unwrap();
        assert_eq!(s.solutions.len(), 1);
        assert_eq!(s.solutions[0].multiplicity, 2);
        assert_eq!(s.solutions[0].exact, Some(vec![rat(0), rat(0)]));
    }

    #[test]
    fn mixed_multiplicities() {
        // (x^2 (x - 1), y - x): a double point at the origin and a simple one at (1,1)
        let s = solve_zero_dimensional(2, &sys(2, &["x0^3 - x0^2", "x1 - x0"]), &SolveOptions::default()).unwrap();
        let m: Vec<usize> = s.solutions.iter().map(|p| p.multiplicity).collect();
        assert_eq!(m, vec![2, 1]);
        assert_eq!(s.length, 3);
    }

    #[test]
    fn irrational_group() {
        let s = solve_zero_dimensional(2, &sys(2, &["x0^2 - 2", "x1 - x0 - 1"]), &SolveOptions::default()).unwrap();
        assert_eq!(s.solutions.len(), 2);
        assert_eq!(s.groups.len(), 1);
        assert_eq!(s.groups[0].minpoly.degree(), Some(2));
        for p in &s.solutions {
            assert!((p.coords[0].re.abs() - 2f64.sqrt()).abs() < 1e-14);
            assert!((p.coords[1] - p.coords[0] - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn positive_dimensional_reported() {
        let r = solve_zero_dimensional(2, &sys(2, &["x0 x1"]), &SolveOptions::default());
        assert!(matches!(r, Err(Error::PositiveDimensional(_))));
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let s = solve_zero_dimensional(1, &sys(1, &["x0", "x0 - 1"]), &SolveOptions::default()).unwrap();
        assert!(s.solutions.is_empty());
    }

    #[test]
    fn newton_identities() {
        // roots 1, 2, 3: power sums 3, 6, 14, 36
        let chi = charpoly_from_power_sums(&[rat(3), rat(6), rat(14), rat(36)]);
        assert_eq!(chi, UPoly::from_ints(&[-6, 11, -6, 1]));
    }
}
