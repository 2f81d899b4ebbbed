//! Tensors whose eigenscheme contains a given point set.
//!
//! A tensor `(g_0, .., g_n)` has `p` as an eigenpoint iff `x_i(p) g_j(p) - x_j(p) g_i(p)`
//! vanishes for all `i < j`. These are linear conditions on the coefficients of the
//! `g_i`, so the tensors containing a point set form the kernel of one exact matrix.
//! Tensors `(x_0 h, .., x_n h)` satisfy every condition and form the degenerate subspace.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::configuration::{subset_on_hypersurface, IncidenceReport, PointSet, NUMERIC_RANK_TOL};
use crate::eigensolver::{eigenpoints, group_satisfies, EigenOptions, EigenSolution};
use crate::error::{Error, Result};
use crate::lattice::{curve_genus_closed_form, enlargement_bound};
use crate::matrix::{numeric_rank, ExactMatrix};
use crate::numbers::{primitive_integer_vector, rat, to_complex, Rational};
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::residue::{MonomialValues, ResidueRing};
use crate::tensor::{expected_count, minor_ideal_generators, EigenMatrix, PartialSymTensor};

/// Coordinates on tuples of `n + 1` forms of degree `d - 1`. Coordinate `k * M + a` is the
/// coefficient of the `a`-th monomial (descending lex) in slice `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpaceBasis {
    n: usize,
    d: u32,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl TensorSpaceBasis {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n < 1 || d < 2 {
            return Err(Error::InvalidArgument(format!("need n >= 1 and d >= 2, got n = {n}, d = {d}")));
        }
        let monomials = monomials_of_degree(n + 1, d - 1);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(TensorSpaceBasis { n, d, monomials, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn slice_dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn dimension(&self) -> usize {
        (self.n + 1) * self.monomials.len()
    }

    fn col(&self, slice: usize, mono: &Monomial) -> usize {
        slice * self.monomials.len() + self.index[mono]
    }

    pub fn tensor_from_vector(&self, v: &[Rational]) -> Result<PartialSymTensor> {
        if v.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: v.len() });
        }
        let m = self.monomials.len();
        let slices = (0..=self.n)
            .map(|k| {
                let mut p = Poly::zero(self.n + 1);
                for (a, mono) in self.monomials.iter().enumerate() {
                    p.add_term(mono.clone(), v[k * m + a].clone());
                }
                p
            })
            .collect();
        PartialSymTensor::new(self.n, self.d, slices)
    }

    pub fn vector_from_tensor(&self, t: &PartialSymTensor) -> Result<Vec<Rational>> {
        if t.n() != self.n || t.d() != self.d {
            return Err(Error::InvalidArgument(format!("tensor is ({}, {}), basis is ({}, {})", t.n(), t.d(), self.n, self.d)));
        }
        let mut v = vec![Rational::zero(); self.dimension()];
        for (k, g) in t.slices().iter().enumerate() {
            for (mono, c) in g.terms() {
                v[self.col(k, mono)] = c.clone();
            }
        }
        Ok(v)
    }

    /// `(x_0 h, .., x_n h)` for each monomial `h` of degree `d - 2`.
    pub fn degenerate_basis(&self) -> Vec<Vec<Rational>> {
        monomials_of_degree(self.n + 1, self.d - 2)
            .iter()
            .map(|h| {
                let mut v = vec![Rational::zero(); self.dimension()];
                for k in 0..=self.n {
                    v[self.col(k, &h.mul(&Monomial::var(self.n + 1, k)))] = Rational::one();
                }
                v
            })
            .collect()
    }

    /// Rows expressing `d_j g_i - d_i g_j = 0` for all `i < j`.
    pub fn exactness_rows(&self) -> Vec<Vec<Rational>> {
        let nv = self.n + 1;
        let lower = monomials_of_degree(nv, self.d.saturating_sub(2));
        let mut rows = Vec::new();
        for i in 0..nv {
            for j in i + 1..nv {
                for b in &lower {
                    let mut row = vec![Rational::zero(); self.dimension()];
                    let e = b.exponents();
                    row[self.col(i, &b.mul(&Monomial::var(nv, j)))] += rat(e[j] as i64 + 1);
                    row[self.col(j, &b.mul(&Monomial::var(nv, i)))] -= rat(e[i] as i64 + 1);
                    rows.push(row);
                }
            }
        }
        rows
    }
}

/// Exact containment conditions for the rational points and exact groups of `points`.
/// Floating points outside every group are rejected.
pub fn containment_system(points: &PointSet, d: u32) -> Result<ExactMatrix> {
    let basis = TensorSpaceBasis::new(points.n(), d)?;
    if let Some(&i) = points.loose_float_points().first() {
        return Err(Error::InvalidArgument(format!("point {i} has floating coordinates and no exact description")));
    }
    let mut m = ExactMatrix::with_cols(basis.dimension());
    for p in points.points() {
        if let Some(c) = p.exact_coords() {
            for row in point_rows(&basis, c) {
                m.push_row(row)?;
            }
        }
    }
    for g in used_groups(points) {
        for row in group_rows(&basis, &points.groups()[g])? {
            m.push_row(row)?;
        }
    }
    Ok(m)
}

fn used_groups(points: &PointSet) -> Vec<usize> {
    let mut gs: Vec<usize> = (0..points.len()).filter_map(|i| points.group_of(i)).collect();
    gs.sort_unstable();
    gs.dedup();
    gs
}

fn point_rows(basis: &TensorSpaceBasis, p: &[Rational]) -> Vec<Vec<Rational>> {
    let values: Vec<Rational> = basis.monomials.iter().map(|m| m.evaluate(p)).collect();
    let ms = basis.slice_dimension();
    let mut rows = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let mut row = vec![Rational::zero(); basis.dimension()];
            for (a, v) in values.iter().enumerate() {
                row[j * ms + a] += &p[i] * v;
                row[i * ms + a] -= &p[j] * v;
            }
            rows.push(row);
        }
    }
    rows
}

fn point_rows_complex(basis: &TensorSpaceBasis, p: &[Complex64]) -> Vec<Vec<Complex64>> {
    let values: Vec<Complex64> = basis.monomials.iter().map(|m| m.evaluate_complex(p)).collect();
    let ms = basis.slice_dimension();
    let mut rows = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let mut row = vec![Complex64::zero(); basis.dimension()];
            for (a, v) in values.iter().enumerate() {
                row[j * ms + a] += p[i] * v;
                row[i * ms + a] -= p[j] * v;
            }
            rows.push(row);
        }
    }
    rows
}

/// Conditions for all conjugates at once: each coordinate of a minor, read in
/// `Q[t]/(minpoly)`, contributes one row per power of `t`.
fn group_rows(basis: &TensorSpaceBasis, g: &crate::point::PointGroup) -> Result<Vec<Vec<Rational>>> {
    let ring = ResidueRing::new(&g.minpoly)?;
    let deg = ring.degree();
    let nv = basis.n + 1;
    let hs = g.coords.iter().map(|h| ring.from_upoly(h)).collect::<Result<Vec<_>>>()?;
    let mut table = MonomialValues::new(&ring, &hs);
    let values: Vec<_> = basis.monomials.iter().map(|m| table.monomial(m.exponents())).collect();
    let ms = basis.slice_dimension();
    let mut rows = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            let mut block = vec![vec![Rational::zero(); basis.dimension()]; deg];
            for (a, v) in values.iter().enumerate() {
                let pj = ring.to_upoly(&ring.mul(&hs[i], v));
                let pi = ring.to_upoly(&ring.mul(&hs[j], v));
                for (k, row) in block.iter_mut().enumerate() {
                    row[j * ms + a] += pj.coeff(k);
                    row[i * ms + a] -= pi.coeff(k);
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelReport {
    pub n: usize,
    pub d: u32,
    pub symmetric: bool,
    /// Exact basis of the kernel; empty for numeric reports.
    pub basis: Vec<Vec<Rational>>,
    pub dimension: usize,
    /// `C(n + d - 2, n)`.
    pub degenerate_dimension: usize,
    /// Dimension of the degenerate tensors that are gradients (equals the above unless symmetric).
    pub effective_degenerate_dimension: usize,
    pub degenerate_contained: bool,
    pub contains_proper_tensor: bool,
    /// Dimension of the gradient tensors in the kernel.
    pub symmetric_subspace_dimension: usize,
    pub conditions: usize,
    pub numeric: bool,
    /// Kernel vectors completing the effective degenerate subspace to the whole kernel.
    pub complement: Vec<Vec<Rational>>,
}

impl KernelReport {
    /// Exact membership of a tensor in the kernel.
    pub fn contains(&self, t: &PartialSymTensor) -> Result<bool> {
        if self.numeric {
            return Err(Error::InvalidArgument("numeric kernel has no exact basis".into()));
        }
        let basis = TensorSpaceBasis::new(self.n, self.d)?;
        let v = basis.vector_from_tensor(t)?;
        let mut rows = self.basis.clone();
        rows.push(v);
        Ok(rank_of(&rows, basis.dimension()) == self.dimension)
    }
}

fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(rows.to_vec()).map(|m| m.rank()).unwrap_or(0).min(cols)
}

/// All tensors (gradients only, when `symmetric`) whose eigenscheme contains `points`.
pub fn eigenscheme_kernel(points: &PointSet, d: u32, symmetric: bool) -> Result<KernelReport> {
    let n = points.n();
    let basis = TensorSpaceBasis::new(n, d)?;
    let dim = basis.dimension();
    let degenerate = basis.degenerate_basis();
    let exactness = basis.exactness_rows();
    if !points.loose_float_points().is_empty() {
        return numeric_kernel(points, &basis, symmetric, degenerate.len(), &exactness);
    }
    let cond = containment_system(points, d)?;
    let conditions = cond.rows();
    let full = cond.kernel();
    let sym_matrix = cond.vstack(&ExactMatrix::from_rows(exactness.clone())?)?;
    let sym_kernel = sym_matrix.kernel();
    let degenerate_sym = symmetric_part(&degenerate, &exactness, dim)?;
    let (kernel, deg_eff) = if symmetric { (sym_kernel.clone(), degenerate_sym) } else { (full, degenerate.clone()) };
    let dimension = kernel.len();
    let mut rows = kernel.clone();
    rows.extend(deg_eff.iter().cloned());
    let degenerate_contained = rank_of(&rows, dim) == dimension;
    let mut span = deg_eff.clone();
    let mut complement = Vec::new();
    let mut r = rank_of(&span, dim);
    for v in &kernel {
        span.push(v.clone());
        let r2 = rank_of(&span, dim);
        if r2 > r {
            complement.push(v.clone());
            r = r2;
        } else {
            span.pop();
        }
    }
    Ok(KernelReport {
        n,
        d,
        symmetric,
        basis: kernel,
        dimension,
        degenerate_dimension: degenerate.len(),
        effective_degenerate_dimension: deg_eff.len(),
        degenerate_contained,
        contains_proper_tensor: dimension > deg_eff.len(),
        symmetric_subspace_dimension: sym_kernel.len(),
        conditions,
        numeric: false,
        complement,
    })
}

/// Basis of the gradients inside the span of `vectors`.
fn symmetric_part(vectors: &[Vec<Rational>], exactness: &[Vec<Rational>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    // rows: exactness functional applied to each vector
    let m: Vec<Vec<Rational>> = exactness.iter().map(|e| vectors.iter().map(|v| e.iter().zip(v).map(|(a, b)| a * b).sum()).collect()).collect();
    let coeffs = if m.is_empty() {
        ExactMatrix::identity(vectors.len()).row_vectors()
    } else {
        ExactMatrix::from_rows(m)?.kernel()
    };
    Ok(coeffs
        .iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); dim];
            for (ci, vi) in c.iter().zip(vectors) {
                for (x, y) in v.iter_mut().zip(vi) {
                    *x += ci * y;
                }
            }
            v
        })
        .collect())
}

fn numeric_kernel(points: &PointSet, basis: &TensorSpaceBasis, symmetric: bool, degenerate: usize, exactness: &[Vec<Rational>]) -> Result<KernelReport> {
    let dim = basis.dimension();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for p in points.points() {
        rows.extend(point_rows_complex(basis, &p.max_normalized()));
    }
    let conditions = rows.len();
    let ex: Vec<Vec<Complex64>> = exactness.iter().map(|r| r.iter().map(to_complex).collect()).collect();
    let full_dim = dim - numeric_rank(&rows, dim, NUMERIC_RANK_TOL);
    let mut with_ex = rows.clone();
    with_ex.extend(ex);
    let sym_dim = dim - numeric_rank(&with_ex, dim, NUMERIC_RANK_TOL);
    let degenerate_sym = symmetric_part(&basis.degenerate_basis(), exactness, dim)?.len();
    let (dimension, deg_eff) = if symmetric { (sym_dim, degenerate_sym) } else { (full_dim, degenerate) };
    Ok(KernelReport {
        n: basis.n,
        d: basis.d,
        symmetric,
        basis: Vec::new(),
        dimension,
        degenerate_dimension: degenerate,
        effective_degenerate_dimension: deg_eff,
        degenerate_contained: dimension >= deg_eff,
        contains_proper_tensor: dimension > deg_eff,
        symmetric_subspace_dimension: sym_dim,
        conditions,
        numeric: true,
        complement: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReconstructionOptions {
    pub seed: u64,
    pub retries: u32,
    /// Kernel coordinates are drawn from `[-bound, bound]`.
    pub coefficient_bound: i64,
    pub eigen: EigenOptions,
}

impl Default for ReconstructionOptions {
    fn default() -> Self {
        ReconstructionOptions { seed: 0, retries: 8, coefficient_bound: 10, eigen: EigenOptions::default() }
    }
}

/// A random kernel element outside the degenerate subspace, with integer coefficients.
fn draw(basis: &TensorSpaceBasis, kernel: &KernelReport, seed: u64, bound: i64) -> Result<PartialSymTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c: Vec<i64> = Vec::new();
    while c.iter().all(|&x| x == 0) {
        c = kernel.complement.iter().map(|_| rng.gen_range(-bound..=bound)).collect();
    }
    let mut v = vec![Rational::zero(); basis.dimension()];
    for (ci, w) in c.iter().zip(&kernel.complement) {
        for (x, y) in v.iter_mut().zip(w) {
            *x += rat(*ci) * y;
        }
    }
    let ints = primitive_integer_vector(&v);
    basis.tensor_from_vector(&ints.into_iter().map(Rational::from_integer).collect::<Vec<_>>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub answer: Answer,
    pub kernel: KernelReport,
    pub expected: u64,
    pub witness: Option<PartialSymTensor>,
    pub witness_solution: Option<EigenSolution>,
    pub seeds: Vec<u64>,
    pub diagnostics: Vec<String>,
}

/// Is `points` the full eigenscheme of some tensor of order `d`?
///
/// YES requires a witness whose certified eigenscheme is exactly `points`; NO means the
/// kernel is only the degenerate subspace.
pub fn is_eigenscheme(points: &PointSet, d: u32, symmetric: bool, opts: &ReconstructionOptions) -> Result<Decision> {
    let n = points.n();
    let expected = expected_count(n as u32, d);
    let kernel = eigenscheme_kernel(points, d, symmetric)?;
    let mut out = Decision { answer: Answer::Undecided, kernel, expected, witness: None, witness_solution: None, seeds: Vec::new(), diagnostics: Vec::new() };
    if points.len() as u64 != expected {
        out.diagnostics.push(format!("{} points given, an eigenscheme of order {d} in P^{n} has {expected}", points.len()));
    }
    if !out.kernel.contains_proper_tensor {
        out.answer = Answer::No;
        out.diagnostics.push("only degenerate tensors vanish on all minors at these points".into());
        return Ok(out);
    }
    if out.kernel.numeric {
        out.diagnostics.push("numeric input: kernel dimension from singular values, no exact witness".into());
        return Ok(out);
    }
    if points.len() as u64 != expected {
        return Ok(out);
    }
    let basis = TensorSpaceBasis::new(n, d)?;
    for k in 0..opts.retries {
        let seed = opts.seed.wrapping_add(k as u64);
        out.seeds.push(seed);
        let t = draw(&basis, &out.kernel, seed, opts.coefficient_bound)?;
        let eopts = EigenOptions { solve: crate::solver::SolveOptions { seed, ..opts.eigen.solve }, real_only: false };
        let sol = eigenpoints(&t, &eopts)?;
        if !sol.certified {
            out.diagnostics.push(format!("seed {seed}: witness not certified ({})", sol.diagnostic.clone().unwrap_or_default()));
            continue;
        }
        if !reproduces(points, &t, &sol)? {
            out.diagnostics.push(format!("seed {seed}: witness eigenscheme differs from the input"));
            continue;
        }
        out.answer = Answer::Yes;
        out.witness = Some(t);
        out.witness_solution = Some(sol);
        return Ok(out);
    }
    Ok(out)
}

/// The certified eigenscheme of `t` equals `points`: every input point is an exact
/// eigenpoint of `t`, the counts agree, and the point sets match numerically.
fn reproduces(points: &PointSet, t: &PartialSymTensor, sol: &EigenSolution) -> Result<bool> {
    if sol.points.len() != points.len() {
        return Ok(false);
    }
    let minors = minor_ideal_generators(&EigenMatrix::new(t))?;
    for p in points.points() {
        if let Some(c) = p.exact_coords() {
            if !minors.iter().all(|m| m.evaluate(c).is_ok_and(|v| v.is_zero())) {
                return Ok(false);
            }
        }
    }
    for g in used_groups(points) {
        if !group_satisfies(&points.groups()[g], &minors)? {
            return Ok(false);
        }
    }
    let mut used = vec![false; sol.points.len()];
    for p in points.points() {
        let hit = (0..sol.points.len()).find(|&k| !used[k] && sol.points[k].point.approx_eq(p, 1e-6));
        match hit {
            Some(k) => used[k] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Enlargement {
    pub tensor: PartialSymTensor,
    pub solution: EigenSolution,
    /// Position of each input point in `solution.points`.
    pub input_positions: Vec<usize>,
    pub seed: u64,
    pub attempts: u32,
    pub kernel: KernelReport,
}

/// Embeds rational points of `P^3` into a certified eigenscheme of order `d`.
pub fn enlarge(points: &PointSet, d: u32, opts: &ReconstructionOptions) -> Result<Enlargement> {
    if points.n() != 3 {
        return Err(Error::InvalidArgument(format!("enlargement works in P^3, got P^{}", points.n())));
    }
    if d < 3 {
        return Err(Error::InvalidArgument(format!("need d >= 3, got {d}")));
    }
    if !points.is_exact() {
        return Err(Error::InvalidArgument("enlargement needs exact rational points".into()));
    }
    let bound = enlargement_bound(d);
    if points.len() as u64 > bound {
        return Err(Error::BoundViolated { bound, got: points.len() });
    }
    let kernel = eigenscheme_kernel(points, d, false)?;
    if !kernel.contains_proper_tensor {
        return Err(Error::RetriesExhausted("no tensor beyond the degenerate ones vanishes at these points".into()));
    }
    let basis = TensorSpaceBasis::new(3, d)?;
    let mut failures = Vec::new();
    for k in 0..opts.retries {
        let seed = opts.seed.wrapping_add(k as u64);
        let t = draw(&basis, &kernel, seed, opts.coefficient_bound)?;
        let eopts = EigenOptions { solve: crate::solver::SolveOptions { seed, ..opts.eigen.solve }, real_only: false };
        let sol = eigenpoints(&t, &eopts)?;
        if !sol.certified {
            failures.push(format!("seed {seed}: not certified"));
            continue;
        }
        let positions: Option<Vec<usize>> = points.points().iter().map(|p| sol.points.iter().position(|q| q.point == *p)).collect();
        match positions {
            Some(input_positions) => {
                return Ok(Enlargement { tensor: t, solution: sol, input_positions, seed, attempts: k + 1, kernel });
            }
            None => failures.push(format!("seed {seed}: input not among the eigenpoints")),
        }
    }
    Err(Error::RetriesExhausted(failures.join("; ")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConverseReport {
    pub d: u32,
    /// `(d-1)(d^2-d+1)`
    pub threshold: usize,
    /// Search for `threshold` points on a surface of degree `d - 1`.
    pub condition_one: IncidenceReport,
    pub condition_one_holds: bool,
    pub curve_degree_target: u64,
    pub curve_genus_target: i64,
}

pub fn converse_hypothesis_report(points: &PointSet, d: u32, cap: u128) -> Result<ConverseReport> {
    if points.n() != 3 {
        return Err(Error::InvalidArgument(format!("the hypotheses concern P^3, got P^{}", points.n())));
    }
    if d < 3 {
        return Err(Error::InvalidArgument(format!("need d >= 3, got {d}")));
    }
    let expected = expected_count(3, d);
    if points.len() as u64 != expected {
        return Err(Error::Cardinality { expected, got: points.len() });
    }
    let du = d as usize;
    let curve_degree_target = (du * du - du + 1) as u64;
    let threshold = (du - 1) * (du * du - du + 1);
    let condition_one = subset_on_hypersurface(points, d - 1, threshold, cap)?;
    Ok(ConverseReport {
        d,
        threshold,
        condition_one_holds: !condition_one.found,
        condition_one,
        curve_degree_target,
        curve_genus_target: curve_genus_closed_form(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::binomial;
    use crate::point::ProjectivePoint;
    use crate::tensor::fermat_tensor;

    fn fermat_points() -> PointSet {
        let pts = (1u32..16).map(|m| ProjectivePoint::exact((0..4).map(|i| rat(((m >> i) & 1) as i64)).collect()).unwrap()).collect();
        PointSet::new(3, pts).unwrap()
    }

    #[test]
    fn basis_dimensions() {
        let b = TensorSpaceBasis::new(3, 3).unwrap();
        assert_eq!(b.dimension(), 40);
        assert_eq!(b.degenerate_basis().len(), binomial(4, 3) as usize);
        let t = fermat_tensor(3, 3).unwrap().to_partial();
        let v = b.vector_from_tensor(&t).unwrap();
        assert_eq!(b.tensor_from_vector(&v).unwrap(), t);
    }

    #[test]
    fn single_coordinate_point() {
        let p = PointSet::new(3, vec![ProjectivePoint::exact(vec![rat(1), rat(0), rat(0), rat(0)]).unwrap()]).unwrap();
        let m = containment_system(&p, 3).unwrap();
        assert_eq!(m.rows(), 6);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn empty_set_has_full_kernel() {
        let k = eigenscheme_kernel(&PointSet::new(3, Vec::new()).unwrap(), 3, false).unwrap();
        assert_eq!(k.dimension, 40);
        assert!(k.degenerate_contained);
    }

    #[test]
    fn fermat_round_trip() {
        let z = fermat_points();
        assert_eq!(containment_system(&z, 3).unwrap().rows(), 90);
        let k = eigenscheme_kernel(&z, 3, true).unwrap();
        let fermat = fermat_tensor(3, 3).unwrap().to_partial();
        assert!(k.contains(&fermat).unwrap());
        let dec = is_eigenscheme(&z, 3, true, &ReconstructionOptions::default()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        let w = dec.witness.unwrap();
        assert!(w.is_gradient());
        let x = |i| Poly::var(4, i);
        let c = w.slice(0).coefficient(&Monomial::new(vec![2, 0, 0, 0]));
        for i in 0..4 {
            assert_eq!(*w.slice(i), (&x(i) * &x(i)).scale(&c));
        }
    }

    #[test]
    fn gradient_slices_reconstruct() {
        let z = fermat_points();
        let k = eigenscheme_kernel(&z, 3, true).unwrap();
        let b = TensorSpaceBasis::new(3, 3).unwrap();
        for v in &k.basis {
            let t = b.tensor_from_vector(v).unwrap();
            assert!(t.is_gradient());
            let f = t.euler_potential();
            for i in 0..4 {
                assert_eq!(f.partial_derivative(i).unwrap(), *t.slice(i));
            }
        }
    }

    #[test]
    fn converse_targets() {
        let r = converse_hypothesis_report(&fermat_points(), 3, 1_000_000).unwrap();
        assert_eq!((r.threshold, r.curve_degree_target, r.curve_genus_target), (14, 7, 5));
        assert!(r.condition_one_holds);
        assert!(matches!(converse_hypothesis_report(&fermat_points().subset(&[0, 1]).unwrap(), 3, 10), Err(Error::Cardinality { .. })));
    }

    #[test]
    fn bound_is_checked() {
        let pts = (0..11).map(|i| ProjectivePoint::exact(vec![rat(1), rat(i), rat(i * i), rat(i * i * i)]).unwrap()).collect();
        let z = PointSet::new(3, pts).unwrap();
        assert_eq!(enlarge(&z, 3, &ReconstructionOptions::default()), Err(Error::BoundViolated { bound: 10, got: 11 }));
    }
}
