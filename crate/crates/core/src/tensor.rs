//! Partially symmetric tensors, the eigenscheme matrix and its minors, and the
//! closed-form counts attached to a general eigenscheme.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numbers::{binomial, rat, Rational};
use crate::poly::{monomials_of_degree, Poly};

/// An `(n+1)`-tuple of forms of degree `d-1` in `n+1` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSymTensor {
    n: usize,
    d: u32,
    slices: Vec<Poly>,
}

impl PartialSymTensor {
    pub fn new(n: usize, d: u32, slices: Vec<Poly>) -> Result<Self> {
        if n < 2 || d < 2 {
            return Err(Error::InvalidArgument(format!("need n >= 2 and d >= 2, got n = {n}, d = {d}")));
        }
        if slices.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, got: slices.len() });
        }
        for s in &slices {
            if s.nvars() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, got: s.nvars() });
            }
            if !s.is_homogeneous_of_degree(d - 1) {
                return Err(Error::WrongDegree { expected: d - 1, got: describe_degree(s) });
            }
        }
        Ok(PartialSymTensor { n, d, slices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn slices(&self) -> &[Poly] {
        &self.slices
    }

    pub fn slice(&self, i: usize) -> &Poly {
        &self.slices[i]
    }

    pub fn scale(&self, c: &Rational) -> PartialSymTensor {
        PartialSymTensor { n: self.n, d: self.d, slices: self.slices.iter().map(|s| s.scale(c)).collect() }
    }

    /// True when `d_j g_i = d_i g_j` for all `i < j`, i.e. the tuple is a gradient.
    pub fn is_gradient(&self) -> bool {
        for i in 0..=self.n {
            for j in i + 1..=self.n {
                let a = self.slices[i].partial_derivative(j).expect("index in range");
                let b = self.slices[j].partial_derivative(i).expect("index in range");
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    /// The form `f = (1/d) sum x_i g_i`; its gradient is the tensor when [`Self::is_gradient`] holds.
    pub fn euler_potential(&self) -> Poly {
        let nv = self.n + 1;
        let sum = (0..nv).fold(Poly::zero(nv), |acc, i| &acc + &(&Poly::var(nv, i) * &self.slices[i]));
        sum.scale(&(Rational::from_integer(1.into()) / rat(self.d as i64)))
    }
}

fn describe_degree(p: &Poly) -> alloc::string::String {
    match p.homogeneous_degree() {
        Some(k) => k.to_string(),
        None => "inhomogeneous".into(),
    }
}

/// A form `f` of degree `d`; its tensor has slices `d_0 f, ..., d_n f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricTensor {
    n: usize,
    d: u32,
    f: Poly,
}

impl SymmetricTensor {
    pub fn new(n: usize, d: u32, f: Poly) -> Result<Self> {
        if n < 2 || d < 2 {
            return Err(Error::InvalidArgument(format!("need n >= 2 and d >= 2, got n = {n}, d = {d}")));
        }
        if f.nvars() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, got: f.nvars() });
        }
        if f.is_zero() || !f.is_homogeneous_of_degree(d) {
            return Err(Error::WrongDegree { expected: d, got: describe_degree(&f) });
        }
        Ok(SymmetricTensor { n, d, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn form(&self) -> &Poly {
        &self.f
    }

    pub fn to_partial(&self) -> PartialSymTensor {
        let slices = (0..=self.n).map(|i| self.f.partial_derivative(i).expect("index in range")).collect();
        PartialSymTensor { n: self.n, d: self.d, slices }
    }
}

/// The `2 x (n+1)` matrix with rows `(x_0..x_n)` and `(g_0..g_n)`, possibly with up to
/// two columns removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenMatrix {
    nvars: usize,
    columns: Vec<usize>,
    slices: Vec<Poly>,
}

impl EigenMatrix {
    pub fn new(t: &PartialSymTensor) -> Self {
        EigenMatrix { nvars: t.n + 1, columns: (0..=t.n).collect(), slices: t.slices.clone() }
    }

    /// The matrix with the listed columns removed (at most two).
    pub fn deleting(t: &PartialSymTensor, deleted: &[usize]) -> Result<Self> {
        if deleted.len() > 2 {
            return Err(Error::InvalidArgument("at most two columns may be deleted".into()));
        }
        if let Some(&bad) = deleted.iter().find(|&&i| i > t.n) {
            return Err(Error::IndexOutOfRange { index: bad, len: t.n + 1 });
        }
        let columns = (0..=t.n).filter(|i| !deleted.contains(i)).collect();
        Ok(EigenMatrix { nvars: t.n + 1, columns, slices: t.slices.clone() })
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn deleted(&self) -> Vec<usize> {
        (0..self.nvars).filter(|i| !self.columns.contains(i)).collect()
    }
}

/// `x_i g_j - x_j g_i` for retained columns `i < j`.
pub fn minor_ideal_generators(m: &EigenMatrix) -> Result<Vec<Poly>> {
    if m.columns.len() < 2 {
        return Err(Error::TooFewColumns(m.columns.len()));
    }
    let nv = m.nvars;
    let mut out = Vec::new();
    for (a, &i) in m.columns.iter().enumerate() {
        for &j in &m.columns[a + 1..] {
            out.push(minor(nv, &m.slices, i, j));
        }
    }
    Ok(out)
}

pub(crate) fn minor(nv: usize, slices: &[Poly], i: usize, j: usize) -> Poly {
    &(&Poly::var(nv, i) * &slices[j]) - &(&Poly::var(nv, j) * &slices[i])
}

/// `sum_{i=0}^{n} (d-1)^i`, the length of a general eigenscheme.
pub fn expected_count(n: u32, d: u32) -> u64 {
    geometric_sum(d as u64 - 1, n)
}

/// Degree of the curve cut by the minors of `M` with one column removed, `n >= 3`.
pub fn eigencurve_degree(n: u32, d: u32) -> u64 {
    geometric_sum(d as u64 - 1, n - 1)
}

/// Degree of the surface cut by the minors of `M` with two columns removed, `n >= 3`.
pub fn eigensurface_degree(n: u32, d: u32) -> u64 {
    geometric_sum(d as u64 - 1, n - 2)
}

fn geometric_sum(base: u64, top: u32) -> u64 {
    (0..=top).map(|i| base.pow(i)).sum()
}

/// Graded Betti numbers of the ideal of minors: `steps[i-1]` lists `(twist, rank)` pairs
/// for homological step `i`, twists negative and decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub steps: Vec<Vec<(i64, u64)>>,
}

impl BettiTable {
    pub fn total_rank(&self, step: usize) -> u64 {
        self.steps[step - 1].iter().map(|&(_, r)| r).sum()
    }

    /// Hilbert numerator `K(t) = 1 + sum_i (-1)^i sum_j rank t^(-twist)`, low degree first.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let top = self.steps.iter().flatten().map(|&(tw, _)| (-tw) as usize).max().unwrap_or(0);
        let mut k = vec![0i64; top + 1];
        k[0] = 1;
        for (idx, step) in self.steps.iter().enumerate() {
            let sign = if (idx + 1) % 2 == 0 { 1 } else { -1 };
            for &(tw, r) in step {
                k[(-tw) as usize] += sign * r as i64;
            }
        }
        k
    }
}

/// The Eagon–Northcott resolution: step `i` has rank `C(n+1, i+1)` at each twist
/// `-d - a - b(d-1)` with `a + b = i - 1`; equal twists are merged.
pub fn eagon_northcott_betti(n: u32, d: u32) -> Result<BettiTable> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2 and d >= 2, got n = {n}, d = {d}")));
    }
    let (n, d) = (n as i64, d as i64);
    let steps = (1..=n)
        .map(|i| {
            let rank = binomial(n as u64 + 1, i as u64 + 1);
            let mut step: Vec<(i64, u64)> = Vec::new();
            for b in 0..i {
                let a = i - 1 - b;
                let twist = -d - a - b * (d - 1);
                match step.iter_mut().find(|(t, _)| *t == twist) {
                    Some(entry) => entry.1 += rank,
                    None => step.push((twist, rank)),
                }
            }
            step.sort_by(|x, y| y.0.cmp(&x.0));
            step
        })
        .collect();
    Ok(BettiTable { steps })
}

/// Degree of the scheme resolved by `b` in `P^n`: `K(t) / (1-t)^n` evaluated at `t = 1`.
pub fn multiplicity_from_betti(b: &BettiTable, n: u32) -> Result<i64> {
    let mut k = b.hilbert_numerator();
    for round in 0..n {
        // synthetic division by (1 - t): q_j = sum_{i <= j} k_i, remainder sum k_i
        let total: i64 = k.iter().sum();
        if total != 0 {
            return Err(Error::MalformedBetti(format!(
                "numerator not divisible by (1-t)^{}; remainder {total} after {round} divisions",
                round + 1
            )));
        }
        let mut q = Vec::with_capacity(k.len().saturating_sub(1));
        let mut acc = 0;
        for &c in &k[..k.len().saturating_sub(1)] {
            acc += c;
            q.push(acc);
        }
        k = q;
    }
    Ok(k.iter().sum())
}

/// `f = x_0^d + ... + x_n^d`.
pub fn fermat_tensor(n: usize, d: u32) -> Result<SymmetricTensor> {
    if n < 2 || d < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 2 and d >= 3, got n = {n}, d = {d}")));
    }
    let nv = n + 1;
    let f = (0..nv).fold(Poly::zero(nv), |acc, i| &acc + &Poly::var(nv, i).pow(d));
    SymmetricTensor::new(n, d, f)
}

/// Slices `g_i + x_i h` for a form `h` of degree `d-2`. The minors are unchanged.
pub fn degenerate_shift(t: &PartialSymTensor, h: &Poly) -> Result<PartialSymTensor> {
    if h.nvars() != t.n + 1 {
        return Err(Error::DimensionMismatch { expected: t.n + 1, got: h.nvars() });
    }
    if !h.is_homogeneous_of_degree(t.d - 2) {
        return Err(Error::WrongDegree { expected: t.d - 2, got: describe_degree(h) });
    }
    let nv = t.n + 1;
    let slices = (0..nv).map(|i| &t.slices[i] + &(&Poly::var(nv, i) * h)).collect();
    Ok(PartialSymTensor { n: t.n, d: t.d, slices })
}

/// Tensor with integer coefficients drawn uniformly from `[-bound, bound]`.
pub fn random_tensor<R: Rng + ?Sized>(n: usize, d: u32, bound: i64, rng: &mut R) -> Result<PartialSymTensor> {
    if bound < 1 {
        return Err(Error::InvalidArgument("coefficient bound must be positive".to_string()));
    }
    let nv = n + 1;
    let monos = monomials_of_degree(nv, d.saturating_sub(1));
    let slices = (0..nv)
        .map(|_| {
            let mut p = Poly::zero(nv);
            for m in &monos {
                p.add_term(m.clone(), rat(rng.gen_range(-bound..=bound)));
            }
            p
        })
        .collect();
    PartialSymTensor::new(n, d, slices)
}

/// Symmetric tensor of a form with random integer coefficients in `[-bound, bound]`.
pub fn random_symmetric_tensor<R: Rng + ?Sized>(n: usize, d: u32, bound: i64, rng: &mut R) -> Result<SymmetricTensor> {
    if bound < 1 {
        return Err(Error::InvalidArgument("coefficient bound must be positive".to_string()));
    }
    let nv = n + 1;
    let mut f = Poly::zero(nv);
    for m in monomials_of_degree(nv, d) {
        f.add_term(m, rat(rng.gen_range(-bound..=bound)));
    }
    SymmetricTensor::new(n, d, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nv: usize, s: &str) -> Poly {
        Poly::parse(nv, s).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(expected_count(3, 3), 15);
        assert_eq!(expected_count(2, 3), 7);
        assert_eq!(expected_count(3, 4), 40);
        assert_eq!(expected_count(5, 2), 6);
        assert_eq!(eigencurve_degree(3, 3), 7);
        assert_eq!(eigensurface_degree(3, 3), 3);
        assert_eq!(eigencurve_degree(3, 4), 13);
    }

    #[test]
    fn closed_form_agrees_with_sum() {
        for n in 1..8u32 {
            for d in 3..9u32 {
                let closed = ((d as u64 - 1).pow(n + 1) - 1) / (d as u64 - 2);
                assert_eq!(expected_count(n, d), closed);
            }
        }
    }

    #[test]
    fn fermat_minors() {
        let t = fermat_tensor(3, 3).unwrap();
        assert_eq!(t.form(), &p(4, "x0^3 + x1^3 + x2^3 + x3^3"));
        let partial = t.to_partial();
        for i in 0..4 {
            assert_eq!(partial.slice(i), &Poly::var(4, i).pow(2).scale(&rat(3)));
        }
        let gens = minor_ideal_generators(&EigenMatrix::new(&partial)).unwrap();
        assert_eq!(gens.len(), 6);
        // x0 * 3 x1^2 - x1 * 3 x0^2
        assert_eq!(gens[0], p(4, "3 * x0 x1^2 - 3 * x0^2 x1"));
    }

    #[test]
    fn deleted_columns_give_subsets() {
        let t = fermat_tensor(3, 3).unwrap().to_partial();
        let full = minor_ideal_generators(&EigenMatrix::new(&t)).unwrap();
        for i in 0..4 {
            let m = EigenMatrix::deleting(&t, &[i]).unwrap();
            let gens = minor_ideal_generators(&m).unwrap();
            assert_eq!(gens.len(), 3);
            assert!(gens.iter().all(|g| full.contains(g)));
        }
        let m = EigenMatrix::deleting(&t, &[0, 1]).unwrap();
        assert_eq!(minor_ideal_generators(&m).unwrap().len(), 1);
        let m = EigenMatrix::deleting(&t, &[0, 1]).unwrap();
        assert_eq!(m.deleted(), vec![0, 1]);
        assert!(EigenMatrix::deleting(&t, &[0, 1, 2]).is_err());
    }

    #[test]
    fn too_few_columns() {
        let t = PartialSymTensor::new(2, 2, vec![p(3, "x0"), p(3, "x1"), p(3, "x2")]).unwrap();
        let m = EigenMatrix::deleting(&t, &[0, 1]).unwrap();
        assert_eq!(minor_ideal_generators(&m), Err(Error::TooFewColumns(1)));
    }

    #[test]
    fn degenerate_tensor_has_zero_minors() {
        let h = p(4, "x0 + 2 * x3");
        let slices = (0..4).map(|i| &Poly::var(4, i) * &h).collect();
        let t = PartialSymTensor::new(3, 3, slices).unwrap();
        assert!(minor_ideal_generators(&EigenMatrix::new(&t)).unwrap().iter().all(Poly::is_zero));
    }

    #[test]
    fn shift_preserves_minors() {
        let t = fermat_tensor(3, 3).unwrap().to_partial();
        let h = p(4, "x0");
        let s = degenerate_shift(&t, &h).unwrap();
        assert_eq!(minor_ideal_generators(&EigenMatrix::new(&t)), minor_ideal_generators(&EigenMatrix::new(&s)));
        let back = degenerate_shift(&s, &h.scale(&rat(-1))).unwrap();
        assert_eq!(back, t);
        assert_eq!(degenerate_shift(&t, &Poly::zero(4)).unwrap(), t);
        assert!(matches!(degenerate_shift(&t, &p(4, "x0^2")), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn betti_three_three() {
        let b = eagon_northcott_betti(3, 3).unwrap();
        assert_eq!(b.steps[0], vec![(-3, 6)]);
        assert_eq!(b.steps[1], vec![(-4, 4), (-5, 4)]);
        assert_eq!(b.steps[2], vec![(-5, 1), (-6, 1), (-7, 1)]);
        assert_eq!(multiplicity_from_betti(&b, 3).unwrap(), 15);
    }

    #[test]
    fn betti_last_step_matches_closed_twists() {
        for n in 2..7u32 {
            for d in 3..8u32 {
                let b = eagon_northcott_betti(n, d).unwrap();
                let mut want: Vec<(i64, u64)> = (0..n as i64)
                    .map(|i| (-(i + 1) * d as i64 - n as i64 + 2 * i + 1, 1))
                    .collect();
                want.sort_by(|x, y| y.0.cmp(&x.0));
                assert_eq!(b.steps[n as usize - 1], want);
                assert_eq!(b.total_rank(n as usize), n as u64);
                assert_eq!(b.steps[0], vec![(-(d as i64), binomial(n as u64 + 1, 2))]);
            }
        }
    }

    #[test]
    fn malformed_table_rejected() {
        let b = BettiTable { steps: vec![vec![(-3, 6)], vec![(-4, 4)]] };
        assert!(matches!(multiplicity_from_betti(&b, 2), Err(Error::MalformedBetti(_))));
    }

    #[test]
    fn gradient_detection() {
        let t = fermat_tensor(2, 4).unwrap();
        assert_eq!(t.form(), &p(3, "x0^4 + x1^4 + x2^4"));
        let partial = t.to_partial();
        assert!(partial.is_gradient());
        assert_eq!(&partial.euler_potential(), t.form());
        let skew = PartialSymTensor::new(2, 2, vec![p(3, "x1"), p(3, "-1 * x0"), p(3, "x2")]).unwrap();
        assert!(!skew.is_gradient());
    }
}
