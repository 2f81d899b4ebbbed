//! Dense exact matrices over the rationals.
//!
//! Rank and kernel go through a fraction-free integer echelon form: every row is
//! scaled to a primitive integer vector, and elimination uses cross-multiplication
//! followed by content removal. Pivot choice is deterministic (smallest entry by bit
//! length, ties broken by row index), so results are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{content, primitive_integer_vector, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form: rows are normalized so that each pivot is one.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: bad.len() });
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix with `cols` columns and no rows yet.
    pub fn with_cols(cols: usize) -> Self {
        ExactMatrix { rows: 0, cols, data: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<Rational>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: row.len() });
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rows stacked on top of each other; column counts must agree.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rank(&self) -> usize {
        integer_echelon(self.row_vectors().iter().map(|r| primitive_integer_vector(r)).collect(), self.cols).1.len()
    }

    pub fn rref(&self) -> Rref {
        rref_of_rows(self.row_vectors(), self.cols)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.rref().kernel()
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -row[free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Number of singular values above `rel_tol` times the largest one.
pub fn numeric_rank(rows: &[Vec<Complex64>], cols: usize, rel_tol: f64) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c]);
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Reduced row echelon form of the given rows.
pub fn rref_of_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Rref {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_integer_vector(r)).collect();
    let (mut echelon, pivots) = integer_echelon(ints, cols);
    // fraction-free back substitution, bottom to top
    for i in (0..echelon.len()).rev() {
        let p = pivots[i];
        let (upper, lower) = echelon.split_at_mut(i);
        let pivot_row = &lower[0];
        for row in upper.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let g = pivot_row[p].gcd(&row[p]);
            let a = &pivot_row[p] / &g;
            let b = &row[p] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &a * &*x - &b * y;
            }
            let c = content(row.iter());
            if !c.is_zero() && !c.is_one() {
                row.iter_mut().for_each(|x| *x = &*x / &c);
            }
        }
    }
    let out = echelon
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = Rational::from_integer(row[p].clone());
            row.into_iter().map(|x| Rational::from_integer(x) / &lead).collect()
        })
        .collect();
    Rref { rows: out, pivots, cols }
}

/// Fraction-free row echelon form. Returns the nonzero echelon rows (primitive, with
/// positive pivots) and their pivot columns.
pub(crate) fn integer_echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top >= rows.len() {
            break;
        }
        let best = (top..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| (rows[r][c].bits(), r));
        let Some(best) = best else { continue };
        rows.swap(top, best);
        if rows[top][c].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        let (head, tail) = rows.split_at_mut(top + 1);
        let pivot_row = &head[top];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let a = pivot / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                *x = &a * &*x - &b * y;
            }
            let g = content(row.iter());
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        pivots.push(c);
        top += 1;
        rows[top..].sort_by_key(|r| r.iter().all(Zero::is_zero));
        while rows.last().is_some_and(|r| r.iter().all(Zero::is_zero)) {
            rows.pop();
        }
    }
    rows.truncate(pivots.len());
    (rows, pivots)
}

/// Solves `a x = b` for square integer `a` by fraction-free Gauss–Jordan elimination.
/// Each right-hand side is a column of `b` (given row by row). Returns `None` when `a`
/// is singular; otherwise the solution columns, one `Vec` per right-hand side.
pub fn solve_integer(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let r = b.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigInt>> = a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect();
    let cols = n + r;
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).filter(|&i| !aug[i][k].is_zero()).min_by_key(|&i| (aug[i][k].bits(), i))?;
        aug.swap(k, p);
        let pivot_row = aug[k].clone();
        let pivot = &pivot_row[k];
        for (i, row) in aug.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k].clone();
            for j in 0..cols {
                if j == k {
                    continue;
                }
                let v = pivot * &row[j] - &f * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let det = Rational::from_integer(prev);
    Some((0..r).map(|c| (0..n).map(|i| Rational::from_integer(aug[i][n + c].clone()) / &det).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, ratio};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_has_empty_kernel() {
        assert!(ExactMatrix::identity(3).kernel().is_empty());
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn one_by_two_kernel() {
        let k = m(&[&[1, 1]]).kernel();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = ExactMatrix::from_rows(vec![
            vec![rat(2), ratio(1, 3), rat(0), rat(5)],
            vec![rat(4), ratio(2, 3), rat(1), rat(10)],
            vec![rat(0), rat(0), rat(1), rat(0)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn empty_matrix() {
        let a = ExactMatrix::with_cols(3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel().len(), 3);
    }

    #[test]
    fn numeric_rank_thresholds() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let rows = vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 2.0), c(-2.0, 0.0)]];
        assert_eq!(numeric_rank(&rows, 2, 1e-8), 1);
        let rows = vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 2.0), c(-2.0, 1e-6)]];
        assert_eq!(numeric_rank(&rows, 2, 1e-8), 2);
        assert_eq!(numeric_rank(&[], 3, 1e-8), 0);
    }

    #[test]
    fn integer_solve() {
        let ints = |rows: &[[i64; 3]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        let a = ints(&[[0, 2, 1], [1, 1, 0], [3, 0, 5]]);
        let b: Vec<Vec<BigInt>> = [[-7i64, 1], [-2, 1], [11, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(x[0], vec![rat(2), rat(-4), rat(1)]);
        // second column: the product with `a` must give back (1, 1, 1)
        let am = ExactMatrix::from_rows(a.iter().map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect()).collect()).unwrap();
        assert_eq!(am.mul_vec(&x[1]).unwrap(), vec![rat(1), rat(1), rat(1)]);
        assert!(x[1].iter().any(|v| !v.is_integer()));
        let singular = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(2), BigInt::from(4)]];
        assert!(solve_integer(&singular, &[vec![BigInt::from(1)], vec![BigInt::from(1)]]).is_none());
    }

    #[test]
    fn rref_is_reduced() {
        let r = m(&[&[2, 4, 6], &[1, 3, 5]]).rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rows[0], vec![rat(1), rat(0), rat(-1)]);
        assert_eq!(r.rows[1], vec![rat(0), rat(1), rat(2)]);
    }
}
