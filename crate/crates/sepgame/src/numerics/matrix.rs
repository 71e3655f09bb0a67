//! Dense row-major matrices over exact rationals or floats, with Gaussian
//! elimination, reduced row echelon form, rank, row-space bases, and null
//! vectors. Exact mode tests pivots against zero; float mode treats a pivot
//! as zero when |pivot| <= tol * (largest absolute entry of the original
//! matrix).

use std::ops::{Add, Div, Mul, Neg, Sub};

use num::Signed;

use super::rational::Rat;

/// Scalar operations shared by the exact and float matrix kernels.
pub trait Field:
    Clone
    + std::fmt::Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl Field for Rat {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length must equal cols");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Stack vertically; all blocks must share a column count.
    pub fn vstack(blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend(b.data.iter().cloned());
        }
        Self { rows, cols, data }
    }

    /// Copy of the matrix with one column removed.
    pub fn drop_col(&self, col: usize) -> Self {
        assert!(col < self.cols);
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c != col {
                    data.push(self.get(r, c).clone());
                }
            }
        }
        Self {
            rows: self.rows,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn max_abs(&self) -> T {
        let mut best = T::zero();
        for v in &self.data {
            let a = v.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form with partial pivoting. `negligible` decides
    /// when a candidate pivot counts as zero.
    pub fn rref_with(&self, negligible: impl Fn(&T) -> bool) -> Rref<T> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            // partial pivot: largest |entry| in this column at or below `lead`
            let mut best = lead;
            for r in lead + 1..m.rows {
                if m.get(r, col).abs() > m.get(best, col).abs() {
                    best = r;
                }
            }
            if negligible(m.get(best, col)) {
                continue;
            }
            m.swap_rows(lead, best);
            let pivot = m.get(lead, col).clone();
            for c in col..m.cols {
                let v = m.get(lead, c).clone() / pivot.clone();
                m.set(lead, c, v);
            }
            for r in 0..m.rows {
                if r == lead || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(lead, c).clone();
                    m.set(r, c, v);
                }
                m.set(r, col, T::zero());
            }
            pivot_cols.push(col);
            lead += 1;
        }
        Rref {
            matrix: m,
            pivot_cols,
        }
    }
}

impl<T: Field> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

pub struct Rref<T> {
    pub matrix: Matrix<T>,
    pub pivot_cols: Vec<usize>,
}

impl<T: Field> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Rows of the reduced form spanning the row space (the nonzero rows).
    pub fn basis_rows(&self) -> Matrix<T> {
        let r = self.rank();
        let rows = (0..r).map(|i| self.matrix.row(i).to_vec()).collect();
        Matrix::from_rows(rows)
    }

    /// One nonzero kernel vector, built from the first free column;
    /// `None` when the matrix has full column rank.
    pub fn null_vector(&self) -> Option<Vec<T>> {
        let cols = self.matrix.cols();
        let free = (0..cols).find(|c| !self.pivot_cols.contains(c))?;
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &pc) in self.pivot_cols.iter().enumerate() {
            if pc < free {
                v[pc] = -self.matrix.get(row, free).clone();
            }
        }
        Some(v)
    }
}

impl Matrix<Rat> {
    pub fn rank_exact(&self) -> usize {
        self.rref_with(|x| x.is_zero()).rank()
    }

    pub fn rref_exact(&self) -> Rref<Rat> {
        self.rref_with(|x| x.is_zero())
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(super::rational::to_f64).collect(),
        }
    }
}

impl Matrix<f64> {
    pub fn rank_float(&self, tol: f64) -> usize {
        self.rref_float(tol).rank()
    }

    pub fn rref_float(&self, tol: f64) -> Rref<f64> {
        let threshold = tol * self.max_abs();
        self.rref_with(move |x| x.abs() <= threshold)
    }
}

/// Row basis of the row space (nonzero rows of the reduced echelon form).
pub fn row_space_basis_exact(m: &Matrix<Rat>) -> Matrix<Rat> {
    m.rref_exact().basis_rows()
}

/// Nontrivial affine dependence among points: coefficients `lambda != 0`
/// with sum zero and zero weighted point sum, or `None` when the points are
/// affinely independent. `negligible` supplies the pivot zero test.
pub fn affine_dependence_with<T: Field>(
    points: &[Vec<T>],
    negligible: impl Fn(&T) -> bool,
) -> Option<Vec<T>> {
    assert!(!points.is_empty(), "need at least one point");
    let dim = points[0].len();
    assert!(points.iter().all(|p| p.len() == dim), "mixed dimensions");
    // homogeneous system: points as columns, plus a row of ones
    let mut rows = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        rows.push(points.iter().map(|p| p[d].clone()).collect());
    }
    rows.push(vec![T::one(); points.len()]);
    Matrix::from_rows(rows).rref_with(negligible).null_vector()
}

pub fn affine_dependence_exact(points: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    affine_dependence_with(points, |x: &Rat| x.is_zero())
}

pub fn affine_dependence_float(points: &[Vec<f64>], tol: f64) -> Option<Vec<f64>> {
    let scale = points
        .iter()
        .flat_map(|p| p.iter().map(|x| x.abs()))
        .fold(1.0f64, f64::max);
    affine_dependence_with(points, move |x: &f64| x.abs() <= tol * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{rat, rat_i64};

    fn rmat(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_i64).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Matrix::<Rat>::identity(3).rank_exact(), 3);
        assert_eq!(Matrix::<Rat>::zeros(4, 2).rank_exact(), 0);
        assert_eq!(Matrix::<Rat>::zeros(0, 0).rank_exact(), 0);
    }

    #[test]
    fn rank_of_printed_interaction_block() {
        // 9x3 block with rows (7,2,3),(2,4,6),0,0,0,0,(3,6,9),0,0
        let m = rmat(vec![
            vec![7, 2, 3],
            vec![2, 4, 6],
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![3, 6, 9],
            vec![0, 0, 0],
            vec![0, 0, 0],
        ]);
        assert_eq!(m.rank_exact(), 2);
    }

    #[test]
    fn row_space_basis_collapses_duplicates() {
        let m = rmat(vec![vec![1, 2], vec![2, 4]]);
        let basis = row_space_basis_exact(&m);
        assert_eq!(basis.rows(), 1);
        // spans (1,2): second entry is twice the first
        assert_eq!(
            basis.get(0, 1).clone(),
            rat_i64(2) * basis.get(0, 0).clone()
        );

        let id = Matrix::<Rat>::identity(2);
        assert_eq!(row_space_basis_exact(&id), id);
    }

    #[test]
    fn affine_dependence_on_line() {
        let pts = vec![vec![rat_i64(0)], vec![rat_i64(1)], vec![rat_i64(2)]];
        let lam = affine_dependence_exact(&pts).expect("dependent");
        let sum: Rat = lam.iter().cloned().fold(rat_i64(0), |a, b| a + b);
        assert!(sum.is_zero());
        let weighted: Rat = lam
            .iter()
            .zip(&pts)
            .map(|(l, p)| l.clone() * p[0].clone())
            .fold(rat_i64(0), |a, b| a + b);
        assert!(weighted.is_zero());
        // proportional to (1, -2, 1)
        assert_eq!(lam[0].clone() + lam[2].clone(), -lam[1].clone());
        assert_eq!(lam[0], lam[2]);
        assert!(!lam[0].is_zero());
    }

    #[test]
    fn affine_dependence_independent_cases() {
        let simplex = vec![
            vec![rat_i64(0), rat_i64(0)],
            vec![rat_i64(1), rat_i64(0)],
            vec![rat_i64(0), rat_i64(1)],
        ];
        assert!(affine_dependence_exact(&simplex).is_none());
        assert!(affine_dependence_exact(&[vec![rat(7, 3)]]).is_none());
    }

    #[test]
    fn float_rank_uses_relative_threshold() {
        let m = Matrix::new(2, 2, vec![1e6, 2e6, 0.5e6, 1e6 + 1e-5]);
        assert_eq!(m.rank_float(1e-9), 1);
        assert_eq!(m.rank_float(1e-13), 2);
    }
}
