//! Dense row-major matrices and the handful of vector helpers the solvers need.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Builds a matrix from nested rows. Returns `None` for ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Some(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for k in 0..cols {
                data.push(f(i, k));
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.data[i * self.cols + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, k: usize, v: f64) {
        self.data[i * self.cols + k] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.data.iter()
    }

    /// `M v`
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `vᵀ M`
    pub fn vec_mul(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o += vi * m;
            }
        }
        out
    }

    /// `xᵀ M y`
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        dot(x, &self.mul_vec(y))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn max_norm_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Outcome of a dense square solve.
#[derive(Debug, Clone)]
pub struct LinearSolve {
    pub solution: Vec<f64>,
    /// Infinity-norm of `M z - rhs`.
    pub residual: f64,
    /// True when LU failed and the minimum-norm least-squares solution was used.
    pub least_squares: bool,
}

/// Solves `M z = rhs` for square `M` (row-major, `n × n`).
///
/// Falls back to an SVD least-squares solve when the matrix is singular or
/// badly conditioned; the caller decides whether the residual is acceptable.
pub fn solve_square(n: usize, m: &[f64], rhs: &[f64]) -> LinearSolve {
    let mat = DMatrix::from_row_slice(n, n, m);
    let b = DVector::from_column_slice(rhs);
    let scale = mat.iter().fold(1.0_f64, |s, v| s.max(v.abs()));

    let lu = mat.clone().lu();
    let upper = lu.u();
    let min_pivot = (0..n).fold(f64::INFINITY, |p, i| p.min(upper[(i, i)].abs()));
    if min_pivot > 1e-10 * scale {
        if let Some(z) = lu.solve(&b) {
            if z.iter().all(|v| v.is_finite()) {
                let residual = (&mat * &z - &b).amax();
                return LinearSolve {
                    solution: z.iter().copied().collect(),
                    residual,
                    least_squares: false,
                };
            }
        }
    }

    let svd = mat.clone().svd(true, true);
    let eps = 1e-10 * scale;
    let z = svd
        .solve(&b, eps)
        .unwrap_or_else(|_| DVector::zeros(n));
    let residual = (&mat * &z - &b).amax();
    LinearSolve {
        solution: z.iter().copied().collect(),
        residual,
        least_squares: true,
    }
}
