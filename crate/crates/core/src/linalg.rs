//! Small dense real matrices: products, LU solves and symmetric eigenvalues.
//! Sizes here never exceed the experiment order (at most 10).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch(self.cols, other.rows));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum()
        }))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Solves `self * X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        let n = self.rows;
        if self.cols != n || rhs.rows != n {
            return Err(Error::DegreeMismatch(self.cols, rhs.rows));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
                .unwrap_or(k);
            if a[(p, k)].abs() <= f64::EPSILON * scale * n as f64 {
                return Err(Error::Singular);
            }
            if p != k {
                a.swap_rows(p, k);
                b.swap_rows(p, k);
            }
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                if f == 0.0 {
                    continue;
                }
                for j in k..n {
                    a[(i, j)] -= f * a[(k, j)];
                }
                for j in 0..b.cols {
                    b[(i, j)] -= f * b[(k, j)];
                }
            }
        }
        for j in 0..b.cols {
            for i in (0..n).rev() {
                let s: f64 = (i + 1..n).map(|t| a[(i, t)] * b[(t, j)]).sum();
                b[(i, j)] = (b[(i, j)] - s) / a[(i, i)];
            }
        }
        Ok(b)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    /// sorted non-increasing.
    pub fn symmetric_eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.rows;
        if self.cols != n {
            return Err(Error::DegreeMismatch(self.rows, self.cols));
        }
        let mut a = self.clone();
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)] * a[(i, j)])
                .sum();
            let diag: f64 = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum();
            if off <= 1e-30 * diag.max(f64::MIN_POSITIVE) {
                let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
                ev.sort_by(|x, y| y.total_cmp(x));
                return Ok(ev);
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        Err(Error::NoConvergence)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_recovers_inverse() {
        let a = Matrix::from_rows(&[vec![0.5, 1.0], vec![0.5, -1.0]]).unwrap();
        let inv = a.solve(&Matrix::identity(2)).unwrap();
        assert!(a.mul(&inv).unwrap().max_abs_diff(&Matrix::identity(2)) < 1e-14);
        assert!(
            inv.max_abs_diff(&Matrix::from_rows(&[vec![1.0, 1.0], vec![0.5, -0.5]]).unwrap())
                < 1e-14
        );
        let sing = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(
            sing.solve(&Matrix::identity(2)),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn jacobi_matches_hermite_roots() {
        // He_6 roots are the eigenvalues of the tridiagonal matrix with sqrt(k) off the diagonal.
        let n = 6;
        let t = Matrix::from_fn(n, n, |i, j| {
            if i.abs_diff(j) == 1 {
                (i.max(j) as f64).sqrt()
            } else {
                0.0
            }
        });
        let ev = t.symmetric_eigenvalues().unwrap();
        let expect = [
            3.324257, 1.889176, 0.616707, -0.616707, -1.889176, -3.324257,
        ];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn rank_one_spectrum() {
        let v = [1.0, -2.0, 0.5];
        let m = Matrix::from_fn(3, 3, |i, j| v[i] * v[j]);
        let ev = m.symmetric_eigenvalues().unwrap();
        assert!((ev[0] - 5.25).abs() < 1e-12);
        assert!(ev[1].abs() < 1e-12 && ev[2].abs() < 1e-12);
        assert_eq!(m.transpose(), m);
        assert!((m.trace() - 5.25).abs() < 1e-15);
    }
}
