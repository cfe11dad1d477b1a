//! Dense matrices over exact rationals: arithmetic, reduced row echelon form,
//! rank, kernels, linear solving, and inverses.

use crate::par;
use crate::scalar::{int, Scalar};
use num::{One, Signed, Zero};
use std::fmt;

/// Row elimination switches to the parallel path above this many entries.
const PAR_CELLS: usize = 4096;

/// A dense `rows x cols` matrix of rationals in row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Build a matrix from integer literals: `mat![[1, 0], [0, 1]]`.
#[macro_export]
macro_rules! mat {
    ($([$($x:expr),* $(,)?]),* $(,)?) => {{
        let rows: Vec<Vec<$crate::scalar::Scalar>> =
            vec![$(vec![$($crate::scalar::int($x)),*]),*];
        let cols = rows.first().map_or(0, |r| r.len());
        $crate::mat::Mat::from_rows(cols, rows)
    }};
}

impl Mat {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    /// The `n x n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Build from explicit rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row in matrix constructor");
            data.extend(r);
        }
        Mat {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Build entrywise from a function of (row, column).
    pub fn from_fn<F: FnMut(usize, usize) -> Scalar>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    /// Borrow row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copy column `j` out as a vector.
    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Stack `other` below `self`; column counts must agree.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `other` to the right of `self`; row counts must agree.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Matrix-vector product; `v` must have length `cols`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let e = self.at(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc += e * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let rows: Vec<Vec<Scalar>> = if n * m >= PAR_CELLS {
            par::map_indexed(n, |i| {
                let mut row = vec![Scalar::zero(); m];
                for l in 0..k {
                    let a = self.at(i, l);
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let b = other.at(l, j);
                        if !b.is_zero() {
                            row[j] += a * b;
                        }
                    }
                }
                row
            })
        } else {
            (0..n)
                .map(|i| {
                    let mut row = vec![Scalar::zero(); m];
                    for l in 0..k {
                        let a = self.at(i, l);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let b = other.at(l, j);
                            if !b.is_zero() {
                                row[j] += a * b;
                            }
                        }
                    }
                    row
                })
                .collect()
        };
        Mat::from_rows(m, rows)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    /// Reduce in place to reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let cols = self.cols;
        if cols == 0 {
            return pivots;
        }
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            if !self.at(r, c).is_one() {
                let inv = self.at(r, c).recip();
                for j in c..cols {
                    if !self.at(r, j).is_zero() {
                        let v = self.at(r, j) * &inv;
                        self.set(r, j, v);
                    }
                }
            }
            let pivot_row = self.row(r).to_vec();
            let eliminate = |i: usize, row: &mut [Scalar]| {
                if i != r && !row[c].is_zero() {
                    let f = std::mem::replace(&mut row[c], Scalar::zero());
                    for j in (c + 1)..cols {
                        if !pivot_row[j].is_zero() {
                            row[j] = &row[j] - &(&f * &pivot_row[j]);
                        }
                    }
                }
            };
            if self.data.len() >= PAR_CELLS {
                par::for_each_chunk_mut(&mut self.data, cols, eliminate);
            } else {
                self.data
                    .chunks_mut(cols)
                    .enumerate()
                    .for_each(|(i, row)| eliminate(i, row));
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and pivot columns, leaving `self` untouched.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per row.
    ///
    /// The rows come out of the echelon form, so the result is canonical for
    /// a given matrix.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::new();
        for fcol in 0..self.cols {
            if is_pivot[fcol] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[fcol] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                if !r.at(i, fcol).is_zero() {
                    v[p] = -r.at(i, fcol).clone();
                }
            }
            rows.push(v);
        }
        Mat::from_rows(self.cols, rows)
    }

    /// One solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "solve length mismatch");
        let rhs = Mat::from_rows(b.len(), vec![b.to_vec()]).transpose();
        let (r, pivots) = self.hstack(&rhs).rref();
        if pivots.last().is_some_and(|&p| p == self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// The inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let (r, pivots) = self.hstack(&Mat::identity(n)).rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.at(i, n + j).clone()))
    }

    /// Determinant of a square matrix via Gaussian elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.at(c, c).clone();
            det *= &pivot;
            for i in (c + 1)..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c) / &pivot;
                for j in c..n {
                    let v = m.at(i, j) - &(&f * m.at(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Largest absolute value of any entry (useful for test diagnostics).
    pub fn max_abs(&self) -> Scalar {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scalar-from-integer shorthand re-exported next to the macro.
pub fn vec_i(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use proptest::prelude::*;

    #[test]
    fn rref_of_rank_two_matrix() {
        let m = mat![[1, 2, 3], [2, 4, 6], [1, 1, 1]];
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, mat![[1, 0, -1], [0, 1, 2], [0, 0, 0]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_vector_annihilates() {
        let m = mat![[1, 2, 3], [2, 4, 6], [1, 1, 1]];
        let k = m.kernel();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[int(1), int(-2), int(1)][..]);
        assert!(m.mul_vec(k.row(0)).iter().all(Scalar::is_zero));
    }

    #[test]
    fn kernel_of_empty_matrix_is_everything() {
        let m = Mat::zeros(0, 3);
        assert_eq!(m.kernel(), Mat::identity(3));
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = mat![[2, 1], [1, 1]];
        let inv = m.inverse().unwrap();
        assert_eq!(inv, mat![[1, -1], [-1, 2]]);
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert!(mat![[1, 2], [2, 4]].inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat![[1, 2], [3, 4]];
        let x = m.solve(&vec_i(&[5, 11])).unwrap();
        assert_eq!(x, vec_i(&[1, 2]));
        let sing = mat![[1, 1], [1, 1]];
        assert!(sing.solve(&vec_i(&[0, 1])).is_none());
        assert!(sing.solve(&vec_i(&[2, 2])).is_some());
    }

    #[test]
    fn determinant_tracks_swaps_and_fractions() {
        assert_eq!(mat![[0, 2], [3, 0]].det(), int(-6));
        let m = Mat::from_rows(
            2,
            vec![vec![frac(1, 2), int(0)], vec![int(5), frac(2, 3)]],
        );
        assert_eq!(m.det(), frac(1, 3));
        assert_eq!(mat![[1, 2], [2, 4]].det(), int(0));
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                Mat::from_fn(r, c, |i, j| int(vals[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_mat()) {
            let (r, p) = m.rref();
            let (r2, p2) = r.rref();
            prop_assert_eq!(r, r2);
            prop_assert_eq!(p, p2);
        }

        #[test]
        fn rank_is_transpose_invariant(m in small_mat()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_dimension_matches_rank(m in small_mat()) {
            let k = m.kernel();
            prop_assert_eq!(k.rows() + m.rank(), m.cols());
            for i in 0..k.rows() {
                prop_assert!(m.mul_vec(k.row(i)).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solve_returns_actual_solutions(m in small_mat(), bvals in proptest::collection::vec(-4i64..5, 1..5)) {
            if bvals.len() == m.rows() {
                let b = vec_i(&bvals);
                if let Some(x) = m.solve(&b) {
                    prop_assert_eq!(m.mul_vec(&x), b);
                }
            }
        }
    }
}
