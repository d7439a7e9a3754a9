//! Exact integer matrix products: a cache-friendly naive kernel and Strassen.

use serde::{Deserialize, Serialize};

use crate::scalar::IntScalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }

    fn add(&self, other: &Self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    fn block(&self, r0: usize, c0: usize, size: usize) -> Self {
        Matrix::from_fn(size, size, |i, j| self.get(r0 + i, c0 + j))
    }

    fn padded(&self, size: usize) -> Self {
        Matrix::from_fn(size, size, |i, j| if i < self.rows && j < self.cols { self.get(i, j) } else { T::zero() })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    #[default]
    Naive,
    Strassen,
}

impl std::str::FromStr for Kernel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Kernel::Naive),
            "strassen" => Ok(Kernel::Strassen),
            other => Err(format!("unknown kernel '{other}' (expected naive|strassen)")),
        }
    }
}

pub fn multiply<T: IntScalar>(a: &Matrix<T>, b: &Matrix<T>, kernel: Kernel) -> Matrix<T> {
    match kernel {
        Kernel::Naive => naive(a, b),
        Kernel::Strassen => strassen(a, b),
    }
}

/// i-k-j loop order; zero entries of `a` are skipped (indicator matrices are sparse).
pub fn naive<T: IntScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    assert_eq!(a.cols, b.rows, "inner dimensions differ");
    let mut c = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        let out = &mut c.data[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let aik = a.data[i * a.cols + k];
            if aik.is_zero() {
                continue;
            }
            let brow = &b.data[k * b.cols..(k + 1) * b.cols];
            for (o, &bkj) in out.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    c
}

const STRASSEN_CUTOFF: usize = 32;

/// Strassen's seven-product recursion on zero-padded power-of-two squares.
pub fn strassen<T: IntScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    assert_eq!(a.cols, b.rows, "inner dimensions differ");
    let dim = a.rows.max(a.cols).max(b.cols).max(1).next_power_of_two();
    let c = strassen_square(&a.padded(dim), &b.padded(dim));
    Matrix::from_fn(a.rows, b.cols, |i, j| c.get(i, j))
}

fn strassen_square<T: IntScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.rows;
    if n <= STRASSEN_CUTOFF {
        return naive(a, b);
    }
    let h = n / 2;
    let (a11, a12, a21, a22) = (a.block(0, 0, h), a.block(0, h, h), a.block(h, 0, h), a.block(h, h, h));
    let (b11, b12, b21, b22) = (b.block(0, 0, h), b.block(0, h, h), b.block(h, 0, h), b.block(h, h, h));

    let m1 = strassen_square(&a11.add(&a22), &b11.add(&b22));
    let m2 = strassen_square(&a21.add(&a22), &b11);
    let m3 = strassen_square(&a11, &b12.sub(&b22));
    let m4 = strassen_square(&a22, &b21.sub(&b11));
    let m5 = strassen_square(&a11.add(&a12), &b22);
    let m6 = strassen_square(&a21.sub(&a11), &b11.add(&b12));
    let m7 = strassen_square(&a12.sub(&a22), &b21.add(&b22));

    let c11 = m1.add(&m4).sub(&m5).add(&m7);
    let c12 = m3.add(&m5);
    let c21 = m2.add(&m4);
    let c22 = m1.sub(&m2).add(&m3).add(&m6);

    Matrix::from_fn(n, n, |i, j| match (i < h, j < h) {
        (true, true) => c11.get(i, j),
        (true, false) => c12.get(i, j - h),
        (false, true) => c21.get(i - h, j),
        (false, false) => c22.get(i - h, j - h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reference(a: &Matrix<i64>, b: &Matrix<i64>) -> Matrix<i64> {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum())
    }

    #[test]
    fn small_product() {
        let a = Matrix::from_fn(2, 3, |i, j| (i * 3 + j) as i64);
        let b = Matrix::from_fn(3, 2, |i, j| (i as i64) - (j as i64));
        let c = naive(&a, &b);
        assert_eq!(c, reference(&a, &b));
        assert_eq!(strassen(&a, &b), c);
    }

    #[test]
    fn kernels_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &dim in &[1usize, 7, 33, 64, 100, 128] {
            let a = Matrix::from_fn(dim, dim, |_, _| rng.gen_range(-50i64..=50));
            let b = Matrix::from_fn(dim, dim, |_, _| rng.gen_range(-50i64..=50));
            let n = naive(&a, &b);
            assert_eq!(strassen(&a, &b), n, "dim {dim}");
            if dim <= 33 {
                assert_eq!(n, reference(&a, &b));
            }
        }
    }

    #[test]
    fn rectangular_strassen() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = Matrix::from_fn(40, 70, |_, _| rng.gen_range(0i32..2));
        let b = Matrix::from_fn(70, 50, |_, _| rng.gen_range(0i32..2));
        assert_eq!(strassen(&a, &b), naive(&a, &b));
    }
}
