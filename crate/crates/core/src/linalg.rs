//! Dense Gaussian elimination over any [`Scalar`] field.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("system is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Solves `A x = b` with partial pivoting on absolute value.
/// For exact scalars the result is exact.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>, LinalgError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(LinalgError::Dimension(format!("{}x? matrix with rhs of length {}", n, b.len())));
    }
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).expect("comparable"))
            .ok_or(LinalgError::Singular)?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col][col..].iter_mut() {
            *x = x.clone() / p.clone();
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.clone() - factor.clone() * pv.clone();
            }
        }
    }
    Ok(m.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}
