use num_rational::Ratio;

use super::{LinalgError, Matrix};
use crate::scalar::{ExactField, IntegerScalar};

/// Exact determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det<T: IntegerScalar>(a: &Matrix<T>) -> Result<T, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { shape: a.shape() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(i, k);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[(i, j)].clone() * pivot.clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = v / prev.clone();
            }
            m[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Determinant over an exact field by Gaussian elimination.
pub fn field_det<F: ExactField>(a: &Matrix<F>) -> Result<F, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { shape: a.shape() });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut acc = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
            return Ok(F::zero());
        };
        if p != k {
            m.swap_rows(p, k);
            acc = F::zero() - acc;
        }
        let pivot = m[(k, k)].clone();
        acc = acc * pivot.clone();
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let factor = m[(i, k)].clone() / pivot.clone();
            for j in k..n {
                let v = m[(i, j)].clone() - factor.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
    }
    Ok(acc)
}

/// Exact inverse by Gauss–Jordan elimination.
pub fn rat_inverse<F: ExactField>(a: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { shape: a.shape() });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = Matrix::<F>::identity(n);
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !m[(i, k)].is_zero())
            .ok_or(LinalgError::Singular)?;
        m.swap_rows(p, k);
        inv.swap_rows(p, k);
        let pivot = m[(k, k)].clone();
        if !pivot.is_one() {
            for j in 0..n {
                m[(k, j)] = m[(k, j)].clone() / pivot.clone();
                inv[(k, j)] = inv[(k, j)].clone() / pivot.clone();
            }
        }
        for i in 0..n {
            if i == k || m[(i, k)].is_zero() {
                continue;
            }
            let factor = m[(i, k)].clone();
            for j in 0..n {
                let v = m[(i, j)].clone() - factor.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
                let w = inv[(i, j)].clone() - factor.clone() * inv[(k, j)].clone();
                inv[(i, j)] = w;
            }
        }
    }
    Ok(inv)
}

/// Embeds an integer matrix into its fraction field.
pub fn to_rational<T: IntegerScalar>(a: &Matrix<T>) -> Matrix<Ratio<T>> {
    a.map(|x| Ratio::from_integer(x.clone()))
}
