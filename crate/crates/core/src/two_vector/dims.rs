use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::TwoVectorError;
use crate::exact_linalg::{block_diagonal, det, Matrix};

/// An object of `M_n(V)` in the skeletal model: an `n×n` matrix of fiber dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DimensionMatrix(Matrix<usize>);

impl DimensionMatrix {
    pub fn new(m: Matrix<usize>) -> Result<Self, TwoVectorError> {
        if !m.is_square() {
            return Err(TwoVectorError::NotSquare { shape: m.shape() });
        }
        Ok(DimensionMatrix(m))
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, TwoVectorError> {
        let m = Matrix::from_rows(rows).map_err(TwoVectorError::Linalg)?;
        Self::new(m)
    }

    /// The unit object `I_n`.
    pub fn identity(n: usize) -> Self {
        DimensionMatrix(Matrix::identity(n))
    }

    pub fn rank(&self) -> usize {
        self.0.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &Matrix<usize> {
        &self.0
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.0.to_rows()
    }

    pub fn to_integer(&self) -> Matrix<BigInt> {
        self.0.map(|&d| BigInt::from(d))
    }

    pub fn det(&self) -> BigInt {
        det(&self.to_integer()).expect("dimension matrices are square")
    }

    /// `det = ±1`, i.e. the object lies in `GL_n(V)`.
    pub fn is_weakly_invertible(&self) -> bool {
        self.det().abs() == BigInt::from(1)
    }

    /// Block sum `diag(self, other)`, used by the Whitney sum.
    pub fn block_sum(&self, other: &DimensionMatrix) -> DimensionMatrix {
        DimensionMatrix(block_diagonal([&self.0, &other.0]))
    }
}

impl fmt::Debug for DimensionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DimensionMatrix{}", self.0)
    }
}

impl fmt::Display for DimensionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Matrix product of objects: `(D1·D2)[i,k] = Σ_j D1[i,j]·D2[j,k]`.
pub fn obj_matmul(a: &DimensionMatrix, b: &DimensionMatrix) -> Result<DimensionMatrix, TwoVectorError> {
    if a.rank() != b.rank() {
        return Err(TwoVectorError::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    let n = a.rank();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let mut acc = 0usize;
            for j in 0..n {
                let term = a.get(i, j)
                    .checked_mul(b.get(j, k))
                    .ok_or(TwoVectorError::Overflow)?;
                acc = acc.checked_add(term).ok_or(TwoVectorError::Overflow)?;
            }
            out[(i, k)] = acc;
        }
    }
    Ok(DimensionMatrix(out))
}

/// An object of `GL_n(V)`: a dimension matrix with determinant ±1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlnObject(DimensionMatrix);

impl GlnObject {
    pub fn new(d: DimensionMatrix) -> Result<Self, TwoVectorError> {
        if d.is_weakly_invertible() {
            Ok(GlnObject(d))
        } else {
            Err(TwoVectorError::NotInvertible { det: d.det() })
        }
    }

    pub fn dims(&self) -> &DimensionMatrix {
        &self.0
    }

    pub fn mul(&self, other: &GlnObject) -> Result<GlnObject, TwoVectorError> {
        Ok(GlnObject(obj_matmul(&self.0, &other.0)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: Vec<Vec<usize>>) -> DimensionMatrix {
        DimensionMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn unit_object_is_neutral() {
        let x = d(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(obj_matmul(&x, &DimensionMatrix::identity(2)).unwrap(), x);
        assert_eq!(obj_matmul(&DimensionMatrix::identity(2), &x).unwrap(), x);
    }

    #[test]
    fn product_by_hand() {
        let a = d(vec![vec![1, 1], vec![0, 1]]);
        let b = d(vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(obj_matmul(&a, &b).unwrap(), d(vec![vec![2, 1], vec![1, 1]]));
        assert_eq!(obj_matmul(&d(vec![vec![3]]), &d(vec![vec![5]])).unwrap(), d(vec![vec![15]]));
    }

    #[test]
    fn rank_mismatch() {
        assert_eq!(
            obj_matmul(&DimensionMatrix::identity(1), &DimensionMatrix::identity(2)),
            Err(TwoVectorError::RankMismatch { left: 1, right: 2 })
        );
        assert!(DimensionMatrix::from_rows(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn gln_closed_under_product() {
        let entries = 0..=3usize;
        let all: Vec<DimensionMatrix> = itertools_product(entries)
            .into_iter()
            .map(|v| d(vec![vec![v[0], v[1]], vec![v[2], v[3]]]))
            .filter(DimensionMatrix::is_weakly_invertible)
            .collect();
        assert!(!all.is_empty());
        for a in &all {
            for b in &all {
                let ga = GlnObject::new(a.clone()).unwrap();
                let gb = GlnObject::new(b.clone()).unwrap();
                assert!(ga.mul(&gb).is_ok());
            }
        }
        assert!(GlnObject::new(d(vec![vec![1, 1], vec![1, 1]])).is_err());
    }

    fn itertools_product(r: std::ops::RangeInclusive<usize>) -> Vec<[usize; 4]> {
        let v: Vec<usize> = r.collect();
        let mut out = Vec::new();
        for &a in &v {
            for &b in &v {
                for &c in &v {
                    for &e in &v {
                        out.push([a, b, c, e]);
                    }
                }
            }
        }
        out
    }
}
