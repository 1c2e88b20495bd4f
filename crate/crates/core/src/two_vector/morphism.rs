use std::fmt;

use super::{associator_permutation, obj_matmul, BlockPermutation, DimensionMatrix, TwoVectorError};
use crate::exact_linalg::{block_diagonal, kron, rat_inverse, Matrix};
use crate::scalar::{ExactField, Scalar};

/// A morphism of `M_n(V)`: entry `(i,j)` is a square matrix of size `D[i,j]`.
///
/// Source and target coincide (the model is skeletal), so only one
/// dimension matrix is stored.
#[derive(Clone, PartialEq)]
pub struct MorphismMatrix<T> {
    dims: DimensionMatrix,
    entries: Vec<Matrix<T>>,
}

/// Location of the first mismatch between two morphism matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryDifference<T> {
    pub entry: (usize, usize),
    pub position: (usize, usize),
    pub left: T,
    pub right: T,
}

impl<T: Scalar> MorphismMatrix<T> {
    /// Builds from row-major entries; checks shapes only.
    pub fn new(dims: DimensionMatrix, entries: Vec<Matrix<T>>) -> Result<Self, TwoVectorError> {
        let n = dims.rank();
        if entries.len() != n * n {
            return Err(TwoVectorError::EntryCount {
                expected: n * n,
                found: entries.len(),
            });
        }
        for (e, m) in entries.iter().enumerate() {
            let (i, j) = (e / n, e % n);
            let size = dims.get(i, j);
            if m.shape() != (size, size) {
                return Err(TwoVectorError::EntryShape {
                    i,
                    j,
                    expected: size,
                    found: m.shape(),
                });
            }
        }
        Ok(MorphismMatrix { dims, entries })
    }

    /// Builds from a dimension-free `n×n` array of matrices, reading the dimensions off the entries.
    pub fn from_entries(rows: Vec<Vec<Matrix<T>>>) -> Result<Self, TwoVectorError> {
        let n = rows.len();
        let mut dims = Matrix::zeros(n, n);
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(TwoVectorError::NotSquare { shape: (n, row.len()) });
            }
            for (j, m) in row.into_iter().enumerate() {
                if !m.is_square() {
                    return Err(TwoVectorError::EntryShape {
                        i,
                        j,
                        expected: m.rows(),
                        found: m.shape(),
                    });
                }
                dims[(i, j)] = m.rows();
                entries.push(m);
            }
        }
        Ok(MorphismMatrix {
            dims: DimensionMatrix::new(dims)?,
            entries,
        })
    }

    pub fn identity(dims: &DimensionMatrix) -> Self {
        let n = dims.rank();
        let entries = (0..n * n)
            .map(|e| Matrix::identity(dims.get(e / n, e % n)))
            .collect();
        MorphismMatrix { dims: dims.clone(), entries }
    }

    pub fn rank(&self) -> usize {
        self.dims.rank()
    }

    pub fn dims(&self) -> &DimensionMatrix {
        &self.dims
    }

    pub fn entry(&self, i: usize, j: usize) -> &Matrix<T> {
        &self.entries[i * self.rank() + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Matrix<T> {
        let n = self.rank();
        &mut self.entries[i * n + j]
    }

    pub fn entries(&self) -> &[Matrix<T>] {
        &self.entries
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MorphismMatrix<U> {
        MorphismMatrix {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|m| m.map(&f)).collect(),
        }
    }

    /// `self ∘ first` (entrywise matrix product, `first` applied first).
    pub fn compose(&self, first: &MorphismMatrix<T>) -> Result<Self, TwoVectorError> {
        if self.dims != first.dims {
            return Err(TwoVectorError::NotComposable {
                left: self.dims.to_string(),
                right: first.dims.to_string(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&first.entries)
            .map(|(g, f)| g.matmul(f).expect("equal sizes"))
            .collect();
        Ok(MorphismMatrix { dims: self.dims.clone(), entries })
    }

    /// Block sum `diag(self, other)` with zero-dimensional off-diagonal entries.
    pub fn block_sum(&self, other: &MorphismMatrix<T>) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let dims = self.dims.block_sum(&other.dims);
        let mut entries = Vec::with_capacity((n + m) * (n + m));
        for i in 0..n + m {
            for j in 0..n + m {
                entries.push(match (i < n, j < n) {
                    (true, true) => self.entry(i, j).clone(),
                    (false, false) => other.entry(i - n, j - n).clone(),
                    _ => Matrix::zeros(0, 0),
                });
            }
        }
        MorphismMatrix { dims, entries }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(Matrix::is_identity)
    }

    /// First entry `(i,j)` and position where `self` and `other` differ.
    pub fn first_difference(&self, other: &MorphismMatrix<T>) -> Option<EntryDifference<T>> {
        let n = self.rank();
        for (e, (a, b)) in self.entries.iter().zip(&other.entries).enumerate() {
            if let Some(pos) = a.first_difference(b) {
                return Some(EntryDifference {
                    entry: (e / n, e % n),
                    position: pos,
                    left: a[pos].clone(),
                    right: b[pos].clone(),
                });
            }
        }
        None
    }
}

impl<T: ExactField> MorphismMatrix<T> {
    /// First entry that is not invertible, in row-major order.
    pub fn singular_entry(&self) -> Option<(usize, usize)> {
        let n = self.rank();
        self.entries
            .iter()
            .position(|m| rat_inverse(m).is_err())
            .map(|e| (e / n, e % n))
    }

    pub fn inverse(&self) -> Result<Self, TwoVectorError> {
        let n = self.rank();
        let mut entries = Vec::with_capacity(n * n);
        for (e, m) in self.entries.iter().enumerate() {
            entries.push(rat_inverse(m).map_err(|_| TwoVectorError::SingularEntry { i: e / n, j: e % n })?);
        }
        Ok(MorphismMatrix { dims: self.dims.clone(), entries })
    }
}

impl<T: fmt::Debug> fmt::Debug for MorphismMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MorphismMatrix")
            .field("dims", &self.dims)
            .field("entries", &self.entries)
            .finish()
    }
}

/// Matrix product of morphisms: entry `(i,k)` is `⊕_j Φ[i,j] ⊗ Ψ[j,k]`, summed in `j` order.
pub fn mor_matmul<T: Scalar>(
    phi: &MorphismMatrix<T>,
    psi: &MorphismMatrix<T>,
) -> Result<MorphismMatrix<T>, TwoVectorError> {
    let dims = obj_matmul(&phi.dims, &psi.dims)?;
    let n = dims.rank();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            let blocks: Vec<Matrix<T>> = (0..n).map(|j| kron(phi.entry(i, j), psi.entry(j, k))).collect();
            entries.push(block_diagonal(blocks.iter()));
        }
    }
    Ok(MorphismMatrix { dims, entries })
}

/// Associativity isomorphism `D1·(D2·D3) → (D1·D2)·D3`.
pub fn associator<T: Scalar>(
    d1: &DimensionMatrix,
    d2: &DimensionMatrix,
    d3: &DimensionMatrix,
) -> Result<MorphismMatrix<T>, TwoVectorError> {
    Ok(associator_permutation(d1, d2, d3)?.to_morphism())
}

/// Inverse associator `(D1·D2)·D3 → D1·(D2·D3)`.
pub fn associator_inverse<T: Scalar>(
    d1: &DimensionMatrix,
    d2: &DimensionMatrix,
    d3: &DimensionMatrix,
) -> Result<MorphismMatrix<T>, TwoVectorError> {
    Ok(associator_permutation(d1, d2, d3)?.inverse().to_morphism())
}

/// `I_n·D → D`; the identity in this model.
pub fn left_unitor<T: Scalar>(d: &DimensionMatrix) -> MorphismMatrix<T> {
    let p = BlockPermutation::identity(&obj_matmul(&DimensionMatrix::identity(d.rank()), d).expect("same rank"));
    p.to_morphism()
}

/// `D·I_n → D`; the identity in this model.
pub fn right_unitor<T: Scalar>(d: &DimensionMatrix) -> MorphismMatrix<T> {
    let p = BlockPermutation::identity(&obj_matmul(d, &DimensionMatrix::identity(d.rank())).expect("same rank"));
    p.to_morphism()
}

/// Checks the tetrahedron equation for objects `e_ab, e_bc, e_cd` and coherence data
///
/// `φ_acd ∘ (φ_abc · id) ∘ α = φ_abd ∘ (id · φ_bcd)`,
///
/// returning the first differing entry (left side value first) or `None` if it holds.
#[allow(clippy::too_many_arguments)]
pub fn tetrahedron_defect<T: Scalar>(
    e_ab: &DimensionMatrix,
    e_bc: &DimensionMatrix,
    e_cd: &DimensionMatrix,
    phi_abc: &MorphismMatrix<T>,
    phi_abd: &MorphismMatrix<T>,
    phi_acd: &MorphismMatrix<T>,
    phi_bcd: &MorphismMatrix<T>,
) -> Result<Option<EntryDifference<T>>, TwoVectorError> {
    let alpha = associator_permutation(e_ab, e_bc, e_cd)?;
    let left = mor_matmul(phi_abc, &MorphismMatrix::identity(e_cd))?;
    let left = phi_acd.compose(&left)?;
    let left = apply_permutation(&left, &alpha)?;
    let right = mor_matmul(&MorphismMatrix::identity(e_ab), phi_bcd)?;
    let right = phi_abd.compose(&right)?;
    Ok(left.first_difference(&right))
}

/// `m ∘ p` for a block permutation `p`, by column reindexing.
fn apply_permutation<T: Scalar>(
    m: &MorphismMatrix<T>,
    p: &BlockPermutation,
) -> Result<MorphismMatrix<T>, TwoVectorError> {
    if m.dims() != p.dims() {
        return Err(TwoVectorError::NotComposable {
            left: m.dims().to_string(),
            right: p.dims().to_string(),
        });
    }
    let n = m.rank();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let a = m.entry(i, j);
            let perm = p.entry(i, j);
            // column s of (A·P) is column perm[s] of A
            entries.push(Matrix::from_fn(a.rows(), a.cols(), |r, s| a[(r, perm[s])].clone()));
        }
    }
    Ok(MorphismMatrix { dims: m.dims.clone(), entries })
}
