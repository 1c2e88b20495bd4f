use super::{DimensionMatrix, MorphismMatrix, TwoVectorError};
use crate::exact_linalg::Matrix;
use crate::scalar::Scalar;

/// A morphism matrix whose entries are all permutation matrices, stored as
/// index maps (`perm[s] = t` sends basis vector `s` to `t`).
///
/// Coherence isomorphisms of the skeletal model are of this form, so the
/// coherence laws can be checked on index maps without any scalar arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPermutation {
    dims: DimensionMatrix,
    entries: Vec<Vec<usize>>,
}

fn kron_perm(p: &[usize], q: &[usize]) -> Vec<usize> {
    let r = q.len();
    let mut out = Vec::with_capacity(p.len() * r);
    for &x in p {
        for &y in q {
            out.push(x * r + y);
        }
    }
    out
}

impl BlockPermutation {
    pub fn identity(dims: &DimensionMatrix) -> Self {
        let n = dims.rank();
        let entries = (0..n * n)
            .map(|e| (0..dims.get(e / n, e % n)).collect())
            .collect();
        BlockPermutation { dims: dims.clone(), entries }
    }

    pub fn dims(&self) -> &DimensionMatrix {
        &self.dims
    }

    pub fn entry(&self, i: usize, j: usize) -> &[usize] {
        &self.entries[i * self.dims.rank() + j]
    }

    /// `self ∘ first`, with `first` applied first.
    pub fn compose(&self, first: &BlockPermutation) -> Result<Self, TwoVectorError> {
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
            .map(|(g, f)| f.iter().map(|&s| g[s]).collect())
            .collect();
        Ok(BlockPermutation { dims: self.dims.clone(), entries })
    }

    pub fn inverse(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (s, &t) in p.iter().enumerate() {
                    inv[t] = s;
                }
                inv
            })
            .collect();
        BlockPermutation { dims: self.dims.clone(), entries }
    }

    /// Matrix product of two block permutations (same convention as [`super::mor_matmul`]).
    pub fn matmul(&self, other: &BlockPermutation) -> Result<Self, TwoVectorError> {
        let dims = super::obj_matmul(&self.dims, &other.dims)?;
        let n = dims.rank();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let mut acc = Vec::with_capacity(dims.get(i, k));
                for j in 0..n {
                    let offset = acc.len();
                    acc.extend(
                        kron_perm(self.entry(i, j), other.entry(j, k))
                            .into_iter()
                            .map(|t| t + offset),
                    );
                }
                entries.push(acc);
            }
        }
        Ok(BlockPermutation { dims, entries })
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .all(|p| p.iter().enumerate().all(|(s, &t)| s == t))
    }

    pub fn to_morphism<T: Scalar>(&self) -> MorphismMatrix<T> {
        let entries = self.entries.iter().map(|p| Matrix::permutation(p)).collect();
        MorphismMatrix::new(self.dims.clone(), entries).expect("shapes match by construction")
    }
}

/// The associator `D1·(D2·D3) → (D1·D2)·D3` as index maps.
///
/// Entry `(i,l)` of the source is `⊕_j D1[i,j] ⊗ (⊕_k D2[j,k] ⊗ D3[k,l])`,
/// whose basis vectors are tuples `(j, a, k, b, c)` in that lexicographic
/// order; the target orders the same tuples as `(k, j, a, b, c)`.
pub fn associator_permutation(
    d1: &DimensionMatrix,
    d2: &DimensionMatrix,
    d3: &DimensionMatrix,
) -> Result<BlockPermutation, TwoVectorError> {
    let d23 = super::obj_matmul(d2, d3)?;
    let d12 = super::obj_matmul(d1, d2)?;
    let dims = super::obj_matmul(d1, &d23)?;
    let n = dims.rank();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for l in 0..n {
            // offset of summand k in the target, and of (j within k)
            let mut k_offset = vec![0usize; n];
            let mut acc = 0;
            for k in 0..n {
                k_offset[k] = acc;
                acc += d12.get(i, k) * d3.get(k, l);
            }
            let mut j_in_k = vec![vec![0usize; n]; n];
            for k in 0..n {
                let mut acc = 0;
                for j in 0..n {
                    j_in_k[j][k] = acc;
                    acc += d1.get(i, j) * d2.get(j, k);
                }
            }
            let mut perm = Vec::with_capacity(dims.get(i, l));
            for j in 0..n {
                for a in 0..d1.get(i, j) {
                    for k in 0..n {
                        let (b_len, c_len) = (d2.get(j, k), d3.get(k, l));
                        for b in 0..b_len {
                            for c in 0..c_len {
                                let inner = j_in_k[j][k] + a * b_len + b;
                                perm.push(k_offset[k] + inner * c_len + c);
                            }
                        }
                    }
                }
            }
            entries.push(perm);
        }
    }
    Ok(BlockPermutation { dims, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: Vec<Vec<usize>>) -> DimensionMatrix {
        DimensionMatrix::from_rows(rows).unwrap()
    }

    fn all_rank2(max: usize) -> Vec<DimensionMatrix> {
        let mut out = Vec::new();
        for e in 0..(max + 1).pow(4) {
            let mut v = [0usize; 4];
            let mut r = e;
            for x in v.iter_mut() {
                *x = r % (max + 1);
                r /= max + 1;
            }
            out.push(d(vec![vec![v[0], v[1]], vec![v[2], v[3]]]));
        }
        out
    }

    fn is_bijection(p: &[usize]) -> bool {
        let mut seen = vec![false; p.len()];
        p.iter().all(|&t| t < p.len() && !std::mem::replace(&mut seen[t], true))
    }

    fn pentagon_holds(a: &DimensionMatrix, b: &DimensionMatrix, c: &DimensionMatrix, e: &DimensionMatrix) -> bool {
        let ab = crate::two_vector::obj_matmul(a, b).unwrap();
        let bc = crate::two_vector::obj_matmul(b, c).unwrap();
        let cd = crate::two_vector::obj_matmul(c, e).unwrap();
        let id_a = BlockPermutation::identity(a);
        let id_d = BlockPermutation::identity(e);
        let lhs = associator_permutation(a, b, c)
            .unwrap()
            .matmul(&id_d)
            .unwrap()
            .compose(&associator_permutation(a, &bc, e).unwrap())
            .unwrap()
            .compose(&id_a.matmul(&associator_permutation(b, c, e).unwrap()).unwrap())
            .unwrap();
        let rhs = associator_permutation(&ab, c, e)
            .unwrap()
            .compose(&associator_permutation(a, b, &cd).unwrap())
            .unwrap();
        lhs == rhs
    }

    #[test]
    fn associator_entries_are_bijections() {
        let objs = all_rank2(1);
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    let p = associator_permutation(a, b, c).unwrap();
                    for e in &p.entries {
                        assert!(is_bijection(e));
                    }
                }
            }
        }
    }

    #[test]
    fn pentagon_exhaustive_entries_at_most_one() {
        let objs = all_rank2(1);
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    for e in &objs {
                        assert!(pentagon_holds(a, b, c, e), "{a} {b} {c} {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let a = d(vec![vec![2, 1], vec![0, 2]]);
        let b = d(vec![vec![1, 2], vec![2, 1]]);
        let p = associator_permutation(&a, &b, &a).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
        assert!(!p.is_identity());
    }
}
