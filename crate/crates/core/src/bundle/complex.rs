use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use super::BundleError;
use crate::exact_linalg::Matrix;

/// A finite simplicial complex on totally ordered integer vertex labels.
///
/// Simplices are stored as strictly increasing vertex lists and the set is
/// closed under taking faces; vertices are the 0-simplices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedComplex {
    vertices: Vec<usize>,
    /// `by_dim[k]` holds the k-simplices in lexicographic order
    by_dim: Vec<Vec<Vec<usize>>>,
}

impl OrderedComplex {
    /// Builds a complex from its vertex list and simplices of dimension ≥ 1.
    ///
    /// The simplex list must already be closed under faces.
    pub fn new(vertices: Vec<usize>, simplices: Vec<Vec<usize>>) -> Result<Self, BundleError> {
        let vset: BTreeSet<usize> = vertices.iter().copied().collect();
        if vset.len() != vertices.len() {
            return Err(BundleError::Complex("duplicate vertex".into()));
        }
        let mut set: BTreeSet<Vec<usize>> = vset.iter().map(|&v| vec![v]).collect();
        for s in &simplices {
            if s.is_empty() {
                return Err(BundleError::Complex("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(BundleError::Complex(format!(
                    "simplex {} is not strictly increasing",
                    fmt_simplex(s)
                )));
            }
            if let Some(v) = s.iter().find(|v| !vset.contains(v)) {
                return Err(BundleError::Complex(format!(
                    "simplex {} uses unknown vertex {v}",
                    fmt_simplex(s)
                )));
            }
            set.insert(s.clone());
        }
        for s in &set {
            if s.len() > 1 {
                for face in faces(s) {
                    if !set.contains(&face) {
                        return Err(BundleError::Complex(format!(
                            "face {} of {} is missing",
                            fmt_simplex(&face),
                            fmt_simplex(s)
                        )));
                    }
                }
            }
        }
        Ok(Self::from_closed_set(set))
    }

    /// Builds the smallest complex containing the given simplices.
    pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self, BundleError> {
        let mut set = BTreeSet::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) || s.is_empty() {
                return Err(BundleError::Complex(format!("bad facet {}", fmt_simplex(f))));
            }
            for mask in 1u64..(1u64 << s.len()) {
                set.insert(
                    s.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect::<Vec<_>>(),
                );
            }
        }
        Ok(Self::from_closed_set(set))
    }

    fn from_closed_set(set: BTreeSet<Vec<usize>>) -> Self {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in set {
            let k = s.len() - 1;
            if by_dim.len() <= k {
                by_dim.resize(k + 1, Vec::new());
            }
            by_dim[k].push(s);
        }
        let vertices = by_dim.first().map(|v| v.iter().map(|s| s[0]).collect()).unwrap_or_default();
        OrderedComplex { vertices, by_dim }
    }

    /// The full simplex on `0..=n`.
    pub fn simplex(n: usize) -> Self {
        Self::from_facets(&[(0..=n).collect()]).expect("valid facet")
    }

    /// The boundary of the `n`-simplex on `0..=n`.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets: Vec<Vec<usize>> = (0..=n)
            .map(|skip| (0..=n).filter(|&v| v != skip).collect())
            .collect();
        Self::from_facets(&facets).expect("valid facets")
    }

    /// Suspension with two new apex vertices labelled after the existing ones.
    pub fn suspension(&self) -> Self {
        let top = self.vertices.last().map_or(0, |v| v + 1);
        let mut facets = Vec::new();
        for s in self.simplices() {
            for apex in [top, top + 1] {
                let mut f = s.to_vec();
                f.push(apex);
                facets.push(f);
            }
        }
        if facets.is_empty() {
            facets = vec![vec![top], vec![top + 1]];
        }
        Self::from_facets(&facets).expect("valid facets")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// The `k`-simplices in lexicographic order.
    pub fn simplices_of_dim(&self, k: usize) -> &[Vec<usize>] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    /// All simplices of dimension ≥ 1, by dimension then lexicographically.
    pub fn higher_simplices(&self) -> impl Iterator<Item = &[usize]> {
        self.by_dim.iter().skip(1).flatten().map(|s| s.as_slice())
    }

    /// All simplices, by dimension then lexicographically.
    pub fn simplices(&self) -> impl Iterator<Item = &[usize]> {
        self.by_dim.iter().flatten().map(|s| s.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices_of_dim(k).len()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        s.len()
            .checked_sub(1)
            .and_then(|k| self.by_dim.get(k))
            .is_some_and(|v| v.binary_search_by(|x| x.as_slice().cmp(s)).is_ok())
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let k = s.len().checked_sub(1)?;
        self.by_dim.get(k)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    /// Sparse boundary `∂_k`: for each k-simplex, its `(row, ±1)` entries over the
    /// (k-1)-simplices, sorted by row.
    pub fn boundary_columns(&self, k: usize) -> Vec<Vec<(usize, BigInt)>> {
        if k == 0 {
            return vec![Vec::new(); self.count(0)];
        }
        self.simplices_of_dim(k)
            .iter()
            .map(|s| {
                let mut col: Vec<(usize, BigInt)> = faces(s)
                    .enumerate()
                    .map(|(i, f)| {
                        let row = self.index_of(&f).expect("closed under faces");
                        (row, if i % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) })
                    })
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect()
    }

    /// Dense `∂_k` with rows indexed by (k-1)-simplices and columns by k-simplices.
    pub fn boundary_matrix(&self, k: usize) -> Matrix<BigInt> {
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let cols = self.boundary_columns(k);
        let mut m = Matrix::zeros(rows, cols.len());
        for (c, col) in cols.into_iter().enumerate() {
            for (r, v) in col {
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Dense coboundary `δ^k = ∂_{k+1}ᵀ` from k-cochains to (k+1)-cochains.
    pub fn coboundary_matrix(&self, k: usize) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.count(k + 1), self.count(k));
        for (r, col) in self.boundary_columns(k + 1).into_iter().enumerate() {
            for (c, v) in col {
                m[(r, c)] = v;
            }
        }
        m
    }
}

/// Codimension-one faces of a simplex, the i-th omitting vertex i.
pub fn faces(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        f
    })
}

/// Formats a simplex as `(0,1,2)`.
pub fn fmt_simplex(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Debug for OrderedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.by_dim.iter().map(Vec::len).collect();
        write!(f, "OrderedComplex {{ vertices: {:?}, counts: {counts:?} }}", self.vertices)
    }
}

/// Nerve of a cover of `complex` by vertex subsets; nerve vertex `i` is `cover[i]`.
///
/// A family of members spans a simplex when some simplex of `complex`
/// meets every member of the family.
pub fn cover_nerve(complex: &OrderedComplex, cover: &[Vec<usize>]) -> Result<OrderedComplex, BundleError> {
    for (i, member) in cover.iter().enumerate() {
        if member.is_empty() {
            return Err(BundleError::Cover(format!("cover member {i} is empty")));
        }
        if let Some(v) = member.iter().find(|v| !complex.contains(&[**v])) {
            return Err(BundleError::Cover(format!("cover member {i} contains unknown vertex {v}")));
        }
    }
    if let Some(v) = complex.vertices().iter().find(|v| !cover.iter().any(|m| m.contains(v))) {
        return Err(BundleError::Cover(format!("vertex {v} is not covered")));
    }
    let mut families: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in complex.simplices() {
        let meeting: Vec<usize> = (0..cover.len())
            .filter(|&i| cover[i].iter().any(|v| s.contains(v)))
            .collect();
        families.insert(meeting);
    }
    // keep only maximal families before closing under faces
    let maximal: Vec<Vec<usize>> = families
        .iter()
        .filter(|f| !families.iter().any(|g| g.len() > f.len() && f.iter().all(|x| g.contains(x))))
        .cloned()
        .collect();
    let mut nerve = OrderedComplex::from_facets(&maximal)?;
    // members meeting no simplex cannot occur once every vertex is covered
    debug_assert_eq!(nerve.count(0), cover.len());
    nerve.vertices = (0..cover.len()).collect();
    Ok(nerve)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let b = OrderedComplex::simplex_boundary(3);
        assert_eq!((b.count(0), b.count(1), b.count(2), b.count(3)), (4, 6, 4, 0));
        let s = OrderedComplex::simplex(4);
        assert_eq!(s.count(2), 10);
        assert_eq!(s.dimension(), Some(4));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s = OrderedComplex::simplex(4);
        for k in 1..4 {
            let p = s.boundary_matrix(k).matmul(&s.boundary_matrix(k + 1)).unwrap();
            assert!(p.is_zero_matrix());
        }
    }

    #[test]
    fn rejects_open_sets() {
        assert!(OrderedComplex::new(vec![0, 1, 2], vec![vec![0, 1, 2]]).is_err());
        assert!(OrderedComplex::new(vec![0, 1], vec![vec![0, 2]]).is_err());
        assert!(OrderedComplex::new(vec![0, 1], vec![vec![1, 0]]).is_err());
        let ok = OrderedComplex::new(vec![0, 1, 2], vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(ok, OrderedComplex::simplex(2));
    }

    #[test]
    fn nerves() {
        let b = OrderedComplex::simplex_boundary(3);
        let point = cover_nerve(&b, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(point, OrderedComplex::simplex(0));
        let stars: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
        assert_eq!(cover_nerve(&b, &stars).unwrap(), b);
        let two = OrderedComplex::new(vec![0, 1], vec![]).unwrap();
        let n = cover_nerve(&two, &[vec![0], vec![1]]).unwrap();
        assert_eq!((n.count(0), n.count(1)), (2, 0));
        assert!(cover_nerve(&b, &[vec![0, 1, 2, 3], vec![]]).is_err());
        assert!(cover_nerve(&b, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn suspension_of_point_pair() {
        let s = OrderedComplex::simplex_boundary(1).suspension();
        assert_eq!((s.count(0), s.count(1), s.count(2)), (4, 4, 0));
    }
}
