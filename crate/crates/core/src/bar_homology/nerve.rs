use std::collections::HashMap;

use num_bigint::BigInt;

use super::homology::{chain_homology, HomologyResult, SparseColumns};
use super::{BarError, FiniteMonoid, SmallCategory};

/// The nerve of a finite category truncated at degree `bound`.
///
/// Degree 0 stores objects as one-element lists; degree `p ≥ 1` stores
/// composable chains `(f_1, …, f_p)` with `target(f_i) = source(f_{i+1})`.
/// Every chain is kept, degenerate ones are flagged.
#[derive(Clone, Debug)]
pub struct SimplicialTruncation {
    bound: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    degenerate: Vec<Vec<bool>>,
    /// `faces[p][s][i]` is the index of `d_i` of simplex `s` in degree `p - 1`
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialTruncation {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn simplices(&self, p: usize) -> &[Vec<usize>] {
        &self.simplices[p]
    }

    pub fn is_degenerate(&self, p: usize, s: usize) -> bool {
        self.degenerate[p][s]
    }

    pub fn face(&self, p: usize, s: usize, i: usize) -> usize {
        self.faces[p][s][i]
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices[p].len()
    }

    pub fn nondegenerate_count(&self, p: usize) -> usize {
        self.degenerate[p].iter().filter(|d| !**d).count()
    }

    /// First violation of `d_i d_j = d_{j-1} d_i` (`i < j`) as `(p, simplex, i, j)`.
    pub fn simplicial_identity_violation(&self) -> Option<(usize, usize, usize, usize)> {
        for p in 2..=self.bound {
            for s in 0..self.count(p) {
                for j in 1..=p {
                    for i in 0..j {
                        let left = self.face(p - 1, self.face(p, s, j), i);
                        let right = self.face(p - 1, self.face(p, s, i), j - 1);
                        if left != right {
                            return Some((p, s, i, j));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Nerve of `category` up to degree `bound`.
pub fn nerve_category(category: &SmallCategory, bound: usize) -> SimplicialTruncation {
    let morphisms = category.morphisms();
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..category.objects().len()).map(|x| vec![x]).collect()];
    let mut degenerate = vec![vec![false; simplices[0].len()]];
    let mut faces: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); simplices[0].len()]];
    let mut index: Vec<HashMap<Vec<usize>, usize>> = vec![simplices[0].iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()];

    // outgoing morphisms per object, to extend chains
    let mut outgoing = vec![Vec::new(); category.objects().len()];
    for (f, m) in morphisms.iter().enumerate() {
        outgoing[m.source].push(f);
    }

    for p in 1..=bound {
        let mut level = Vec::new();
        if p == 1 {
            level.extend((0..morphisms.len()).map(|f| vec![f]));
        } else {
            for chain in &simplices[p - 1] {
                let end = morphisms[*chain.last().expect("nonempty chain")].target;
                for &f in &outgoing[end] {
                    let mut c = chain.clone();
                    c.push(f);
                    level.push(c);
                }
            }
        }
        let lookup = &index[p - 1];
        let level_faces: Vec<Vec<usize>> = level
            .iter()
            .map(|chain| {
                (0..=p)
                    .map(|i| {
                        let face = chain_face(category, chain, i);
                        lookup[&face]
                    })
                    .collect()
            })
            .collect();
        degenerate.push(level.iter().map(|c| c.iter().any(|&f| category.is_identity(f))).collect());
        index.push(level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
        faces.push(level_faces);
        simplices.push(level);
    }
    SimplicialTruncation {
        bound,
        simplices,
        degenerate,
        faces,
    }
}

fn chain_face(category: &SmallCategory, chain: &[usize], i: usize) -> Vec<usize> {
    let p = chain.len();
    let m = category.morphisms();
    if p == 1 {
        return vec![if i == 0 { m[chain[0]].target } else { m[chain[0]].source }];
    }
    if i == 0 {
        chain[1..].to_vec()
    } else if i == p {
        chain[..p - 1].to_vec()
    } else {
        let mut out = chain[..i - 1].to_vec();
        out.push(category.compose(chain[i], chain[i - 1]).expect("composable chain"));
        out.extend_from_slice(&chain[i + 1..]);
        out
    }
}

/// Bar construction of a finite monoid: the nerve of its one-object category.
pub fn nerve_monoid(monoid: &FiniteMonoid, bound: usize) -> SimplicialTruncation {
    nerve_category(&SmallCategory::from_monoid(monoid), bound)
}

/// Homology in degrees `0..=kmax` from normalized chains; needs `kmax < bound`.
pub fn homology(nerve: &SimplicialTruncation, kmax: usize) -> Result<HomologyResult, BarError> {
    if kmax >= nerve.bound {
        return Err(BarError::Range {
            kmax,
            bound: nerve.bound,
        });
    }
    // position of each nondegenerate simplex among the nondegenerate ones
    let positions: Vec<Vec<Option<usize>>> = (0..=kmax + 1)
        .map(|p| {
            let mut next = 0;
            nerve.degenerate[p]
                .iter()
                .map(|&d| {
                    (!d).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let counts: Vec<usize> = (0..=kmax + 1).map(|p| nerve.nondegenerate_count(p)).collect();
    let boundaries: Vec<SparseColumns> = (1..=kmax + 1)
        .map(|p| {
            (0..nerve.count(p))
                .filter(|&s| !nerve.degenerate[p][s])
                .map(|s| {
                    let mut col: Vec<(usize, i64)> = Vec::with_capacity(p + 1);
                    for i in 0..=p {
                        if let Some(row) = positions[p - 1][nerve.face(p, s, i)] {
                            col.push((row, if i % 2 == 0 { 1 } else { -1 }));
                        }
                    }
                    col.sort_unstable();
                    let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
                    for (row, v) in col {
                        match merged.last_mut() {
                            Some((r, acc)) if *r == row => *acc += v,
                            _ => merged.push((row, BigInt::from(v))),
                        }
                    }
                    merged.retain(|(_, v)| *v != BigInt::from(0));
                    merged
                })
                .collect()
        })
        .collect();
    Ok(chain_homology(&counts, &boundaries, kmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::AbelianGroup;

    #[test]
    fn nondegenerate_counts() {
        let z2 = nerve_monoid(&FiniteMonoid::cyclic(2), 3);
        let counts: Vec<usize> = (0..=3).map(|p| z2.nondegenerate_count(p)).collect();
        assert_eq!(counts, vec![1, 1, 1, 1]);
        let s3 = nerve_monoid(&FiniteMonoid::symmetric3(), 2);
        let counts: Vec<usize> = (0..=2).map(|p| s3.nondegenerate_count(p)).collect();
        assert_eq!(counts, vec![1, 5, 25]);
        let t = nerve_monoid(&FiniteMonoid::trivial(), 3);
        assert!((0..=3).all(|p| t.count(p) == 1));
        assert!((1..=3).all(|p| t.nondegenerate_count(p) == 0));
    }

    #[test]
    fn simplicial_identities() {
        for m in [FiniteMonoid::cyclic(3), FiniteMonoid::symmetric3()] {
            assert_eq!(nerve_monoid(&m, 4).simplicial_identity_violation(), None);
        }
    }

    #[test]
    fn z2_homology() {
        let h = homology(&nerve_monoid(&FiniteMonoid::cyclic(2), 5), 4).unwrap();
        let z2 = AbelianGroup::cyclic(2);
        assert_eq!(
            h.groups,
            vec![AbelianGroup::free(1), z2.clone(), AbelianGroup::trivial(), z2, AbelianGroup::trivial()]
        );
        assert_eq!(h.to_string().lines().next(), Some("H_0 = Z"));
    }

    #[test]
    fn h1_is_abelianization() {
        for g in [FiniteMonoid::cyclic(2), FiniteMonoid::cyclic(4), FiniteMonoid::symmetric3()] {
            let h = homology(&nerve_monoid(&g, 2), 1).unwrap();
            assert_eq!(h.groups[1], g.abelianization());
        }
    }

    #[test]
    fn discrete_category() {
        let h = homology(&nerve_category(&SmallCategory::discrete(3), 2), 1).unwrap();
        assert_eq!(h.groups, vec![AbelianGroup::free(3), AbelianGroup::trivial()]);
    }

    #[test]
    fn range_error() {
        let n = nerve_monoid(&FiniteMonoid::cyclic(2), 3);
        assert_eq!(homology(&n, 3).unwrap_err(), BarError::Range { kmax: 3, bound: 3 });
    }
}
