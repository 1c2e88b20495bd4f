use num_bigint::BigInt;
use num_traits::Zero;

use super::BarError;
use crate::exact_linalg::{AbelianGroup, Matrix};

/// A finite monoid given by its multiplication table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteMonoid {
    /// Checks the table shape, associativity and the unit laws exhaustively.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self, BarError> {
        let n = names.len();
        if n == 0 {
            return Err(BarError::Malformed("monoid has no elements".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(BarError::Malformed(format!("multiplication table must be {n}x{n}")));
        }
        if unit >= n || table.iter().flatten().any(|&x| x >= n) {
            return Err(BarError::Malformed("table entry out of range".into()));
        }
        let m = FiniteMonoid { names, table, unit };
        for a in 0..n {
            if m.mul(a, unit) != a || m.mul(unit, a) != a {
                return Err(BarError::Axiom {
                    law: "unit law",
                    detail: format!("{} with unit {}", m.names[a], m.names[unit]),
                });
            }
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(BarError::Axiom {
                            law: "associativity",
                            detail: format!("({}, {}, {})", m.names[a], m.names[b], m.names[c]),
                        });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements named `0 … n-1`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table, 0).expect("group axioms")
    }

    /// The symmetric group on three letters; elements are named by one-line notation
    /// and `a·b` is `a` after `b`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
        let names = perms.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::new(names, table, 0).expect("group axioms")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
    }

    pub fn is_group(&self) -> bool {
        (0..self.len()).all(|a| self.inverse(a).is_some())
    }

    /// `Z^M / ⟨e_a + e_b − e_{ab}⟩`; for a group this is its abelianization.
    pub fn abelianization(&self) -> AbelianGroup {
        let n = self.len();
        let mut cols = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut col = vec![BigInt::zero(); n];
                col[a] += 1;
                col[b] += 1;
                col[self.mul(a, b)] -= 1;
                cols.push(col);
            }
        }
        let m = Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone());
        AbelianGroup::cokernel(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert!(FiniteMonoid::cyclic(4).is_group());
        let s3 = FiniteMonoid::symmetric3();
        assert!(s3.is_group());
        // non-abelian
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert_eq!(s3.abelianization(), AbelianGroup::cyclic(2));
        assert_eq!(FiniteMonoid::cyclic(4).abelianization(), AbelianGroup::cyclic(4));
        assert!(FiniteMonoid::trivial().abelianization().is_trivial());
    }

    #[test]
    fn rejects_non_associative() {
        let names = vec!["a".to_string(), "b".to_string()];
        // b·a = a breaks the unit law
        assert!(FiniteMonoid::new(names.clone(), vec![vec![0, 1], vec![0, 0]], 0).is_err());
        let err = FiniteMonoid::new(vec!["e".into(), "x".into(), "y".into()], vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]], 0)
            .unwrap_err();
        assert!(matches!(err, BarError::Axiom { law: "associativity", .. }));
    }

    #[test]
    fn free_idempotent_monoid_is_not_a_group() {
        let m = FiniteMonoid::new(vec!["1".into(), "p".into()], vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert!(!m.is_group());
    }
}
