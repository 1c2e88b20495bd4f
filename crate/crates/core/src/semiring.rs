//! Commutative semi-rings, their Grothendieck completions and weak
//! invertibility of square matrices.
//!
//! Two kinds of semi-ring are supported: the natural numbers and finite
//! semi-rings given by Cayley tables. For both, the completion `Gr(B)` is
//! computable, which is what every operation here relies on.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::{det, AbelianGroup, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("{law} fails at ({a}, {b}, {c})")]
    Axiom {
        law: &'static str,
        a: String,
        b: String,
        c: String,
    },
    #[error("{table} table must be {n}x{n}")]
    TableShape { table: &'static str, n: usize },
    #[error("table entry {value} is not an element index")]
    EntryOutOfRange { value: usize },
    #[error("semi-ring has no elements")]
    Empty,
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("elementary matrix index ({i},{j}) invalid for n = {n}: need i != j and 1 <= i, j <= n")]
    Index { i: usize, j: usize, n: usize },
    #[error("matrix is not square")]
    NotSquare,
}

/// A commutative semi-ring whose Grothendieck completion is computable.
pub trait CommutativeSemiring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Canonical representative of the class of `(pos, neg)` in `Gr(B)`.
    fn gr_normalize(&self, x: &GrElement<Self::Elem>) -> GrElement<Self::Elem>;

    /// Whether the image of `m` in `M_n(Gr(B))` is invertible.
    fn is_weakly_invertible(&self, m: &SemiMatrix<Self::Elem>) -> bool;

    /// The additive group `Gr(B)`.
    fn k0(&self) -> AbelianGroup;
}

/// A formal difference `pos - neg`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrElement<E> {
    pub pos: E,
    pub neg: E,
    pub canonical: bool,
}

impl<E> GrElement<E> {
    pub fn new(pos: E, neg: E) -> Self {
        GrElement {
            pos,
            neg,
            canonical: false,
        }
    }
}

/// A square matrix over a semi-ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> SemiMatrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, SemiringError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SemiringError::NotSquare);
        }
        Ok(SemiMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).take(self.n).collect()
    }

    pub fn product<S>(&self, other: &SemiMatrix<E>, ring: &S) -> SemiMatrix<E>
    where
        S: CommutativeSemiring<Elem = E>,
    {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let mut acc = ring.zero();
                for j in 0..n {
                    acc = ring.add(&acc, &ring.mul(self.get(i, j), other.get(j, k)));
                }
                entries.push(acc);
            }
        }
        SemiMatrix { n, entries }
    }
}

/// `e_ij(v)`: the identity with `v` at `(i, j)`, using 1-based indices.
pub fn elementary_matrix<S: CommutativeSemiring>(
    ring: &S,
    n: usize,
    i: usize,
    j: usize,
    v: S::Elem,
) -> Result<SemiMatrix<S::Elem>, SemiringError> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(SemiringError::Index { i, j, n });
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            entries.push(if r == c { ring.one() } else { ring.zero() });
        }
    }
    entries[(i - 1) * n + (j - 1)] = v;
    Ok(SemiMatrix { n, entries })
}

/// The natural numbers; `Gr(ℕ) = ℤ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Naturals;

impl Naturals {
    pub fn to_integer(x: &GrElement<BigUint>) -> BigInt {
        BigInt::from(x.pos.clone()) - BigInt::from(x.neg.clone())
    }
}

impl CommutativeSemiring for Naturals {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }

    fn gr_normalize(&self, x: &GrElement<BigUint>) -> GrElement<BigUint> {
        let (pos, neg) = if x.pos >= x.neg {
            (&x.pos - &x.neg, BigUint::zero())
        } else {
            (BigUint::zero(), &x.neg - &x.pos)
        };
        GrElement {
            pos,
            neg,
            canonical: true,
        }
    }

    fn is_weakly_invertible(&self, m: &SemiMatrix<BigUint>) -> bool {
        let n = m.size();
        let z = Matrix::from_fn(n, n, |i, j| BigInt::from(m.get(i, j).clone()));
        det(&z).expect("square").abs().is_one()
    }

    fn k0(&self) -> AbelianGroup {
        AbelianGroup::free(1)
    }
}

/// A finite commutative semi-ring given by Cayley tables over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemiring {
    names: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
    /// canonical representative of each pair `(a, b)`, indexed `a * n + b`
    canonical: Vec<(usize, usize)>,
}

impl FiniteSemiring {
    /// Validates all semi-ring axioms exhaustively and precomputes `Gr(B)`.
    pub fn new(
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self, SemiringError> {
        let n = names.len();
        if n == 0 {
            return Err(SemiringError::Empty);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(SemiringError::DuplicateName(name.clone()));
            }
        }
        for (table, t) in [("addition", &add), ("multiplication", &mul)] {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(SemiringError::TableShape { table, n });
            }
            if let Some(&v) = t.iter().flatten().find(|&&v| v >= n) {
                return Err(SemiringError::EntryOutOfRange { value: v });
            }
        }
        for v in [zero, one] {
            if v >= n {
                return Err(SemiringError::EntryOutOfRange { value: v });
            }
        }
        let mut ring = FiniteSemiring {
            names,
            add,
            mul,
            zero,
            one,
            canonical: Vec::new(),
        };
        ring.check_axioms()?;
        ring.canonical = ring.compute_canonical();
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<(), SemiringError> {
        let n = self.names.len();
        let (p, m) = (&self.add, &self.mul);
        let (z, o) = (self.zero, self.one);
        type Law<'a> = (&'static str, Box<dyn Fn(usize, usize, usize) -> bool + 'a>);
        let laws: Vec<Law> = vec![
            ("additive associativity", Box::new(|a, b, c| p[p[a][b]][c] == p[a][p[b][c]])),
            ("additive commutativity", Box::new(|a, b, _| p[a][b] == p[b][a])),
            ("additive identity", Box::new(|a, _, _| p[a][z] == a)),
            ("multiplicative associativity", Box::new(|a, b, c| m[m[a][b]][c] == m[a][m[b][c]])),
            ("multiplicative commutativity", Box::new(|a, b, _| m[a][b] == m[b][a])),
            ("multiplicative identity", Box::new(|a, _, _| m[a][o] == a)),
            ("distributivity", Box::new(|a, b, c| m[a][p[b][c]] == p[m[a][b]][m[a][c]])),
            ("zero annihilation", Box::new(|a, _, _| m[a][z] == z)),
        ];
        for (law, holds) in &laws {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !holds(a, b, c) {
                            return Err(SemiringError::Axiom {
                                law,
                                a: self.names[a].clone(),
                                b: self.names[b].clone(),
                                c: self.names[c].clone(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_canonical(&self) -> Vec<(usize, usize)> {
        let n = self.names.len();
        // x ≈ y iff x + k = y + k for some k
        let stably_equal: Vec<Vec<bool>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..n).any(|k| self.add[x][k] == self.add[y][k]))
                    .collect()
            })
            .collect();
        let mut canonical = vec![(0, 0); n * n];
        for a in 0..n {
            for b in 0..n {
                // pairs are scanned in lexicographic order, so the first hit is minimal
                'search: for c in 0..n {
                    for d in 0..n {
                        if stably_equal[self.add[a][d]][self.add[c][b]] {
                            canonical[a * n + b] = (c, d);
                            break 'search;
                        }
                    }
                }
            }
        }
        canonical
    }

    pub fn boolean() -> Self {
        Self::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .expect("boolean semi-ring axioms")
    }

    /// `ℤ/n` with its ring operations, viewed as a semi-ring.
    pub fn integers_mod(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        Self::new(names, add, mul, 0, 1 % n).expect("ring axioms")
    }

    /// Truncated natural numbers `{0, …, cap}` with sums and products capped at `cap`.
    pub fn truncated_naturals(cap: usize) -> Self {
        let names = (0..=cap).map(|i| i.to_string()).collect();
        let add = (0..=cap).map(|a| (0..=cap).map(|b| (a + b).min(cap)).collect()).collect();
        let mul = (0..=cap).map(|a| (0..=cap).map(|b| (a * b).min(cap)).collect()).collect();
        Self::new(names, add, mul, 0, 1.min(cap)).expect("semi-ring axioms")
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Canonical pairs, one per class of `Gr(B)`, in increasing order.
    pub fn gr_classes(&self) -> Vec<(usize, usize)> {
        let mut out = self.canonical.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn canon(&self, a: usize, b: usize) -> (usize, usize) {
        self.canonical[a * self.len() + b]
    }

    fn gr_add(&self, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
        self.canon(self.add[x.0][y.0], self.add[x.1][y.1])
    }

    fn gr_mul(&self, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
        let p = self.add[self.mul[x.0][y.0]][self.mul[x.1][y.1]];
        let q = self.add[self.mul[x.0][y.1]][self.mul[x.1][y.0]];
        self.canon(p, q)
    }

    fn gr_det(&self, m: &SemiMatrix<usize>) -> (usize, usize) {
        let n = m.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = self.canon(self.zero, self.zero);
        permutations(&mut perm, 0, false, &mut |p, odd| {
            let mut term = self.canon(self.one, self.zero);
            for (r, &c) in p.iter().enumerate() {
                term = self.gr_mul(term, self.canon(*m.get(r, c), self.zero));
            }
            if odd {
                term = self.canon(term.1, term.0);
            }
            total = self.gr_add(total, term);
        });
        total
    }
}

/// Visits every permutation of `p[k..]` together with its parity.
fn permutations(p: &mut Vec<usize>, k: usize, odd: bool, f: &mut impl FnMut(&[usize], bool)) {
    if k == p.len() {
        f(p, odd);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, odd ^ (i != k), f);
        p.swap(k, i);
    }
}

impl CommutativeSemiring for FiniteSemiring {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }

    fn gr_normalize(&self, x: &GrElement<usize>) -> GrElement<usize> {
        let (pos, neg) = self.canon(x.pos, x.neg);
        GrElement {
            pos,
            neg,
            canonical: true,
        }
    }

    fn is_weakly_invertible(&self, m: &SemiMatrix<usize>) -> bool {
        let d = self.gr_det(m);
        let one = self.canon(self.one, self.zero);
        self.gr_classes().into_iter().any(|y| self.gr_mul(d, y) == one)
    }

    /// Generators `e_b`, relations `e_a + e_b = e_{a+b}` and `e_0 = 0`.
    fn k0(&self) -> AbelianGroup {
        let n = self.len();
        let mut relations = Vec::with_capacity(n * n + 1);
        for a in 0..n {
            for b in a..n {
                let mut col = vec![BigInt::zero(); n];
                col[a] += 1;
                col[b] += 1;
                col[self.add[a][b]] -= 1;
                relations.push(col);
            }
        }
        let mut col = vec![BigInt::zero(); n];
        col[self.zero] += 1;
        relations.push(col);
        let r = relations.len();
        let m = Matrix::from_fn(n, r, |i, j| relations[j][i].clone());
        AbelianGroup::cokernel(&m)
    }
}

/// Either supported kind of semi-ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiringSpec {
    Naturals,
    Finite(FiniteSemiring),
}

impl SemiringSpec {
    pub fn k0(&self) -> AbelianGroup {
        match self {
            SemiringSpec::Naturals => Naturals.k0(),
            SemiringSpec::Finite(r) => r.k0(),
        }
    }
}
