//! Generators of valid bundles for integration tests.
//!
//! Gluing matrices are products of unimodular step matrices, one step per
//! vertex, so `E^{ab} = M_{a+1} ⋯ M_b` and the cocycle condition holds on the
//! nose. A basis vector of `E^{ab}[i,l]` is a path of (row, slot) choices
//! through the steps; coherence morphisms send a concatenated pair of paths
//! to its place among all paths, scaled by `w(p)·w(q)/w(p++q)` for an
//! arbitrary nonzero weight `w` per edge and path. The scalars telescope
//! around every tetrahedron, so these bundles are valid.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use twovec::bundle::{ChartedBundle, OrderedComplex};
use twovec::exact_linalg::Matrix;
use twovec::two_vector::{DimensionMatrix, MorphismMatrix};

pub type Q = BigRational;

pub fn q(p: i64, r: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(r))
}

/// `(row, slot)` per step after the start row.
type Path = Vec<(usize, usize)>;

pub struct PathData {
    rank: usize,
    /// `steps[v]` is the step into vertex `v`
    steps: Vec<Matrix<usize>>,
}

impl PathData {
    fn paths(&self, a: usize, b: usize, i: usize, l: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend(a, b, i, l, &mut cur, &mut out);
        out
    }

    fn extend(&self, v: usize, b: usize, row: usize, l: usize, cur: &mut Path, out: &mut Vec<Path>) {
        if v == b {
            if row == l {
                out.push(cur.clone());
            }
            return;
        }
        let step = &self.steps[v + 1];
        for k in 0..self.rank {
            for s in 0..step[(row, k)] {
                cur.push((k, s));
                self.extend(v + 1, b, k, l, cur, out);
                cur.pop();
            }
        }
    }

    fn dims(&self, a: usize, b: usize) -> DimensionMatrix {
        let n = self.rank;
        DimensionMatrix::new(Matrix::from_fn(n, n, |i, l| self.paths(a, b, i, l).len())).unwrap()
    }
}

/// Unimodular step matrices with entries in `0..=2`: products of a few
/// elementary matrices and transpositions.
pub fn random_step(rng: &mut ChaCha8Rng, n: usize) -> Matrix<usize> {
    let mut m = Matrix::<usize>::identity(n);
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let e = if i == j || rng.gen_bool(0.3) {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, j);
            Matrix::from_fn(n, n, |r, c| usize::from(p[r] == c))
        } else {
            Matrix::from_fn(n, n, |r, c| usize::from(r == c || (r == i && c == j)))
        };
        let next = m.matmul(&e).unwrap();
        if next.entries().iter().all(|&x| x <= 2) {
            m = next;
        }
    }
    m
}

/// Builds the bundle; `weight` is consulted once per edge and path.
pub fn path_bundle(
    base: &OrderedComplex,
    rank: usize,
    steps: Vec<Matrix<usize>>,
    mut weight: impl FnMut() -> Q,
) -> ChartedBundle<Q> {
    let data = PathData { rank, steps };
    let n = rank;
    let mut w: HashMap<([usize; 2], Path), Q> = HashMap::new();
    let mut get = |e: [usize; 2], p: &Path| w.entry((e, p.clone())).or_insert_with(&mut weight).clone();
    let mut gluing = BTreeMap::new();
    for e in base.simplices_of_dim(1) {
        gluing.insert([e[0], e[1]], data.dims(e[0], e[1]));
    }
    let mut coherence = BTreeMap::new();
    for t in base.simplices_of_dim(2) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for l in 0..n {
                let target = data.paths(a, c, i, l);
                let pos: HashMap<&Path, usize> = target.iter().enumerate().map(|(k, p)| (p, k)).collect();
                let mut m = Matrix::<Q>::zeros(target.len(), target.len());
                let mut s = 0;
                for j in 0..n {
                    for p in data.paths(a, b, i, j) {
                        for r in data.paths(b, c, j, l) {
                            let mut full = p.clone();
                            full.extend_from_slice(&r);
                            let v = get([a, b], &p) * get([b, c], &r) / get([a, c], &full);
                            m[(pos[&full], s)] = v;
                            s += 1;
                        }
                    }
                }
                entries.push(m);
            }
        }
        let dims = gluing[&[a, c]].clone();
        coherence.insert([a, b, c], MorphismMatrix::new(dims, entries).unwrap());
    }
    ChartedBundle::new(rank, base.clone(), gluing, coherence).unwrap()
}

/// A random nonzero rational with small numerator and denominator.
pub fn random_weight(rng: &mut ChaCha8Rng) -> Q {
    let mut p: i64 = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        p = -p;
    }
    q(p, rng.gen_range(1..=4))
}

/// Random complex on `0..count` with every vertex present and a few facets of dimension ≤ 3.
pub fn random_complex(rng: &mut ChaCha8Rng, count: usize) -> OrderedComplex {
    let mut facets: Vec<Vec<usize>> = (0..count).map(|v| vec![v]).collect();
    let vertices: Vec<usize> = (0..count).collect();
    for _ in 0..rng.gen_range(1..=4) {
        let size = rng.gen_range(2..=4usize.min(count));
        let mut f: Vec<usize> = vertices.choose_multiple(rng, size).copied().collect();
        f.sort_unstable();
        facets.push(f);
    }
    OrderedComplex::from_facets(&facets).unwrap()
}

/// A valid bundle of rank `1..=3` on at most six vertices.
pub fn random_bundle(rng: &mut ChaCha8Rng) -> ChartedBundle<Q> {
    let count = rng.gen_range(2..=6);
    let base = random_complex(rng, count);
    let rank = rng.gen_range(1..=3);
    random_bundle_on(rng, &base, rank)
}

pub fn random_bundle_on(rng: &mut ChaCha8Rng, base: &OrderedComplex, rank: usize) -> ChartedBundle<Q> {
    let top = base.vertices().last().copied().unwrap_or(0);
    let steps = (0..=top).map(|_| random_step(rng, rank)).collect();
    let plain = rng.gen_bool(0.2);
    path_bundle(base, rank, steps, || if plain { Q::one() } else { random_weight(rng) })
}
