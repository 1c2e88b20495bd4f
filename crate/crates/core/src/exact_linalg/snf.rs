//! Smith normal form over a Euclidean integer type.
//!
//! The dense routine tracks the unimodular transforms on both sides so that
//! `A = U·D·V` and `U⁻¹·A·V⁻¹ = D` hold exactly. Pivots are the smallest
//! nonzero entries of the remaining block, which keeps entry growth small on
//! the desk-scale matrices this crate sees.
//!
//! [`invariant_factors`] is the fast path used for homology: it first runs a
//! sparse elimination on unit pivots (boundary matrices are mostly ±1) and
//! only hands the residual block to the dense routine.

use super::Matrix;
use crate::scalar::IntegerScalar;

/// `A = u · d · v` with `u`, `v` unimodular and `d` in Smith form.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    /// `u⁻¹`, so that `u_inv · A · v_inv = d`.
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: IntegerScalar> SnfResult<T> {
    /// Nonzero diagonal entries of `d`, in order. They form a divisibility chain.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Rank and nonzero invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors<T> {
    pub rank: usize,
    /// All `rank` nonzero diagonal entries, ascending along the divisibility chain.
    pub factors: Vec<T>,
}

impl<T: IntegerScalar> InvariantFactors<T> {
    /// Factors different from 1: the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<T> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Transforms<T> {
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

struct Reducer<T> {
    d: Matrix<T>,
    tr: Option<Transforms<T>>,
}

impl<T: IntegerScalar> Reducer<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_rows(a, b);
        if let Some(tr) = &mut self.tr {
            tr.u.swap_cols(a, b);
            tr.u_inv.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_cols(a, b);
        if let Some(tr) = &mut self.tr {
            tr.v.swap_rows(a, b);
            tr.v_inv.swap_cols(a, b);
        }
    }

    /// row[dst] += c · row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.d.cols() {
            let x = self.d[(src, j)].clone();
            if !x.is_zero() {
                self.d[(dst, j)] = self.d[(dst, j)].clone() + c.clone() * x;
            }
        }
        if let Some(tr) = &mut self.tr {
            for i in 0..tr.u.rows() {
                let x = tr.u[(i, dst)].clone();
                tr.u[(i, src)] = tr.u[(i, src)].clone() - c.clone() * x;
            }
            for j in 0..tr.u_inv.cols() {
                let x = tr.u_inv[(src, j)].clone();
                tr.u_inv[(dst, j)] = tr.u_inv[(dst, j)].clone() + c.clone() * x;
            }
        }
    }

    /// col[dst] += c · col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.d.rows() {
            let x = self.d[(i, src)].clone();
            if !x.is_zero() {
                self.d[(i, dst)] = self.d[(i, dst)].clone() + c.clone() * x;
            }
        }
        if let Some(tr) = &mut self.tr {
            for j in 0..tr.v.cols() {
                let x = tr.v[(dst, j)].clone();
                tr.v[(src, j)] = tr.v[(src, j)].clone() - c.clone() * x;
            }
            for i in 0..tr.v_inv.rows() {
                let x = tr.v_inv[(i, src)].clone();
                tr.v_inv[(i, dst)] = tr.v_inv[(i, dst)].clone() + c.clone() * x;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.d.cols() {
            self.d[(r, j)] = -self.d[(r, j)].clone();
        }
        if let Some(tr) = &mut self.tr {
            for i in 0..tr.u.rows() {
                tr.u[(i, r)] = -tr.u[(i, r)].clone();
            }
            for j in 0..tr.u_inv.cols() {
                tr.u_inv[(r, j)] = -tr.u_inv[(r, j)].clone();
            }
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), T)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d[(i, j)].abs();
                if x.is_zero() {
                    continue;
                }
                if best.as_ref().map_or(true, |(_, b)| x < *b) {
                    let done = x.is_one();
                    best = Some(((i, j), x));
                    if done {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Clears row and column `t` outside the pivot.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let pivot = self.d[(t, t)].clone();
            for i in t + 1..self.d.rows() {
                if !self.d[(i, t)].is_zero() {
                    let q = self.d[(i, t)].clone() / pivot.clone();
                    if !q.is_zero() {
                        self.add_row(i, t, &-q);
                    }
                }
            }
            for j in t + 1..self.d.cols() {
                if !self.d[(t, j)].is_zero() {
                    let q = self.d[(t, j)].clone() / pivot.clone();
                    if !q.is_zero() {
                        self.add_col(j, t, &-q);
                    }
                }
            }
            // Remainders are strictly smaller than the pivot; promote the smallest.
            let mut best: Option<(bool, usize, T)> = None;
            for i in t + 1..self.d.rows() {
                let x = self.d[(i, t)].abs();
                if !x.is_zero() && best.as_ref().map_or(true, |(_, _, b)| x < *b) {
                    best = Some((true, i, x));
                }
            }
            for j in t + 1..self.d.cols() {
                let x = self.d[(t, j)].abs();
                if !x.is_zero() && best.as_ref().map_or(true, |(_, _, b)| x < *b) {
                    best = Some((false, j, x));
                }
            }
            match best {
                None => return,
                Some((true, i, _)) => self.swap_rows(t, i),
                Some((false, j, _)) => self.swap_cols(t, j),
            }
        }
    }

    fn run(&mut self) {
        let (rows, cols) = self.d.shape();
        for t in 0..rows.min(cols) {
            let Some((i, j)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                self.clear_cross(t);
                let pivot = self.d[(t, t)].clone();
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !(self.d[(i, j)].clone() % pivot.clone()).is_zero())
                });
                match offender {
                    Some(i) => self.add_row(t, i, &T::one()),
                    None => break,
                }
            }
            if self.d[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with transforms: `A = U·D·V`.
pub fn smith_normal_form<T: IntegerScalar>(a: &Matrix<T>) -> SnfResult<T> {
    let (rows, cols) = a.shape();
    let mut r = Reducer {
        d: a.clone(),
        tr: Some(Transforms {
            u: Matrix::identity(rows),
            u_inv: Matrix::identity(rows),
            v: Matrix::identity(cols),
            v_inv: Matrix::identity(cols),
        }),
    };
    r.run();
    let tr = r.tr.expect("transforms tracked");
    SnfResult {
        u: tr.u,
        d: r.d,
        v: tr.v,
        u_inv: tr.u_inv,
        v_inv: tr.v_inv,
    }
}

fn dense_factors<T: IntegerScalar>(a: Matrix<T>) -> Vec<T> {
    let mut r = Reducer { d: a, tr: None };
    r.run();
    (0..r.d.rows().min(r.d.cols()))
        .map(|i| r.d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

type SparseRow<T> = Vec<(usize, T)>;

fn entry<T>(row: &SparseRow<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|p| &row[p].1)
}

/// `target - c·pivot`, both sorted by column.
fn axpy<T: IntegerScalar>(target: &SparseRow<T>, c: &T, pivot: &SparseRow<T>) -> SparseRow<T> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot.len() {
        let ca = target.get(a).map(|e| e.0);
        let cb = pivot.get(b).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = target[a].1.clone() - c.clone() * pivot[b].1.clone();
                if !v.is_zero() {
                    out.push((x, v));
                }
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(target[a].clone());
                a += 1;
            }
            (Some(_), None) => {
                out.push(target[a].clone());
                a += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c.clone() * pivot[b].1.clone())));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Rank and invariant factors, without transforms.
pub fn invariant_factors<T: IntegerScalar>(a: &Matrix<T>) -> InvariantFactors<T> {
    let rows = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    sparse_invariant_factors(a.cols(), rows)
}

/// Same as [`invariant_factors`] for a matrix given as sparse rows of
/// `(column, value)` pairs sorted by column, with no explicit zeros.
pub fn sparse_invariant_factors<T: IntegerScalar>(
    ncols: usize,
    mut rows: Vec<Vec<(usize, T)>>,
) -> InvariantFactors<T> {
    let nrows = rows.len();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_rows[*j].push(i);
        }
    }
    let mut active = vec![true; nrows];
    let mut unit_rank = 0usize;

    for j in 0..ncols {
        let mut holders = std::mem::take(&mut col_rows[j]);
        holders.sort_unstable();
        holders.dedup();
        holders.retain(|&r| active[r] && entry(&rows[r], j).is_some());
        let pivot = holders
            .iter()
            .copied()
            .filter(|&r| entry(&rows[r], j).is_some_and(|x| x.abs().is_one()))
            .min_by_key(|&r| rows[r].len());
        let Some(p) = pivot else {
            col_rows[j] = holders;
            continue;
        };
        let u = entry(&rows[p], j).cloned().expect("pivot entry");
        let pivot_row = std::mem::take(&mut rows[p]);
        active[p] = false;
        unit_rank += 1;
        for &r in &holders {
            if r == p {
                continue;
            }
            let v = entry(&rows[r], j).cloned().expect("holder entry");
            // u = ±1 so u⁻¹ = u.
            let c = v * u.clone();
            let new_row = axpy(&rows[r], &c, &pivot_row);
            for (col, _) in &new_row {
                if entry(&rows[r], *col).is_none() {
                    col_rows[*col].push(r);
                }
            }
            rows[r] = new_row;
        }
    }

    let rest: Vec<&SparseRow<T>> = (0..nrows)
        .filter(|&i| active[i] && !rows[i].is_empty())
        .map(|i| &rows[i])
        .collect();
    let mut used: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let mut dense = Matrix::zeros(rest.len(), used.len());
    for (i, row) in rest.iter().enumerate() {
        for (c, x) in row.iter() {
            let k = used.binary_search(c).expect("column collected");
            dense[(i, k)] = x.clone();
        }
    }
    let mut factors = vec![T::one(); unit_rank];
    factors.extend(dense_factors(dense));
    InvariantFactors {
        rank: factors.len(),
        factors,
    }
}
