use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bundle::OrderedComplex;
use crate::exact_linalg::{smith_normal_form, sparse_invariant_factors, AbelianGroup, Matrix};

/// Integral homology groups `H_0, …, H_kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub groups: Vec<AbelianGroup>,
}

impl HomologyResult {
    pub fn betti(&self, k: usize) -> usize {
        self.groups[k].free_rank
    }

    /// Whether `H_k` is `Z` in degree 0 and trivial above, for all computed degrees.
    pub fn is_acyclic(&self) -> bool {
        self.groups.first() == Some(&AbelianGroup::free(1)) && self.groups[1..].iter().all(AbelianGroup::is_trivial)
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            writeln!(f, "H_{k} = {g}")?;
        }
        Ok(())
    }
}

/// Boundary `∂_k` in sparse column form: one entry list `(row, value)` per k-cell.
pub type SparseColumns = Vec<Vec<(usize, BigInt)>>;

/// Homology of a chain complex given by cell counts `n_0, n_1, …` and
/// boundaries `boundaries[k] = ∂_{k+1}`; computes degrees `0..=kmax`.
///
/// Needs `boundaries.len() ≥ kmax + 1`.
pub fn chain_homology(counts: &[usize], boundaries: &[SparseColumns], kmax: usize) -> HomologyResult {
    let factors: Vec<_> = (0..=kmax)
        .map(|k| {
            let cols = boundaries[k].clone();
            sparse_invariant_factors(counts[k], cols)
        })
        .collect();
    let groups = (0..=kmax)
        .map(|k| {
            let incoming = &factors[k];
            let outgoing_rank = if k == 0 { 0 } else { factors[k - 1].rank };
            AbelianGroup {
                free_rank: counts[k] - outgoing_rank - incoming.rank,
                torsion: incoming.torsion(),
            }
        })
        .collect();
    HomologyResult { groups }
}

/// Simplicial homology of an ordered complex in degrees `0..=kmax`.
pub fn simplicial_homology(complex: &OrderedComplex, kmax: usize) -> HomologyResult {
    let counts: Vec<usize> = (0..=kmax + 1).map(|k| complex.count(k)).collect();
    let boundaries: Vec<SparseColumns> = (1..=kmax + 1).map(|k| complex.boundary_columns(k)).collect();
    chain_homology(&counts, &boundaries, kmax)
}

/// A cohomology class written in the invariant-factor coordinates of `H^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub group: AbelianGroup,
    /// Free coordinates first, then one residue per torsion factor (in `0..t`).
    pub coordinates: Vec<BigInt>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

/// Errors of [`cohomology_class`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CochainError {
    Length { expected: usize, found: usize },
    NotCocycle { simplex: Vec<usize> },
}

/// Class of an integral k-cocycle in `H^k(complex; Z)`.
///
/// With `δ^k = U·D·V`, cocycles are the vectors whose `V`-coordinates vanish in
/// the first `r = rank δ^k` places; the remaining coordinates parametrize
/// `ker δ^k`, in which the image of `δ^{k-1}` is put into Smith form again.
pub fn cohomology_class(
    complex: &OrderedComplex,
    k: usize,
    cocycle: &[BigInt],
) -> Result<CohomologyClass, CochainError> {
    let n = complex.count(k);
    if cocycle.len() != n {
        return Err(CochainError::Length {
            expected: n,
            found: cocycle.len(),
        });
    }
    let z = Matrix::new(n, 1, cocycle.to_vec()).expect("column vector");
    let delta = complex.coboundary_matrix(k);
    let image = delta.matmul(&z).expect("shapes agree");
    if let Some(r) = (0..image.rows()).find(|&r| !image[(r, 0)].is_zero()) {
        return Err(CochainError::NotCocycle {
            simplex: complex.simplices_of_dim(k + 1)[r].clone(),
        });
    }
    let snf = smith_normal_form(&delta);
    let r = snf.rank();
    let kernel_dim = n - r;
    let vz = snf.v.matmul(&z).expect("shapes agree");
    let y: Vec<BigInt> = (r..n).map(|i| vz[(i, 0)].clone()).collect();

    let prev = if k == 0 {
        Matrix::zeros(n, 0)
    } else {
        complex.coboundary_matrix(k - 1)
    };
    let v_prev = snf.v.matmul(&prev).expect("shapes agree");
    let b = Matrix::from_fn(kernel_dim, prev.cols(), |i, j| v_prev[(r + i, j)].clone());
    let snf_b = smith_normal_form(&b);
    let diag = snf_b.diagonal();
    let w = snf_b
        .u_inv
        .matmul(&Matrix::new(kernel_dim, 1, y).expect("column vector"))
        .expect("shapes agree");

    let free: Vec<BigInt> = (diag.len()..kernel_dim).map(|i| w[(i, 0)].clone()).collect();
    let mut torsion_orders = Vec::new();
    let mut residues = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let d = d.abs();
        if !d.is_one() {
            residues.push(w[(i, 0)].mod_floor(&d));
            torsion_orders.push(d);
        }
    }
    let mut coordinates = free;
    coordinates.extend(residues);
    Ok(CohomologyClass {
        group: AbelianGroup {
            free_rank: kernel_dim - diag.len(),
            torsion: torsion_orders,
        },
        coordinates,
    })
}
