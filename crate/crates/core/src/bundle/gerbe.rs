use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{fmt_simplex, BundleError, ChartedBundle, OrderedComplex};
use crate::bar_homology::{cohomology_class, CochainError, CohomologyClass};
use crate::two_vector::TwoVectorError;

/// A ℚ/ℤ-valued 2-cochain; phase `q` stands for `exp(2πi q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseCocycle {
    base: OrderedComplex,
    /// normalized into `[0, 1)`; missing triangles carry phase 0
    phases: BTreeMap<[usize; 3], BigRational>,
}

fn frac(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(q.numer().div_floor(q.denom()))
}

impl PhaseCocycle {
    pub fn new(base: OrderedComplex, phases: BTreeMap<[usize; 3], BigRational>) -> Result<Self, BundleError> {
        if let Some(t) = phases.keys().find(|t| !base.contains(&t[..])) {
            return Err(BundleError::Dangling {
                what: "phase",
                simplex: fmt_simplex(t),
            });
        }
        let phases = phases
            .into_iter()
            .map(|(k, q)| (k, frac(&q)))
            .filter(|(_, q)| !q.is_zero())
            .collect();
        Ok(PhaseCocycle { base, phases })
    }

    pub fn zero(base: OrderedComplex) -> Self {
        PhaseCocycle {
            base,
            phases: BTreeMap::new(),
        }
    }

    /// `δψ` for a ℚ/ℤ-valued 1-cochain `ψ` (missing edges are 0).
    pub fn coboundary(base: OrderedComplex, psi: &BTreeMap<[usize; 2], BigRational>) -> Self {
        let get = |a: usize, b: usize| psi.get(&[a, b]).cloned().unwrap_or_else(BigRational::zero);
        let phases = base
            .simplices_of_dim(2)
            .iter()
            .map(|t| ([t[0], t[1], t[2]], get(t[1], t[2]) - get(t[0], t[2]) + get(t[0], t[1])))
            .collect();
        Self::new(base, phases).expect("keys are triangles")
    }

    pub fn base(&self) -> &OrderedComplex {
        &self.base
    }

    pub fn phase(&self, a: usize, b: usize, c: usize) -> BigRational {
        self.phases.get(&[a, b, c]).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero phases, keyed by triangle.
    pub fn phases(&self) -> &BTreeMap<[usize; 3], BigRational> {
        &self.phases
    }

    pub fn add(&self, other: &PhaseCocycle) -> Result<PhaseCocycle, BundleError> {
        if self.base != other.base {
            return Err(BundleError::BaseMismatch);
        }
        let mut phases = self.phases.clone();
        for (k, q) in &other.phases {
            let sum = phases.get(k).cloned().unwrap_or_else(BigRational::zero) + q;
            phases.insert(*k, sum);
        }
        Self::new(self.base.clone(), phases)
    }
}

/// A class in `H³(base; Z)` with its invariant-factor decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerbeClass(pub CohomologyClass);

impl GerbeClass {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for GerbeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.0.coordinates.iter().map(|c| c.to_string()).collect();
        write!(f, "class = ({}) in {}", coords.join(", "), self.0.group)
    }
}

/// Integral lift of `δφ` on every tetrahedron, or the first tetrahedron where
/// `δφ` is not an integer.
fn lifted_coboundary(phi: &PhaseCocycle) -> Result<Vec<BigInt>, BundleError> {
    phi.base
        .simplices_of_dim(3)
        .iter()
        .map(|s| {
            let (a, b, c, d) = (s[0], s[1], s[2], s[3]);
            let v = phi.phase(b, c, d) - phi.phase(a, c, d) + phi.phase(a, b, d) - phi.phase(a, b, c);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(BundleError::NotClosed(fmt_simplex(s)))
            }
        })
        .collect()
}

/// The class of a closed ℚ/ℤ phase cocycle in `H³(base; Z)`, via the
/// connecting map of `0 → Z → Q → Q/Z → 0`.
pub fn gerbe_class(phi: &PhaseCocycle) -> Result<GerbeClass, BundleError> {
    let c = lifted_coboundary(phi)?;
    match cohomology_class(&phi.base, 3, &c) {
        Ok(class) => Ok(GerbeClass(class)),
        Err(CochainError::NotCocycle { simplex }) => Err(BundleError::NotClosed(fmt_simplex(&simplex))),
        Err(CochainError::Length { .. }) => unreachable!("one value per tetrahedron"),
    }
}

/// Phase part of a rank-1 bundle: `0` for positive coherence scalars, `1/2` for negative ones.
pub fn rank_one_phases(bundle: &ChartedBundle<BigRational>) -> Result<PhaseCocycle, BundleError> {
    if bundle.rank() != 1 {
        return Err(BundleError::Rank {
            what: "bundle",
            simplex: "()".into(),
            expected: 1,
            found: bundle.rank(),
        });
    }
    let mut phases = BTreeMap::new();
    for (k, m) in bundle.coherence() {
        let entry = m.entry(0, 0);
        if entry.shape() != (1, 1) || entry[(0, 0)].is_zero() {
            return Err(TwoVectorError::SingularEntry { i: 0, j: 0 }.into());
        }
        let q = if entry[(0, 0)].is_negative() {
            BigRational::new(1.into(), 2.into())
        } else {
            BigRational::zero()
        };
        phases.insert(*k, q);
    }
    PhaseCocycle::new(bundle.base().clone(), phases)
}
