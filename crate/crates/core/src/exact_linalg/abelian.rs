use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{sparse_invariant_factors, Matrix};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`,
/// with `1 < t₁ | t₂ | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        if order == 0 {
            return Self::free(1);
        }
        AbelianGroup {
            free_rank: 0,
            torsion: if order == 1 { vec![] } else { vec![BigInt::from(order)] },
        }
    }

    /// Cokernel of `relations : Z^cols → Z^rows`, i.e. `Z^rows / im(relations)`.
    pub fn cokernel(relations: &Matrix<BigInt>) -> Self {
        let rows = (0..relations.cols())
            .map(|j| {
                (0..relations.rows())
                    .filter(|&i| !relations[(i, j)].is_zero())
                    .map(|i| (i, relations[(i, j)].clone()))
                    .collect()
            })
            .collect();
        // Transposing does not change invariant factors.
        let f = sparse_invariant_factors(relations.rows(), rows);
        AbelianGroup {
            free_rank: relations.rows() - f.rank,
            torsion: f.torsion(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, or `None` when it has a free part.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |a, t| a * t))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}
