use std::collections::BTreeMap;

use num_traits::Signed;
use rayon::prelude::*;

use super::{fmt_simplex, BundleError, Finding, FindingKind, OrderedComplex, ValidationReport};
use crate::scalar::ExactField;
use crate::two_vector::{obj_matmul, tetrahedron_defect, DimensionMatrix, MorphismMatrix};

/// Gluing data of rank `n`: a dimension matrix per edge and a coherence
/// morphism per triangle of the base.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartedBundle<T> {
    rank: usize,
    base: OrderedComplex,
    gluing: BTreeMap<[usize; 2], DimensionMatrix>,
    coherence: BTreeMap<[usize; 3], MorphismMatrix<T>>,
}

impl<T: ExactField> ChartedBundle<T> {
    /// Checks completeness, absence of dangling keys and ranks.
    ///
    /// Determinants, dimension compatibility and the tetrahedron equation are
    /// left to [`validate_bundle`].
    pub fn new(
        rank: usize,
        base: OrderedComplex,
        gluing: BTreeMap<[usize; 2], DimensionMatrix>,
        coherence: BTreeMap<[usize; 3], MorphismMatrix<T>>,
    ) -> Result<Self, BundleError> {
        for e in base.simplices_of_dim(1) {
            if !gluing.contains_key(&[e[0], e[1]]) {
                return Err(BundleError::Missing {
                    what: "gluing matrix",
                    simplex: fmt_simplex(e),
                });
            }
        }
        for t in base.simplices_of_dim(2) {
            if !coherence.contains_key(&[t[0], t[1], t[2]]) {
                return Err(BundleError::Missing {
                    what: "coherence morphism",
                    simplex: fmt_simplex(t),
                });
            }
        }
        for (e, d) in &gluing {
            if !base.contains(e) {
                return Err(BundleError::Dangling {
                    what: "gluing matrix",
                    simplex: fmt_simplex(e),
                });
            }
            if d.rank() != rank {
                return Err(BundleError::Rank {
                    what: "gluing matrix",
                    simplex: fmt_simplex(e),
                    expected: rank,
                    found: d.rank(),
                });
            }
        }
        for (t, m) in &coherence {
            if !base.contains(t) {
                return Err(BundleError::Dangling {
                    what: "coherence morphism",
                    simplex: fmt_simplex(t),
                });
            }
            if m.rank() != rank {
                return Err(BundleError::Rank {
                    what: "coherence morphism",
                    simplex: fmt_simplex(t),
                    expected: rank,
                    found: m.rank(),
                });
            }
        }
        Ok(ChartedBundle {
            rank,
            base,
            gluing,
            coherence,
        })
    }

    /// All gluing matrices `I_n` and all coherence morphisms identities.
    pub fn trivial(rank: usize, base: OrderedComplex) -> Self {
        let id = DimensionMatrix::identity(rank);
        let gluing = base
            .simplices_of_dim(1)
            .iter()
            .map(|e| ([e[0], e[1]], id.clone()))
            .collect();
        let coherence = base
            .simplices_of_dim(2)
            .iter()
            .map(|t| ([t[0], t[1], t[2]], MorphismMatrix::identity(&id)))
            .collect();
        ChartedBundle {
            rank,
            base,
            gluing,
            coherence,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> &OrderedComplex {
        &self.base
    }

    pub fn gluing(&self) -> &BTreeMap<[usize; 2], DimensionMatrix> {
        &self.gluing
    }

    pub fn coherence(&self) -> &BTreeMap<[usize; 3], MorphismMatrix<T>> {
        &self.coherence
    }

    pub fn gluing_at(&self, a: usize, b: usize) -> &DimensionMatrix {
        &self.gluing[&[a, b]]
    }

    pub fn coherence_at(&self, a: usize, b: usize, c: usize) -> &MorphismMatrix<T> {
        &self.coherence[&[a, b, c]]
    }

    pub fn coherence_mut(&mut self, a: usize, b: usize, c: usize) -> Option<&mut MorphismMatrix<T>> {
        self.coherence.get_mut(&[a, b, c])
    }
}

fn edge_findings(d: &DimensionMatrix, e: &[usize; 2]) -> Option<Finding> {
    let det = d.det();
    (det.abs() != 1.into()).then(|| Finding {
        simplex: e.to_vec(),
        kind: FindingKind::Determinant { det: det.to_string() },
    })
}

fn triangle_findings<T: ExactField>(bundle: &ChartedBundle<T>, t: &[usize; 3]) -> Vec<Finding> {
    let [a, b, c] = *t;
    let mut out = Vec::new();
    let product = obj_matmul(bundle.gluing_at(a, b), bundle.gluing_at(b, c)).expect("ranks checked on construction");
    let phi = bundle.coherence_at(a, b, c);
    if &product != bundle.gluing_at(a, c) {
        out.push(Finding {
            simplex: t.to_vec(),
            kind: FindingKind::DimensionMismatch {
                detail: format!(
                    "E{a}{b}·E{b}{c} = {product} but E{a}{c} = {}",
                    bundle.gluing_at(a, c)
                ),
            },
        });
    } else if phi.dims() != &product {
        out.push(Finding {
            simplex: t.to_vec(),
            kind: FindingKind::DimensionMismatch {
                detail: format!("coherence has dimensions {} but E{a}{c} = {product}", phi.dims()),
            },
        });
    } else if let Some(entry) = phi.singular_entry() {
        out.push(Finding {
            simplex: t.to_vec(),
            kind: FindingKind::SingularEntry { entry },
        });
    }
    out
}

/// Runs every check of a charted bundle and reports failures sorted by simplex.
pub fn validate_bundle<T>(bundle: &ChartedBundle<T>) -> ValidationReport
where
    T: ExactField + std::fmt::Display + Send + Sync,
{
    let mut findings: Vec<Finding> = bundle
        .gluing
        .iter()
        .filter_map(|(e, d)| edge_findings(d, e))
        .collect();
    let triangles: Vec<[usize; 3]> = bundle.coherence.keys().copied().collect();
    let triangle_results: Vec<Vec<Finding>> = triangles.par_iter().map(|t| triangle_findings(bundle, t)).collect();
    let bad_triangles: Vec<[usize; 3]> = triangles
        .iter()
        .zip(&triangle_results)
        .filter(|(_, f)| !f.is_empty())
        .map(|(t, _)| *t)
        .collect();
    findings.extend(triangle_results.into_iter().flatten());
    let tets = bundle.base.simplices_of_dim(3);
    let tet_results: Vec<Option<Finding>> = tets
        .par_iter()
        .map(|s| {
            let [a, b, c, d] = [s[0], s[1], s[2], s[3]];
            let faces = [[b, c, d], [a, c, d], [a, b, d], [a, b, c]];
            if faces.iter().any(|f| bad_triangles.contains(f)) {
                return None;
            }
            tetrahedron_finding(bundle, [a, b, c, d])
        })
        .collect();
    findings.extend(tet_results.into_iter().flatten());
    ValidationReport::new(findings)
}

pub(crate) fn tetrahedron_finding<T: ExactField + std::fmt::Display>(
    bundle: &ChartedBundle<T>,
    [a, b, c, d]: [usize; 4],
) -> Option<Finding> {
    let defect = tetrahedron_defect(
        bundle.gluing_at(a, b),
        bundle.gluing_at(b, c),
        bundle.gluing_at(c, d),
        bundle.coherence_at(a, b, c),
        bundle.coherence_at(a, b, d),
        bundle.coherence_at(a, c, d),
        bundle.coherence_at(b, c, d),
    );
    match defect {
        Ok(None) => None,
        Ok(Some(diff)) => Some(Finding {
            simplex: vec![a, b, c, d],
            kind: FindingKind::Equation {
                entry: diff.entry,
                position: diff.position,
                left: diff.left.to_string(),
                right: diff.right.to_string(),
            },
        }),
        Err(e) => Some(Finding {
            simplex: vec![a, b, c, d],
            kind: FindingKind::DimensionMismatch { detail: e.to_string() },
        }),
    }
}

/// Whitney sum: block-diagonal gluing and coherence, rank `n + m`.
pub fn whitney_sum<T: ExactField>(e: &ChartedBundle<T>, f: &ChartedBundle<T>) -> Result<ChartedBundle<T>, BundleError> {
    if e.base != f.base {
        return Err(BundleError::BaseMismatch);
    }
    let gluing = e
        .gluing
        .iter()
        .map(|(k, d)| (*k, d.block_sum(&f.gluing[k])))
        .collect();
    let coherence = e
        .coherence
        .iter()
        .map(|(k, m)| (*k, m.block_sum(&f.coherence[k])))
        .collect();
    Ok(ChartedBundle {
        rank: e.rank + f.rank,
        base: e.base.clone(),
        gluing,
        coherence,
    })
}
