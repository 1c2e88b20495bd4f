use std::collections::BTreeMap;

use super::BarError;
use crate::bundle::{validate_bundle, ChartedBundle, OrderedComplex};
use crate::scalar::ExactField;
use crate::two_vector::{obj_matmul, DimensionMatrix, MorphismMatrix};

/// A `p`-cell of the bar construction of `M_n(V)`: objects `M^{ab}` for
/// `a < b` in `0..=p` and morphisms `μ^{abc}: M^{ab}·M^{bc} → M^{ac}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BarCell<T> {
    degree: usize,
    rank: usize,
    objects: BTreeMap<(usize, usize), DimensionMatrix>,
    morphisms: BTreeMap<(usize, usize, usize), MorphismMatrix<T>>,
}

impl<T: ExactField> BarCell<T> {
    /// Checks that the arrays are exactly triangular and of a single rank.
    pub fn new(
        degree: usize,
        objects: BTreeMap<(usize, usize), DimensionMatrix>,
        morphisms: BTreeMap<(usize, usize, usize), MorphismMatrix<T>>,
    ) -> Result<Self, BarError> {
        let pairs = (0..=degree).flat_map(|a| (a + 1..=degree).map(move |b| (a, b)));
        let expected_pairs: Vec<(usize, usize)> = pairs.collect();
        let expected_triples: Vec<(usize, usize, usize)> = (0..=degree)
            .flat_map(|a| (a + 1..=degree).flat_map(move |b| (b + 1..=degree).map(move |c| (a, b, c))))
            .collect();
        if objects.keys().copied().collect::<Vec<_>>() != expected_pairs {
            return Err(BarError::Malformed(format!("objects must be indexed by all a < b in 0..={degree}")));
        }
        if morphisms.keys().copied().collect::<Vec<_>>() != expected_triples {
            return Err(BarError::Malformed(format!(
                "morphisms must be indexed by all a < b < c in 0..={degree}"
            )));
        }
        let rank = objects.values().next().map_or(0, DimensionMatrix::rank);
        if objects.values().any(|d| d.rank() != rank) || morphisms.values().any(|m| m.rank() != rank) {
            return Err(BarError::Malformed("entries of different ranks".into()));
        }
        Ok(BarCell {
            degree,
            rank,
            objects,
            morphisms,
        })
    }

    /// The data of `bundle` on one of its simplices, relabelled `0..=p`.
    pub fn from_bundle(bundle: &ChartedBundle<T>, simplex: &[usize]) -> Result<Self, BarError> {
        if !bundle.base().contains(simplex) {
            return Err(BarError::Malformed("not a simplex of the base".into()));
        }
        let p = simplex.len() - 1;
        let mut objects = BTreeMap::new();
        let mut morphisms = BTreeMap::new();
        for a in 0..=p {
            for b in a + 1..=p {
                objects.insert((a, b), bundle.gluing_at(simplex[a], simplex[b]).clone());
                for c in b + 1..=p {
                    morphisms.insert((a, b, c), bundle.coherence_at(simplex[a], simplex[b], simplex[c]).clone());
                }
            }
        }
        let mut cell = Self::new(p, objects, morphisms)?;
        cell.rank = bundle.rank();
        Ok(cell)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn object(&self, a: usize, b: usize) -> &DimensionMatrix {
        &self.objects[&(a, b)]
    }

    pub fn morphism(&self, a: usize, b: usize, c: usize) -> &MorphismMatrix<T> {
        &self.morphisms[&(a, b, c)]
    }

    pub fn morphism_mut(&mut self, a: usize, b: usize, c: usize) -> Option<&mut MorphismMatrix<T>> {
        self.morphisms.get_mut(&(a, b, c))
    }

    /// Simplicial operator along a weakly increasing `f: [q] → [p]`
    /// (`f[i]` is the image of `i`); repeated vertices get `I_n` and identities.
    pub fn pullback(&self, f: &[usize]) -> Result<Self, BarError> {
        if f.is_empty() || f.windows(2).any(|w| w[0] > w[1]) || f.iter().any(|&x| x > self.degree) {
            return Err(BarError::Malformed("simplicial operator must be weakly increasing into the cell".into()));
        }
        let id = DimensionMatrix::identity(self.rank);
        let edge = |a: usize, b: usize| if a == b { id.clone() } else { self.objects[&(a, b)].clone() };
        let q = f.len() - 1;
        let mut objects = BTreeMap::new();
        let mut morphisms = BTreeMap::new();
        for a in 0..=q {
            for b in a + 1..=q {
                objects.insert((a, b), edge(f[a], f[b]));
                for c in b + 1..=q {
                    let (x, y, z) = (f[a], f[b], f[c]);
                    let mu = if x < y && y < z {
                        self.morphisms[&(x, y, z)].clone()
                    } else {
                        MorphismMatrix::identity(&obj_matmul(&edge(x, y), &edge(y, z)).map_err(|e| BarError::Malformed(e.to_string()))?)
                    };
                    morphisms.insert((a, b, c), mu);
                }
            }
        }
        Ok(BarCell {
            degree: q,
            rank: self.rank,
            objects,
            morphisms,
        })
    }

    /// The 2-dimensional faces, keyed by their vertex triple.
    pub fn two_faces(&self) -> BTreeMap<(usize, usize, usize), BarCell<T>> {
        self.morphisms
            .keys()
            .map(|&(a, b, c)| ((a, b, c), self.pullback(&[a, b, c]).expect("increasing")))
            .collect()
    }

    /// Glues a `p`-cell from 2-cells; faces sharing an edge must agree on it.
    pub fn from_two_faces(degree: usize, faces: &BTreeMap<(usize, usize, usize), BarCell<T>>) -> Result<Self, BarError> {
        let mut objects: BTreeMap<(usize, usize), DimensionMatrix> = BTreeMap::new();
        let mut morphisms = BTreeMap::new();
        for (&(a, b, c), face) in faces {
            if face.degree != 2 {
                return Err(BarError::Malformed("faces must be 2-cells".into()));
            }
            for ((x, y), d) in [((a, b), face.object(0, 1)), ((b, c), face.object(1, 2)), ((a, c), face.object(0, 2))] {
                if let Some(old) = objects.insert((x, y), d.clone()) {
                    if &old != d {
                        return Err(BarError::Malformed(format!("faces disagree on edge ({x},{y})")));
                    }
                }
            }
            morphisms.insert((a, b, c), face.morphism(0, 1, 2).clone());
        }
        if degree == 1 && objects.is_empty() {
            return Err(BarError::Malformed("a 1-cell has no 2-faces".into()));
        }
        Self::new(degree, objects, morphisms)
    }

    fn to_bundle(&self) -> ChartedBundle<T> {
        let gluing = self.objects.iter().map(|(&(a, b), d)| ([a, b], d.clone())).collect();
        let coherence = self
            .morphisms
            .iter()
            .map(|(&(a, b, c), m)| ([a, b, c], m.clone()))
            .collect();
        ChartedBundle::new(self.rank, OrderedComplex::simplex(self.degree), gluing, coherence)
            .expect("triangular arrays cover the simplex")
    }
}

/// Dimension compatibility, invertibility and all tetrahedron equations; for
/// `p ≥ 2` also that the cell is recovered from its 2-faces.
pub fn validate_bar_cell<T>(cell: &BarCell<T>) -> bool
where
    T: ExactField + std::fmt::Display + Send + Sync,
{
    let report = validate_bundle(&cell.to_bundle());
    // determinants are not part of the bar construction of M_n(V)
    let ok = report
        .findings()
        .iter()
        .all(|f| matches!(f.kind, crate::bundle::FindingKind::Determinant { .. }));
    if !ok {
        return false;
    }
    if cell.degree >= 2 {
        match BarCell::from_two_faces(cell.degree, &cell.two_faces()) {
            Ok(rebuilt) => rebuilt == *cell,
            Err(_) => false,
        }
    } else {
        true
    }
}
