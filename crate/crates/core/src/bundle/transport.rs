use std::collections::BTreeMap;

use super::{fmt_simplex, BundleError, ChartedBundle, OrderedComplex};
use crate::scalar::ExactField;
use crate::two_vector::{obj_matmul, DimensionMatrix, MorphismMatrix};

/// A vertex map from `source` into another complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: OrderedComplex,
    pub map: BTreeMap<usize, usize>,
}

impl SimplicialMap {
    pub fn identity(complex: &OrderedComplex) -> Self {
        SimplicialMap {
            source: complex.clone(),
            map: complex.vertices().iter().map(|&v| (v, v)).collect(),
        }
    }

    /// Image of a simplex with repeated vertices removed.
    pub fn image(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().map(|v| self.map[v]).collect();
        out.dedup();
        out
    }

    fn check_total(&self, target: &OrderedComplex) -> Result<(), BundleError> {
        for v in self.source.vertices() {
            match self.map.get(v) {
                None => return Err(BundleError::NotSimplicial(format!("vertex {v} has no image"))),
                Some(w) if !target.contains(&[*w]) => {
                    return Err(BundleError::NotSimplicial(format!("vertex {v} maps to unknown vertex {w}")))
                }
                _ => {}
            }
        }
        if let Some(v) = self.map.keys().find(|v| !self.source.contains(&[**v])) {
            return Err(BundleError::NotSimplicial(format!("map given for unknown vertex {v}")));
        }
        Ok(())
    }

    fn check_order(&self) -> Result<(), BundleError> {
        let vs = self.source.vertices();
        for pair in vs.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            if self.map[&u] > self.map[&v] {
                return Err(BundleError::NotOrderPreserving(format!(
                    "{u} < {v} but {} > {}",
                    self.map[&u], self.map[&v]
                )));
            }
        }
        Ok(())
    }

    fn check_simplicial(&self, target: &OrderedComplex) -> Result<(), BundleError> {
        for s in self.source.simplices() {
            let mut img: Vec<usize> = s.iter().map(|v| self.map[v]).collect();
            img.sort_unstable();
            img.dedup();
            if !target.contains(&img) {
                return Err(BundleError::NotSimplicial(format!(
                    "{} maps to {}, which is not a simplex",
                    fmt_simplex(s),
                    fmt_simplex(&img)
                )));
            }
        }
        Ok(())
    }
}

/// Pulls `bundle` back to `map.source`; collapsed edges get `I_n` and
/// collapsed triangles identity coherence.
fn transport<T: ExactField>(bundle: &ChartedBundle<T>, map: &SimplicialMap) -> Result<ChartedBundle<T>, BundleError> {
    let id = DimensionMatrix::identity(bundle.rank());
    let edge = |a: usize, b: usize| if a == b { id.clone() } else { bundle.gluing_at(a, b).clone() };
    let mut gluing = BTreeMap::new();
    for e in map.source.simplices_of_dim(1) {
        gluing.insert([e[0], e[1]], edge(map.map[&e[0]], map.map[&e[1]]));
    }
    let mut coherence = BTreeMap::new();
    for t in map.source.simplices_of_dim(2) {
        let [a, b, c] = [map.map[&t[0]], map.map[&t[1]], map.map[&t[2]]];
        let phi = if a < b && b < c {
            bundle.coherence_at(a, b, c).clone()
        } else {
            // unitors are identities in the skeletal model
            MorphismMatrix::identity(&obj_matmul(&edge(a, b), &edge(b, c))?)
        };
        coherence.insert([t[0], t[1], t[2]], phi);
    }
    ChartedBundle::new(bundle.rank(), map.source.clone(), gluing, coherence)
}

/// Refinement along an order-preserving carrier function.
pub fn refine<T: ExactField>(bundle: &ChartedBundle<T>, carrier: &SimplicialMap) -> Result<ChartedBundle<T>, BundleError> {
    carrier.check_total(bundle.base())?;
    carrier.check_order()?;
    carrier.check_simplicial(bundle.base())?;
    transport(bundle, carrier)
}

/// Pullback along an order-preserving simplicial map.
pub fn pullback<T: ExactField>(bundle: &ChartedBundle<T>, f: &SimplicialMap) -> Result<ChartedBundle<T>, BundleError> {
    f.check_total(bundle.base())?;
    f.check_simplicial(bundle.base())?;
    f.check_order()?;
    transport(bundle, f)
}
