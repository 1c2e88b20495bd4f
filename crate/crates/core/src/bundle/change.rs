use std::collections::BTreeMap;

use num_traits::Signed;

use super::{fmt_simplex, BundleError, ChartedBundle, Finding, FindingKind, ValidationReport};
use crate::exact_linalg::Matrix;
use crate::scalar::ExactField;
use crate::two_vector::{
    associator, associator_inverse, mor_matmul, obj_matmul, DimensionMatrix, MorphismMatrix, TwoVectorError,
};

/// An elementary change of trivializations from `E` to `F`:
/// `T^a` per vertex and `τ^{ab}: F^{ab}·T^b → T^a·E^{ab}` per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct TrivializationChange<T> {
    pub t: BTreeMap<usize, DimensionMatrix>,
    pub tau: BTreeMap<[usize; 2], MorphismMatrix<T>>,
}

/// `T = I_n`, `τ` identities.
pub fn identity_change<T: ExactField>(e: &ChartedBundle<T>) -> TrivializationChange<T> {
    let id = DimensionMatrix::identity(e.rank());
    TrivializationChange {
        t: e.base().vertices().iter().map(|&v| (v, id.clone())).collect(),
        tau: e
            .gluing()
            .iter()
            .map(|(k, d)| (*k, MorphismMatrix::identity(d)))
            .collect(),
    }
}

/// The change from `E ⊕ F` to `F ⊕ E`: `T` is the block anti-diagonal
/// permutation and every `τ` is an identity.
pub fn swap_change<T: ExactField>(
    e: &ChartedBundle<T>,
    f: &ChartedBundle<T>,
) -> Result<TrivializationChange<T>, BundleError> {
    if e.base() != f.base() {
        return Err(BundleError::BaseMismatch);
    }
    let (n, m) = (e.rank(), f.rank());
    let swap = DimensionMatrix::new(Matrix::from_fn(n + m, n + m, |i, j| {
        usize::from((i < m && j == n + i) || (i >= m && j + m == i))
    }))?;
    let t = e.base().vertices().iter().map(|&v| (v, swap.clone())).collect();
    let mut tau = BTreeMap::new();
    for (k, d) in e.gluing() {
        let target = obj_matmul(&swap, &d.block_sum(f.gluing_at(k[0], k[1])))?;
        tau.insert(*k, MorphismMatrix::identity(&target));
    }
    Ok(TrivializationChange { t, tau })
}

/// Composite of `first: E → F` and `second: F → G`, a change `E → G` with `T = T'·T`.
pub fn compose_changes<T: ExactField>(
    first: &TrivializationChange<T>,
    second: &TrivializationChange<T>,
    e: &ChartedBundle<T>,
    f: &ChartedBundle<T>,
    g: &ChartedBundle<T>,
) -> Result<TrivializationChange<T>, BundleError> {
    let mut t = BTreeMap::new();
    for (v, d) in &first.t {
        let d2 = second.t.get(v).ok_or_else(|| missing("T", &[*v]))?;
        t.insert(*v, obj_matmul(d2, d)?);
    }
    let mut tau = BTreeMap::new();
    for (k, tau1) in &first.tau {
        let [a, b] = *k;
        let tau2 = second.tau.get(k).ok_or_else(|| missing("tau", k))?;
        let (t_a, t_b) = (&first.t[&a], &first.t[&b]);
        let (s_a, s_b) = (&second.t[&a], &second.t[&b]);
        let (e_ab, f_ab) = (e.gluing_at(a, b), f.gluing_at(a, b));
        let chain = associator::<T>(g.gluing_at(a, b), s_b, t_b)?;
        let chain = mor_matmul(tau2, &MorphismMatrix::identity(t_b))?.compose(&chain)?;
        let chain = associator_inverse::<T>(s_a, f_ab, t_b)?.compose(&chain)?;
        let chain = mor_matmul(&MorphismMatrix::identity(s_a), tau1)?.compose(&chain)?;
        let chain = associator::<T>(s_a, t_a, e_ab)?.compose(&chain)?;
        tau.insert(*k, chain);
    }
    Ok(TrivializationChange { t, tau })
}

fn missing(what: &'static str, s: &[usize]) -> BundleError {
    BundleError::Missing {
        what,
        simplex: fmt_simplex(s),
    }
}

/// Checks a change of trivializations from `e` to `f`: determinants of `T`,
/// edge dimensions, invertibility of `τ`, and the triangle equation with all
/// associators written out.
pub fn validate_change<T>(
    change: &TrivializationChange<T>,
    e: &ChartedBundle<T>,
    f: &ChartedBundle<T>,
) -> Result<ValidationReport, BundleError>
where
    T: ExactField + std::fmt::Display,
{
    if e.base() != f.base() {
        return Err(BundleError::BaseMismatch);
    }
    if e.rank() != f.rank() {
        return Err(BundleError::Rank {
            what: "target bundle",
            simplex: "()".into(),
            expected: e.rank(),
            found: f.rank(),
        });
    }
    let base = e.base();
    for v in base.vertices() {
        let t = change.t.get(v).ok_or_else(|| missing("T", &[*v]))?;
        if t.rank() != e.rank() {
            return Err(BundleError::Rank {
                what: "T",
                simplex: fmt_simplex(&[*v]),
                expected: e.rank(),
                found: t.rank(),
            });
        }
    }
    if let Some(v) = change.t.keys().find(|v| !base.contains(&[**v])) {
        return Err(BundleError::Dangling {
            what: "T",
            simplex: fmt_simplex(&[*v]),
        });
    }
    for edge in base.simplices_of_dim(1) {
        let k = [edge[0], edge[1]];
        let tau = change.tau.get(&k).ok_or_else(|| missing("tau", &k))?;
        if tau.rank() != e.rank() {
            return Err(BundleError::Rank {
                what: "tau",
                simplex: fmt_simplex(&k),
                expected: e.rank(),
                found: tau.rank(),
            });
        }
    }
    if let Some(k) = change.tau.keys().find(|k| !base.contains(&k[..])) {
        return Err(BundleError::Dangling {
            what: "tau",
            simplex: fmt_simplex(k),
        });
    }

    let mut findings = Vec::new();
    for (v, t) in &change.t {
        let det = t.det();
        if det.abs() != 1.into() {
            findings.push(Finding {
                simplex: vec![*v],
                kind: FindingKind::Determinant { det: det.to_string() },
            });
        }
    }
    let mut bad_edges = Vec::new();
    for (k, tau) in &change.tau {
        let [a, b] = *k;
        let left = obj_matmul(f.gluing_at(a, b), &change.t[&b])?;
        let right = obj_matmul(&change.t[&a], e.gluing_at(a, b))?;
        let kind = if left != right {
            Some(FindingKind::DimensionMismatch {
                detail: format!("F{a}{b}·T{b} = {left} but T{a}·E{a}{b} = {right}"),
            })
        } else if tau.dims() != &left {
            Some(FindingKind::DimensionMismatch {
                detail: format!("tau has dimensions {} but F{a}{b}·T{b} = {left}", tau.dims()),
            })
        } else {
            tau.singular_entry().map(|entry| FindingKind::SingularEntry { entry })
        };
        if let Some(kind) = kind {
            bad_edges.push(*k);
            findings.push(Finding { simplex: k.to_vec(), kind });
        }
    }
    for tri in base.simplices_of_dim(2) {
        let [a, b, c] = [tri[0], tri[1], tri[2]];
        if [[a, b], [b, c], [a, c]].iter().any(|k| bad_edges.contains(k)) {
            continue;
        }
        let finding = match triangle_defect(change, e, f, [a, b, c]) {
            Ok(None) => None,
            Ok(Some(kind)) => Some(kind),
            Err(err) => Some(FindingKind::DimensionMismatch { detail: err.to_string() }),
        };
        if let Some(kind) = finding {
            findings.push(Finding {
                simplex: tri.clone(),
                kind,
            });
        }
    }
    Ok(ValidationReport::new(findings))
}

fn triangle_defect<T: ExactField + std::fmt::Display>(
    change: &TrivializationChange<T>,
    e: &ChartedBundle<T>,
    f: &ChartedBundle<T>,
    [a, b, c]: [usize; 3],
) -> Result<Option<FindingKind>, TwoVectorError> {
    let (t_a, t_b, t_c) = (&change.t[&a], &change.t[&b], &change.t[&c]);
    let (e_ab, e_bc) = (e.gluing_at(a, b), e.gluing_at(b, c));
    let (f_ab, f_bc) = (f.gluing_at(a, b), f.gluing_at(b, c));
    let id = MorphismMatrix::<T>::identity;

    // (F_ab F_bc) T_c → F_ab (F_bc T_c) → F_ab (T_b E_bc) → (F_ab T_b) E_bc
    //   → (T_a E_ab) E_bc → T_a (E_ab E_bc) → T_a E_ac
    let left = associator_inverse::<T>(f_ab, f_bc, t_c)?;
    let left = mor_matmul(&id(f_ab), &change.tau[&[b, c]])?.compose(&left)?;
    let left = associator::<T>(f_ab, t_b, e_bc)?.compose(&left)?;
    let left = mor_matmul(&change.tau[&[a, b]], &id(e_bc))?.compose(&left)?;
    let left = associator_inverse::<T>(t_a, e_ab, e_bc)?.compose(&left)?;
    let left = mor_matmul(&id(t_a), e.coherence_at(a, b, c))?.compose(&left)?;

    let right = mor_matmul(f.coherence_at(a, b, c), &id(t_c))?;
    let right = change.tau[&[a, c]].compose(&right)?;

    Ok(left.first_difference(&right).map(|d| FindingKind::Equation {
        entry: d.entry,
        position: d.position,
        left: d.left.to_string(),
        right: d.right.to_string(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{whitney_sum, OrderedComplex};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type Q = BigRational;

    fn scalar_bundle(base: OrderedComplex) -> ChartedBundle<Q> {
        let psi = |a: usize, b: usize| Q::new(BigInt::from(a + 2 * b + 1), BigInt::from(3 * a + b + 1));
        let id = DimensionMatrix::identity(1);
        let gluing = base.simplices_of_dim(1).iter().map(|e| ([e[0], e[1]], id.clone())).collect();
        let coherence = base
            .simplices_of_dim(2)
            .iter()
            .map(|t| {
                let v = psi(t[0], t[1]) * psi(t[1], t[2]) / psi(t[0], t[2]);
                let m = MorphismMatrix::new(id.clone(), vec![Matrix::from_rows(vec![vec![v]]).unwrap()]).unwrap();
                ([t[0], t[1], t[2]], m)
            })
            .collect();
        ChartedBundle::new(1, base, gluing, coherence).unwrap()
    }

    #[test]
    fn identity_change_is_valid() {
        let e = scalar_bundle(OrderedComplex::simplex_boundary(3));
        assert!(validate_change(&identity_change(&e), &e, &e).unwrap().is_valid());
    }

    #[test]
    fn swap_change_is_valid() {
        let base = OrderedComplex::simplex_boundary(3);
        let e = scalar_bundle(base.clone());
        let f = ChartedBundle::trivial(2, base);
        let ef = whitney_sum(&e, &f).unwrap();
        let fe = whitney_sum(&f, &e).unwrap();
        let s = swap_change(&e, &f).unwrap();
        assert!(validate_change(&s, &ef, &fe).unwrap().is_valid());
        let back = swap_change(&f, &e).unwrap();
        let round = compose_changes(&s, &back, &ef, &fe, &ef).unwrap();
        assert!(round.t.values().all(|t| t == &DimensionMatrix::identity(3)));
        assert!(validate_change(&round, &ef, &ef).unwrap().is_valid());
    }

    #[test]
    fn rank_one_swap_matrix() {
        let base = OrderedComplex::simplex(2);
        let one = ChartedBundle::<Q>::trivial(1, base);
        let s = swap_change(&one, &one).unwrap();
        assert_eq!(s.t[&0], DimensionMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn zeroed_tau_is_rejected() {
        let e = scalar_bundle(OrderedComplex::simplex_boundary(3));
        let mut c = identity_change(&e);
        *c.tau.get_mut(&[0, 1]).unwrap().entry_mut(0, 0) = Matrix::zeros(1, 1);
        let r = validate_change(&c, &e, &e).unwrap();
        assert_eq!(r.findings()[0].kind, FindingKind::SingularEntry { entry: (0, 0) });
    }

    #[test]
    fn scaled_tau_breaks_triangle() {
        let e = scalar_bundle(OrderedComplex::simplex(2));
        let mut c = identity_change(&e);
        *c.tau.get_mut(&[0, 1]).unwrap().entry_mut(0, 0) = Matrix::from_rows(vec![vec![Q::from_integer(2.into())]]).unwrap();
        let r = validate_change(&c, &e, &e).unwrap();
        assert_eq!(r.failing(2), vec![&[0, 1, 2][..]]);
    }

    #[test]
    fn coboundary_change_on_scalar_bundle() {
        let base = OrderedComplex::simplex_boundary(3);
        let e = scalar_bundle(base.clone());
        let lam = |v: usize| Q::from_integer(BigInt::from(v as i64 + 2));
        let mut c = identity_change(&e);
        for (k, tau) in c.tau.iter_mut() {
            *tau.entry_mut(0, 0) = Matrix::from_rows(vec![vec![lam(k[0]) / lam(k[1])]]).unwrap();
        }
        // the triangle equation needs λ_a/λ_b · λ_b/λ_c = λ_a/λ_c, which holds
        assert!(validate_change(&c, &e, &e).unwrap().is_valid());
    }
}
