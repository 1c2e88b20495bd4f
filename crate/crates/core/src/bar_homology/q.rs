use super::{BarError, FiniteMonoid, Morphism, SmallCategory};

/// The category `Q = B(*, M, G)` of a monoid map `f: M → G` into a finite group.
///
/// Objects are the elements `g` of `G`; the morphism `(m, g)` goes from
/// `f(m)·g` to `g` and has index `m·|G| + g`. Composing `(m, g)` followed by
/// `(m', g')` (so `g = f(m')·g'`) gives `(m·m', g')`.
pub fn q_category(m: &FiniteMonoid, g: &FiniteMonoid, f: &[usize]) -> Result<SmallCategory, BarError> {
    if !g.is_group() {
        return Err(BarError::NotGroup);
    }
    if f.len() != m.len() || f.iter().any(|&x| x >= g.len()) {
        return Err(BarError::Malformed("map must send every monoid element into the group".into()));
    }
    if f[m.unit()] != g.unit() {
        return Err(BarError::NotHomomorphism {
            a: m.names()[m.unit()].clone(),
            b: m.names()[m.unit()].clone(),
        });
    }
    for a in 0..m.len() {
        for b in 0..m.len() {
            if f[m.mul(a, b)] != g.mul(f[a], f[b]) {
                return Err(BarError::NotHomomorphism {
                    a: m.names()[a].clone(),
                    b: m.names()[b].clone(),
                });
            }
        }
    }
    let ng = g.len();
    let objects = g.names().to_vec();
    let mut morphisms = Vec::with_capacity(m.len() * ng);
    for x in 0..m.len() {
        for y in 0..ng {
            morphisms.push(Morphism {
                name: format!("({},{})", m.names()[x], g.names()[y]),
                source: g.mul(f[x], y),
                target: y,
            });
        }
    }
    let mut composites = Vec::new();
    for x in 0..m.len() {
        for y in 0..ng {
            let first = x * ng + y;
            for x2 in 0..m.len() {
                for y2 in 0..ng {
                    if g.mul(f[x2], y2) == y {
                        composites.push((x2 * ng + y2, first, m.mul(x, x2) * ng + y2));
                    }
                }
            }
        }
    }
    let identities = (0..ng).map(|y| m.unit() * ng + y).collect();
    SmallCategory::new(objects, morphisms, &composites, identities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar_homology::{homology, nerve_category};
    use crate::exact_linalg::AbelianGroup;

    #[test]
    fn z2_identity() {
        let z2 = FiniteMonoid::cyclic(2);
        let q = q_category(&z2, &z2, &[0, 1]).unwrap();
        assert_eq!(q.objects().len(), 2);
        assert_eq!(q.morphisms().len(), 4);
        let n = nerve_category(&q, 4);
        assert_eq!(n.count(2), 8);
        assert!(homology(&n, 3).unwrap().is_acyclic());
    }

    #[test]
    fn trivial_monoid_gives_discrete() {
        let z3 = FiniteMonoid::cyclic(3);
        let q = q_category(&FiniteMonoid::trivial(), &z3, &[0]).unwrap();
        let h = homology(&nerve_category(&q, 2), 1).unwrap();
        assert_eq!(h.groups[0], AbelianGroup::free(3));
    }

    #[test]
    fn rejects_non_homomorphism() {
        let z2 = FiniteMonoid::cyclic(2);
        let z3 = FiniteMonoid::cyclic(3);
        let err = q_category(&z2, &z3, &[0, 1]).unwrap_err();
        assert_eq!(err, BarError::NotHomomorphism { a: "1".into(), b: "1".into() });
        let idem = FiniteMonoid::new(vec!["1".into(), "p".into()], vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert_eq!(q_category(&z2, &idem, &[0, 0]).unwrap_err(), BarError::NotGroup);
    }

    #[test]
    fn s3_identity_is_contractible() {
        let s3 = FiniteMonoid::symmetric3();
        let f: Vec<usize> = (0..6).collect();
        let q = q_category(&s3, &s3, &f).unwrap();
        assert_eq!(q.morphisms().len(), 36);
        assert!(homology(&nerve_category(&q, 4), 3).unwrap().is_acyclic());
    }
}
