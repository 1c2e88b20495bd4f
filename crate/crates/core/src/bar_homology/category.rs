use super::{BarError, FiniteMonoid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category: objects, morphisms with endpoints, a composition
/// table and an identity per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    /// `compose[g * m + f] = g ∘ f` when `target(f) = source(g)`
    compose: Vec<Option<usize>>,
    identities: Vec<usize>,
}

impl SmallCategory {
    /// `composites` lists `(g, f, g∘f)`; every composable pair must appear exactly once.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        composites: &[(usize, usize, usize)],
        identities: Vec<usize>,
    ) -> Result<Self, BarError> {
        let m = morphisms.len();
        let o = objects.len();
        if let Some(f) = morphisms.iter().find(|f| f.source >= o || f.target >= o) {
            return Err(BarError::Malformed(format!("morphism {} has an unknown endpoint", f.name)));
        }
        if identities.len() != o {
            return Err(BarError::Malformed(format!("need one identity per object, got {}", identities.len())));
        }
        let mut compose = vec![None; m * m];
        for &(g, f, h) in composites {
            if g >= m || f >= m || h >= m {
                return Err(BarError::Malformed("composition entry out of range".into()));
            }
            let (mg, mf, mh) = (&morphisms[g], &morphisms[f], &morphisms[h]);
            if mf.target != mg.source {
                return Err(BarError::Malformed(format!("{} . {} is not composable", mg.name, mf.name)));
            }
            if mh.source != mf.source || mh.target != mg.target {
                return Err(BarError::Malformed(format!(
                    "{} . {} = {} has the wrong endpoints",
                    mg.name, mf.name, mh.name
                )));
            }
            if compose[g * m + f].replace(h).is_some() {
                return Err(BarError::Malformed(format!("{} . {} given twice", mg.name, mf.name)));
            }
        }
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].target == morphisms[g].source && compose[g * m + f].is_none() {
                    return Err(BarError::Malformed(format!(
                        "missing composite {} . {}",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
            }
        }
        let cat = SmallCategory {
            objects,
            morphisms,
            compose,
            identities,
        };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<(), BarError> {
        for (x, &id) in self.identities.iter().enumerate() {
            let i = self.morphisms.get(id).ok_or_else(|| BarError::Malformed("identity out of range".into()))?;
            if i.source != x || i.target != x {
                return Err(BarError::Axiom {
                    law: "identity endpoints",
                    detail: format!("{} is not an endomorphism of {}", i.name, self.objects[x]),
                });
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            let (l, r) = (self.identities[mf.target], self.identities[mf.source]);
            if self.compose(l, f) != Some(f) || self.compose(f, r) != Some(f) {
                return Err(BarError::Axiom {
                    law: "identity law",
                    detail: mf.name.clone(),
                });
            }
        }
        let m = self.morphisms.len();
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..m {
                    let Some(hg) = self.compose(h, g) else { continue };
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(BarError::Axiom {
                            law: "associativity",
                            detail: format!(
                                "({}, {}, {})",
                                self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-object category of a monoid.
    pub fn from_monoid(monoid: &FiniteMonoid) -> Self {
        let n = monoid.len();
        let morphisms = monoid
            .names()
            .iter()
            .map(|name| Morphism {
                name: name.clone(),
                source: 0,
                target: 0,
            })
            .collect();
        let composites: Vec<_> = (0..n)
            .flat_map(|g| (0..n).map(move |f| (g, f)))
            .map(|(g, f)| (g, f, monoid.mul(g, f)))
            .collect();
        Self::new(vec!["*".into()], morphisms, &composites, vec![monoid.unit()]).expect("monoid axioms")
    }

    /// `k` objects and only identities.
    pub fn discrete(k: usize) -> Self {
        let objects = (0..k).map(|i| i.to_string()).collect();
        let morphisms = (0..k)
            .map(|i| Morphism {
                name: format!("id{i}"),
                source: i,
                target: i,
            })
            .collect();
        let composites: Vec<_> = (0..k).map(|i| (i, i, i)).collect();
        Self::new(objects, morphisms, &composites, (0..k).collect()).expect("discrete category")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    /// `g ∘ f`, if composable.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphisms.len() + f]
    }
}
