use super::{CategoryError, FinCat};

/// Object and arrow assignments of a functor between two finite categories.
///
/// The categories themselves are not stored; [`FunctorMap::check`] verifies
/// the assignment against a given domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctorMap {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl FunctorMap {
    pub fn identity(c: &FinCat) -> FunctorMap {
        FunctorMap {
            objects: (0..c.object_count()).collect(),
            arrows: (0..c.arrow_count()).collect(),
        }
    }

    /// The unique functor into a one-object, one-arrow category.
    pub fn to_terminal(c: &FinCat) -> FunctorMap {
        FunctorMap {
            objects: vec![0; c.object_count()],
            arrows: vec![0; c.arrow_count()],
        }
    }

    /// For posets (at most one arrow per hom-set) the object map determines
    /// the functor. Fails if the map is not monotone.
    pub fn from_monotone(dom: &FinCat, cod: &FinCat, objects: &[usize]) -> Result<FunctorMap, CategoryError> {
        let mut arrows = Vec::with_capacity(dom.arrow_count());
        for (f, a) in dom.arrows().iter().enumerate() {
            let hs = cod.hom(objects[a.source], objects[a.target]);
            match hs {
                [g] => arrows.push(*g),
                [] => {
                    return Err(CategoryError::NotAFunctor(format!(
                        "{} has no image: no arrow {} -> {}",
                        dom.arrows()[f].id,
                        cod.objects()[objects[a.source]],
                        cod.objects()[objects[a.target]]
                    )))
                }
                _ => {
                    return Err(CategoryError::NotAFunctor(format!(
                        "codomain hom-set {} -> {} is not a singleton",
                        cod.objects()[objects[a.source]],
                        cod.objects()[objects[a.target]]
                    )))
                }
            }
        }
        let f = FunctorMap {
            objects: objects.to_vec(),
            arrows,
        };
        f.check(dom, cod)?;
        Ok(f)
    }

    /// Verifies sources, targets, identities and composition exhaustively.
    pub fn check(&self, dom: &FinCat, cod: &FinCat) -> Result<(), CategoryError> {
        let bad = |msg: String| Err(CategoryError::NotAFunctor(msg));
        if self.objects.len() != dom.object_count() || self.arrows.len() != dom.arrow_count() {
            return bad("assignment does not cover the domain".into());
        }
        if self.objects.iter().any(|&o| o >= cod.object_count()) || self.arrows.iter().any(|&f| f >= cod.arrow_count()) {
            return bad("assignment leaves the codomain".into());
        }
        for (f, a) in dom.arrows().iter().enumerate() {
            let img = self.arrows[f];
            if cod.source(img) != self.objects[a.source] || cod.target(img) != self.objects[a.target] {
                return bad(format!("{} is sent to {} with the wrong endpoints", a.id, cod.arrows()[img].id));
            }
        }
        for o in 0..dom.object_count() {
            if self.arrows[dom.identity(o)] != cod.identity(self.objects[o]) {
                return bad(format!("identity of {} is not preserved", dom.objects()[o]));
            }
        }
        for f in 0..dom.arrow_count() {
            for &g in dom.outgoing(dom.target(f)) {
                let gf = dom.compose(g, f).expect("composable");
                if cod.compose(self.arrows[g], self.arrows[f]) != Some(self.arrows[gf]) {
                    return bad(format!(
                        "composite {} . {} is not preserved",
                        dom.arrows()[g].id,
                        dom.arrows()[f].id
                    ));
                }
            }
        }
        Ok(())
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FunctorMap) -> FunctorMap {
        FunctorMap {
            objects: self.objects.iter().map(|&o| then.objects[o]).collect(),
            arrows: self.arrows.iter().map(|&f| then.arrows[f]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.objects.iter().enumerate().all(|(i, &o)| i == o) && self.arrows.iter().enumerate().all(|(i, &f)| i == f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn monotone_maps() {
        let c = builders::chain(3);
        assert!(FunctorMap::from_monotone(&c, &c, &[0, 0, 2]).is_ok());
        assert!(FunctorMap::from_monotone(&c, &c, &[2, 1, 0]).is_err());
    }

    #[test]
    fn identity_checks() {
        let c = builders::fin_sets(2);
        let id = FunctorMap::identity(&c);
        id.check(&c, &c).unwrap();
        assert!(id.then(&id).is_identity());
        let mut broken = id.clone();
        broken.arrows.swap(0, 1);
        assert!(broken.check(&c, &c).is_err());
    }
}
