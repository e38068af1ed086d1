use super::{Arrow, CategoryError, FinCat, DEFAULT_ARROW_CAP};

/// A profunctor `M : B^op × A -> Set` between finite categories.
///
/// An element `m ∈ M(b, a)` behaves like an arrow `b -> a`: arrows of `B`
/// act on the left by precomposition and arrows of `A` on the right by
/// postcomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profunctor {
    b: FinCat,
    a: FinCat,
    /// `elements[b][a]` names the elements of `M(b, a)`.
    elements: Vec<Vec<Vec<String>>>,
    /// For `β: b' -> b`, `left[β][a][i]` is the index of `m_i ∘ β` in
    /// `M(b', a)`, where `m_i ∈ M(b, a)`.
    left: Vec<Vec<Vec<usize>>>,
    /// For `α: a -> a'`, `right[α][b][i]` is the index of `α ∘ m_i` in
    /// `M(b, a')`, where `m_i ∈ M(b, a)`.
    right: Vec<Vec<Vec<usize>>>,
}

impl Profunctor {
    /// Builds and checks a profunctor from explicit action tables.
    pub fn new(
        b: FinCat,
        a: FinCat,
        elements: Vec<Vec<Vec<String>>>,
        left: Vec<Vec<Vec<usize>>>,
        right: Vec<Vec<Vec<usize>>>,
    ) -> Result<Profunctor, CategoryError> {
        let p = Profunctor {
            b,
            a,
            elements,
            left,
            right,
        };
        p.check()?;
        Ok(p)
    }

    /// `M(b, a)` has `k` elements `m1..mk` everywhere and every arrow acts
    /// as the identity.
    pub fn constant(b: &FinCat, a: &FinCat, k: usize) -> Profunctor {
        let names: Vec<String> = (1..=k).map(|i| format!("m{i}")).collect();
        let elements = vec![vec![names; a.object_count()]; b.object_count()];
        let ident: Vec<usize> = (0..k).collect();
        let left = vec![vec![ident.clone(); a.object_count()]; b.arrow_count()];
        let right = vec![vec![ident; b.object_count()]; a.arrow_count()];
        Profunctor::new(b.clone(), a.clone(), elements, left, right).expect("constant profunctor")
    }

    /// The hom profunctor `M(b, a) = C(b, a)`, whose collage has two copies
    /// of `C` glued along the identity.
    pub fn hom(c: &FinCat) -> Profunctor {
        Profunctor::from_functor(c, c, &super::FunctorMap::identity(c)).expect("identity functor")
    }

    /// `M(b, a) = A(F b, a)` for a functor `F: B -> A`.
    pub fn from_functor(b: &FinCat, a: &FinCat, f: &super::FunctorMap) -> Result<Profunctor, CategoryError> {
        f.check(b, a)?;
        let mut elements = Vec::with_capacity(b.object_count());
        for x in 0..b.object_count() {
            elements.push(
                (0..a.object_count())
                    .map(|y| a.hom(f.objects[x], y).iter().map(|&h| a.arrows()[h].id.clone()).collect())
                    .collect(),
            );
        }
        let pos = |h: usize| {
            let (s, t) = (a.source(h), a.target(h));
            a.hom(s, t).iter().position(|&k| k == h).expect("in hom-set")
        };
        let left = (0..b.arrow_count())
            .map(|beta| {
                let fb = f.arrows[beta];
                (0..a.object_count())
                    .map(|y| {
                        a.hom(f.objects[b.target(beta)], y)
                            .iter()
                            .map(|&m| pos(a.compose(m, fb).expect("composable")))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let right = (0..a.arrow_count())
            .map(|alpha| {
                (0..b.object_count())
                    .map(|x| {
                        a.hom(f.objects[x], a.source(alpha))
                            .iter()
                            .map(|&m| pos(a.compose(alpha, m).expect("composable")))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Profunctor::new(b.clone(), a.clone(), elements, left, right)
    }

    pub fn left_category(&self) -> &FinCat {
        &self.b
    }

    pub fn right_category(&self) -> &FinCat {
        &self.a
    }

    pub fn elements(&self, b: usize, a: usize) -> &[String] {
        &self.elements[b][a]
    }

    /// `|M(b, a)|` as a matrix indexed by the objects of `B` then `A`.
    pub fn cardinalities(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }

    pub fn act_left(&self, beta: usize, a: usize, m: usize) -> usize {
        self.left[beta][a][m]
    }

    pub fn act_right(&self, alpha: usize, b: usize, m: usize) -> usize {
        self.right[alpha][b][m]
    }

    fn check(&self) -> Result<(), CategoryError> {
        let bad = |msg: String| Err(CategoryError::InvalidProfunctor(msg));
        let (nb, na) = (self.b.object_count(), self.a.object_count());
        if self.elements.len() != nb || self.elements.iter().any(|r| r.len() != na) {
            return bad("element table has the wrong shape".into());
        }
        if self.left.len() != self.b.arrow_count() || self.right.len() != self.a.arrow_count() {
            return bad("action tables have the wrong shape".into());
        }
        for x in 0..nb {
            for y in 0..na {
                let es = &self.elements[x][y];
                let mut seen = std::collections::HashSet::new();
                for e in es {
                    if !super::is_valid_identifier(e) || e.contains('|') || !seen.insert(e) {
                        return bad(format!("invalid or duplicate element {e:?}"));
                    }
                }
            }
        }
        for beta in 0..self.b.arrow_count() {
            let (s, t) = (self.b.source(beta), self.b.target(beta));
            for y in 0..na {
                let row = &self.left[beta][y];
                if row.len() != self.elements[t][y].len() || row.iter().any(|&i| i >= self.elements[s][y].len()) {
                    return bad(format!("left action of {} at {} is malformed", self.b.arrows()[beta].id, self.a.objects()[y]));
                }
            }
        }
        for alpha in 0..self.a.arrow_count() {
            let (s, t) = (self.a.source(alpha), self.a.target(alpha));
            for x in 0..nb {
                let row = &self.right[alpha][x];
                if row.len() != self.elements[x][s].len() || row.iter().any(|&i| i >= self.elements[x][t].len()) {
                    return bad(format!("right action of {} at {} is malformed", self.a.arrows()[alpha].id, self.b.objects()[x]));
                }
            }
        }
        // identities act trivially
        for x in 0..nb {
            let id = self.b.identity(x);
            for y in 0..na {
                if self.left[id][y].iter().enumerate().any(|(i, &j)| i != j) {
                    return bad(format!("identity of {} acts nontrivially", self.b.objects()[x]));
                }
            }
        }
        for y in 0..na {
            let id = self.a.identity(y);
            for x in 0..nb {
                if self.right[id][x].iter().enumerate().any(|(i, &j)| i != j) {
                    return bad(format!("identity of {} acts nontrivially", self.a.objects()[y]));
                }
            }
        }
        // (m ∘ β) ∘ β' = m ∘ (β ∘ β')
        for bp in 0..self.b.arrow_count() {
            for &beta in self.b.outgoing(self.b.target(bp)) {
                let comp = self.b.compose(beta, bp).expect("composable");
                for y in 0..na {
                    for m in 0..self.elements[self.b.target(beta)][y].len() {
                        if self.left[bp][y][self.left[beta][y][m]] != self.left[comp][y][m] {
                            return bad(format!(
                                "left action is not functorial at {} . {}",
                                self.b.arrows()[beta].id,
                                self.b.arrows()[bp].id
                            ));
                        }
                    }
                }
            }
        }
        for alpha in 0..self.a.arrow_count() {
            for &ap in self.a.outgoing(self.a.target(alpha)) {
                let comp = self.a.compose(ap, alpha).expect("composable");
                for x in 0..nb {
                    for m in 0..self.elements[x][self.a.source(alpha)].len() {
                        if self.right[ap][x][self.right[alpha][x][m]] != self.right[comp][x][m] {
                            return bad(format!(
                                "right action is not functorial at {} . {}",
                                self.a.arrows()[ap].id,
                                self.a.arrows()[alpha].id
                            ));
                        }
                    }
                }
            }
        }
        // (α ∘ m) ∘ β = α ∘ (m ∘ β)
        for beta in 0..self.b.arrow_count() {
            for alpha in 0..self.a.arrow_count() {
                let (bs, bt) = (self.b.source(beta), self.b.target(beta));
                let (as_, at) = (self.a.source(alpha), self.a.target(alpha));
                for m in 0..self.elements[bt][as_].len() {
                    let one = self.left[beta][at][self.right[alpha][bt][m]];
                    let two = self.right[alpha][bs][self.left[beta][as_][m]];
                    if one != two {
                        return bad(format!(
                            "actions of {} and {} do not commute",
                            self.b.arrows()[beta].id,
                            self.a.arrows()[alpha].id
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn collage(p: &Profunctor) -> Result<FinCat, CategoryError> {
    collage_capped(p, DEFAULT_ARROW_CAP)
}

/// The collage of `M : B ⇸ A`: objects of `B` (tagged `@0`) followed by those
/// of `A` (tagged `@1`), with `M(b, a)` as the arrows `b -> a`, named
/// `(b|m|a)`. There are no arrows from `A` to `B`.
pub fn collage_capped(p: &Profunctor, cap: usize) -> Result<FinCat, CategoryError> {
    let (b, a) = (&p.b, &p.a);
    let (nb, na) = (b.object_count(), a.object_count());
    let (mb, ma) = (b.arrow_count(), a.arrow_count());
    let cross: usize = p.elements.iter().flatten().map(Vec::len).sum();
    let total = mb + ma + cross;
    if total > cap {
        return Err(CategoryError::SizeOverflow { arrows: total, cap });
    }
    let mut objects: Vec<String> = b.objects().iter().map(|x| format!("{x}@0")).collect();
    objects.extend(a.objects().iter().map(|y| format!("{y}@1")));
    let mut arrows: Vec<Arrow> = b
        .arrows()
        .iter()
        .map(|f| Arrow {
            id: format!("{}@0", f.id),
            source: f.source,
            target: f.target,
        })
        .collect();
    arrows.extend(a.arrows().iter().map(|f| Arrow {
        id: format!("{}@1", f.id),
        source: f.source + nb,
        target: f.target + nb,
    }));
    // cross arrow index of (x, y, i)
    let mut cross_index = vec![vec![Vec::new(); na]; nb];
    // inverse: (x, y, i) for each cross arrow
    let mut cross_of = Vec::with_capacity(cross);
    for x in 0..nb {
        for y in 0..na {
            for (i, m) in p.elements[x][y].iter().enumerate() {
                cross_index[x][y].push(arrows.len());
                cross_of.push((x, y, i));
                arrows.push(Arrow {
                    id: format!("({}|{m}|{})", b.objects()[x], a.objects()[y]),
                    source: x,
                    target: y + nb,
                });
            }
        }
    }
    let mut identities: Vec<usize> = b.identities().to_vec();
    identities.extend(a.identities().iter().map(|&i| i + mb));
    let cat = FinCat::from_table(
        format!("coll({},{})", b.name(), a.name()),
        objects,
        arrows,
        identities,
        |g, f| {
            let kind = |h: usize| {
                if h < mb {
                    0
                } else if h < mb + ma {
                    1
                } else {
                    2
                }
            };
            match (kind(g), kind(f)) {
                (0, 0) => b.compose(g, f),
                (1, 1) => a.compose(g - mb, f - mb).map(|h| h + mb),
                (2, 0) => {
                    let (_, y, i) = cross_of[g - mb - ma];
                    let j = p.left[f][y][i];
                    Some(cross_index[b.source(f)][y][j])
                }
                (1, 2) => {
                    let (x, _, i) = cross_of[f - mb - ma];
                    let j = p.right[g - mb][x][i];
                    Some(cross_index[x][a.target(g - mb)][j])
                }
                _ => None,
            }
        },
    )?;
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn constant_collage_sizes() {
        let b = builders::discrete(2);
        let a = builders::chain(2);
        let c = collage(&Profunctor::constant(&b, &a, 2)).unwrap();
        assert_eq!(c.object_count(), 4);
        assert_eq!(c.arrow_count(), 2 + 3 + 8);
        assert_eq!(c.hom(0, 3).len(), 2);
        assert!(c.hom(3, 0).is_empty());
    }

    #[test]
    fn hom_profunctor_of_point_is_arrow() {
        let t = builders::discrete(1);
        let c = collage(&Profunctor::hom(&t)).unwrap();
        assert!(c.is_poset());
        assert_eq!(c.arrow_count(), 3);
    }

    #[test]
    fn hom_profunctor_of_group() {
        let g = builders::cyclic_group(3);
        let p = Profunctor::hom(&g);
        assert_eq!(p.cardinalities(), vec![vec![3]]);
        let c = collage(&p).unwrap();
        assert_eq!(c.arrow_count(), 9);
    }

    #[test]
    fn non_functorial_action_is_rejected() {
        let g = builders::cyclic_group(2);
        let t = builders::discrete(1);
        // the generator fixes both elements on one side but swaps on the other
        let elements = vec![vec![vec!["x".to_string(), "y".to_string()]]];
        let gen = g.arrows().iter().position(|f| f.id != "id_*").unwrap();
        let mut left = vec![vec![vec![0, 1]]; 2];
        left[gen] = vec![vec![0, 0]];
        let right = vec![vec![vec![0, 1]]];
        assert!(Profunctor::new(g, t, elements, left, right).is_err());
    }
}
