//! Endofunctors: strict fixed points, algebras, coalgebras and Lefschetz
//! numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::category::{full_subcategory, subcategory, Arrow, CategoryError, FinCat, FunctorMap, DEFAULT_ARROW_CAP};
use crate::exact::Rational;
use crate::mobius::{euler_characteristic, MobiusError, NerveEuler};

/// A functor from a finite category to itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endofunctor {
    category: FinCat,
    map: FunctorMap,
}

impl Endofunctor {
    pub fn new(category: FinCat, map: FunctorMap) -> Result<Endofunctor, CategoryError> {
        map.check(&category, &category)?;
        Ok(Endofunctor { category, map })
    }

    pub fn identity(c: &FinCat) -> Endofunctor {
        Endofunctor {
            category: c.clone(),
            map: FunctorMap::identity(c),
        }
    }

    /// An order-preserving self-map of a poset.
    pub fn from_monotone(c: &FinCat, objects: &[usize]) -> Result<Endofunctor, CategoryError> {
        let map = FunctorMap::from_monotone(c, c, objects)?;
        Ok(Endofunctor {
            category: c.clone(),
            map,
        })
    }

    pub fn category(&self) -> &FinCat {
        &self.category
    }

    pub fn map(&self) -> &FunctorMap {
        &self.map
    }

    pub fn on_object(&self, a: usize) -> usize {
        self.map.objects[a]
    }

    pub fn on_arrow(&self, f: usize) -> usize {
        self.map.arrows[f]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Endofunctor) -> Endofunctor {
        Endofunctor {
            category: self.category.clone(),
            map: self.map.then(&then.map),
        }
    }
}

/// Objects with `Fa = a` and arrows with `Ff = f`.
pub fn fixed_category(f: &Endofunctor) -> FinCat {
    let c = &f.category;
    let objects: Vec<usize> = (0..c.object_count()).filter(|&a| f.on_object(a) == a).collect();
    let arrows: Vec<usize> = (0..c.arrow_count()).filter(|&g| f.on_arrow(g) == g).collect();
    subcategory(c, &objects, &arrows)
        .expect("fixed arrows form a subcategory")
        .with_name(format!("Fix({})", c.name()))
}

/// `Λ(F) = χ(Fix F)`.
pub fn lefschetz_number(f: &Endofunctor) -> Result<Rational, MobiusError> {
    euler_characteristic(&fixed_category(f))
}

/// Alternating count of strings of non-identity arrows each fixed by `F`,
/// for a skeletal domain without endomorphisms other than identities.
pub fn fixed_path_count(f: &Endofunctor) -> Result<NerveEuler, MobiusError> {
    let c = &f.category;
    if let Some(g) = c.iso_between_distinct() {
        return Err(MobiusError::PreconditionFailed(format!("not skeletal: {} is an isomorphism", c.describe_arrow(g))));
    }
    if let Some(g) = (0..c.arrow_count()).find(|&g| c.source(g) == c.target(g) && !c.is_identity(g)) {
        return Err(MobiusError::PreconditionFailed(format!(
            "{} is an endomorphism other than the identity",
            c.describe_arrow(g)
        )));
    }
    let n = c.object_count();
    let fixed: Vec<usize> = (0..c.arrow_count())
        .filter(|&g| !c.is_identity(g) && f.on_arrow(g) == g)
        .collect();
    // v[a] = fixed strings of the current length starting at a
    let mut v: Vec<BigInt> = (0..n).map(|a| BigInt::from(u8::from(f.on_object(a) == a))).collect();
    let mut counts: Vec<BigInt> = Vec::new();
    while v.iter().any(|x| !x.is_zero()) {
        counts.push(v.iter().sum());
        let mut next = vec![BigInt::zero(); n];
        for &g in &fixed {
            next[c.source(g)] += &v[c.target(g)];
        }
        v = next;
        if counts.len() > n + 1 {
            return Err(MobiusError::Inconsistent("fixed path counts do not terminate".into()));
        }
    }
    let chi = counts
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x })
        .sum();
    Ok(NerveEuler { counts, chi })
}

/// Algebras `(a|h)` with `h: Fa -> a`; arrows `(f|h|k)` with
/// `k ∘ Ff = f ∘ h`.
pub fn algebra_category(f: &Endofunctor) -> Result<FinCat, CategoryError> {
    dialgebras(f, false)
}

/// Coalgebras `(a|h)` with `h: a -> Fa`; arrows `(f|h|k)` with
/// `Ff ∘ h = k ∘ f`.
pub fn coalgebra_category(f: &Endofunctor) -> Result<FinCat, CategoryError> {
    dialgebras(f, true)
}

fn dialgebras(func: &Endofunctor, co: bool) -> Result<FinCat, CategoryError> {
    let c = &func.category;
    let structures = |a: usize| -> &[usize] {
        if co {
            c.hom(a, func.on_object(a))
        } else {
            c.hom(func.on_object(a), a)
        }
    };
    let mut objects = Vec::new();
    // (object of c, structure arrow)
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..c.object_count() {
        for &h in structures(a) {
            pairs.push((a, h));
            objects.push(format!("({}|{})", c.objects()[a], c.arrows()[h].id));
        }
    }
    let commutes = |f: usize, h: usize, k: usize| {
        let ff = func.on_arrow(f);
        if co {
            c.compose(ff, h) == c.compose(k, f)
        } else {
            c.compose(k, ff) == c.compose(f, h)
        }
    };
    let mut arrows = Vec::new();
    // (arrow of c, source pair, target pair)
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (p, &(a, h)) in pairs.iter().enumerate() {
        for (q, &(b, k)) in pairs.iter().enumerate() {
            for &f in c.hom(a, b) {
                if commutes(f, h, k) {
                    index.insert((f, p, q), arrows.len());
                    triples.push((f, p, q));
                    arrows.push(Arrow {
                        id: format!("({}|{}|{})", c.arrows()[f].id, c.arrows()[h].id, c.arrows()[k].id),
                        source: p,
                        target: q,
                    });
                    if arrows.len() > DEFAULT_ARROW_CAP {
                        return Err(CategoryError::SizeOverflow {
                            arrows: arrows.len(),
                            cap: DEFAULT_ARROW_CAP,
                        });
                    }
                }
            }
        }
    }
    let identities = pairs.iter().enumerate().map(|(p, &(a, _))| index[&(c.identity(a), p, p)]).collect();
    let name = format!("{}({})", if co { "Coalg" } else { "Alg" }, c.name());
    let cat = FinCat::from_table(name, objects, arrows, identities, |g, f| {
        let (fa, p, _) = triples[f];
        let (ga, _, r) = triples[g];
        index.get(&(c.compose(ga, fa)?, p, r)).copied()
    })?;
    Ok(cat)
}

/// Full subposet on `{a : Fa ≤ a}`.
pub fn prefixed_points(f: &Endofunctor) -> FinCat {
    let c = &f.category;
    let objs: Vec<usize> = (0..c.object_count()).filter(|&a| !c.hom(f.on_object(a), a).is_empty()).collect();
    full_subcategory(c, &objs).with_name(format!("Pre({})", c.name()))
}

/// Full subposet on `{a : a ≤ Fa}`.
pub fn postfixed_points(f: &Endofunctor) -> FinCat {
    let c = &f.category;
    let objs: Vec<usize> = (0..c.object_count()).filter(|&a| !c.hom(a, f.on_object(a)).is_empty()).collect();
    full_subcategory(c, &objs).with_name(format!("Post({})", c.name()))
}

/// Every order-preserving map between the object sets of two preorders
/// (hom-sets read as the relation), in lexicographic order.
pub fn monotone_maps(a: &FinCat, b: &FinCat) -> Vec<Vec<usize>> {
    fn extend(a: &FinCat, b: &FinCat, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = current.len();
        if i == a.object_count() {
            out.push(current.clone());
            return;
        }
        for y in 0..b.object_count() {
            let ok = (0..i).all(|j| {
                (a.hom(j, i).is_empty() || !b.hom(current[j], y).is_empty())
                    && (a.hom(i, j).is_empty() || !b.hom(y, current[j]).is_empty())
            });
            if ok {
                current.push(y);
                extend(a, b, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(a, b, &mut Vec::with_capacity(a.object_count()), &mut out);
    out
}

/// `Λ(F)` by the three routes available on a skeletal domain without
/// non-identity endomorphisms: weights on `Fix F`, fixed path count, and
/// both dialgebra categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    pub lefschetz: Option<Rational>,
    pub fixed_paths: Option<BigInt>,
    pub chi_alg: Option<Rational>,
    pub chi_coalg: Option<Rational>,
}

impl LefschetzReport {
    /// All computed values are defined and equal.
    pub fn consistent(&self) -> bool {
        let Some(l) = &self.lefschetz else { return false };
        let paths_ok = self.fixed_paths.as_ref().is_none_or(|p| Rational::from_integer(p.clone()) == *l);
        paths_ok && self.chi_alg.as_ref() == Some(l) && self.chi_coalg.as_ref() == Some(l)
    }
}

pub fn lefschetz_report(f: &Endofunctor) -> Result<LefschetzReport, CategoryError> {
    Ok(LefschetzReport {
        lefschetz: lefschetz_number(f).ok(),
        fixed_paths: fixed_path_count(f).ok().map(|n| n.chi),
        chi_alg: euler_characteristic(&algebra_category(f)?).ok(),
        chi_coalg: euler_characteristic(&coalgebra_category(f)?).ok(),
    })
}

/// `1` if `Fix F` is a single point; handy for sanity checks on posets.
pub fn has_unique_fixed_point(f: &Endofunctor) -> bool {
    let fix = fixed_category(f);
    fix.object_count() == 1 && euler_characteristic(&fix).is_ok_and(|x| x.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::exact::int;

    #[test]
    fn identity_fixes_everything() {
        let c = builders::sphere_poset(2);
        let id = Endofunctor::identity(&c);
        assert_eq!(fixed_category(&id).object_count(), 6);
        assert_eq!(lefschetz_number(&id), Ok(int(2)));
        assert!(lefschetz_report(&id).unwrap().consistent());
    }

    #[test]
    fn swap_has_no_fixed_points() {
        let c = builders::discrete(2);
        let swap = Endofunctor::new(c.clone(), FunctorMap { objects: vec![1, 0], arrows: vec![1, 0] }).unwrap();
        assert_eq!(fixed_category(&swap).object_count(), 0);
        assert_eq!(lefschetz_number(&swap), Ok(int(0)));
    }

    #[test]
    fn constant_at_top() {
        let c = builders::chain(3);
        let top = Endofunctor::from_monotone(&c, &[2, 2, 2]).unwrap();
        assert!(has_unique_fixed_point(&top));
        let r = lefschetz_report(&top).unwrap();
        assert!(r.consistent(), "{r:?}");
        assert_eq!(algebra_category(&top).unwrap().object_count(), 1);
        assert_eq!(coalgebra_category(&top).unwrap().object_count(), 3);
    }

    #[test]
    fn monotone_self_maps_of_a_chain() {
        // C(2n-1, n) order-preserving self-maps of an n-chain
        assert_eq!(monotone_maps(&builders::chain(3), &builders::chain(3)).len(), 10);
        assert_eq!(monotone_maps(&builders::discrete(2), &builders::discrete(3)).len(), 9);
    }
}
