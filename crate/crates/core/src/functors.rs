//! Set- and Cat-valued functors on finite categories: elements, colimits,
//! nondegeneracy, familial representability and weighted counting.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::category::{
    opposite, structural_profile, Arrow, CategoryError, FinCat, FunctorMap, DEFAULT_ARROW_CAP,
};
use crate::exact::{int, Rational};
use crate::mobius::{euler_characteristic, is_weighting, mobius_matrix, MobiusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("not functorial: {0}")]
    NotFunctorial(String),
    #[error("domain is not Cauchy-complete: {0}")]
    DomainNotCauchyComplete(String),
    #[error("not familially representable: the component of {component} has no initial element")]
    NotFamiliallyRepresentable { component: String },
    #[error("Euler characteristic of {0} is undefined")]
    UndefinedChi(String),
    #[error("vector is not a weighting on the domain")]
    NotAWeighting,
    #[error("expected identity failed: {0}")]
    TheoremViolated(String),
    #[error("functors are defined on different categories")]
    DomainMismatch,
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Mobius(#[from] MobiusError),
}

fn valid_element(s: &str) -> bool {
    crate::category::is_valid_identifier(s) && !s.contains('|')
}

/// A functor `X: A -> Set` given by element tables and arrow actions.
///
/// `actions[f][i]` is the index in `X(target f)` of the image of the `i`-th
/// element of `X(source f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctor {
    domain: FinCat,
    sets: Vec<Vec<String>>,
    actions: Vec<Vec<usize>>,
}

impl SetFunctor {
    /// Validates shapes, element ids and the functor laws exhaustively.
    pub fn new(domain: FinCat, sets: Vec<Vec<String>>, actions: Vec<Vec<usize>>) -> Result<SetFunctor, FunctorError> {
        let bad = |m: String| Err(FunctorError::NotFunctorial(m));
        if sets.len() != domain.object_count() {
            return bad(format!("{} element sets for {} objects", sets.len(), domain.object_count()));
        }
        if actions.len() != domain.arrow_count() {
            return bad(format!("{} actions for {} arrows", actions.len(), domain.arrow_count()));
        }
        for (a, set) in sets.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for x in set {
                if !valid_element(x) || !seen.insert(x) {
                    return bad(format!("invalid or repeated element {x:?} at {}", domain.objects()[a]));
                }
            }
        }
        for (f, act) in actions.iter().enumerate() {
            let (s, t) = (domain.source(f), domain.target(f));
            if act.len() != sets[s].len() || act.iter().any(|&y| y >= sets[t].len()) {
                return bad(format!("action of {} is not a function X{} -> X{}", domain.arrows()[f].id, domain.objects()[s], domain.objects()[t]));
            }
        }
        for a in 0..domain.object_count() {
            let id = domain.identity(a);
            if actions[id].iter().enumerate().any(|(i, &y)| i != y) {
                return bad(format!("identity {} does not act trivially", domain.arrows()[id].id));
            }
        }
        for f in 0..domain.arrow_count() {
            for &g in domain.outgoing(domain.target(f)) {
                let gf = domain.compose(g, f).expect("composable");
                if (0..sets[domain.source(f)].len()).any(|x| actions[g][actions[f][x]] != actions[gf][x]) {
                    return bad(format!("X({} . {}) differs from X{} . X{}", domain.arrows()[g].id, domain.arrows()[f].id, domain.arrows()[g].id, domain.arrows()[f].id));
                }
            }
        }
        Ok(SetFunctor { domain, sets, actions })
    }

    /// The representable `A(a, -)`; elements are arrow ids.
    pub fn representable(c: &FinCat, a: usize) -> SetFunctor {
        let sets = (0..c.object_count())
            .map(|b| c.hom(a, b).iter().map(|&g| c.arrows()[g].id.clone()).collect())
            .collect();
        let actions = (0..c.arrow_count())
            .map(|f| {
                let t = c.target(f);
                c.hom(a, c.source(f))
                    .iter()
                    .map(|&g| {
                        let fg = c.compose(f, g).expect("composable");
                        c.hom(a, t).iter().position(|&h| h == fg).expect("in hom-set")
                    })
                    .collect()
            })
            .collect();
        SetFunctor::new(c.clone(), sets, actions).expect("representable functor")
    }

    /// Every object sent to the same set, every arrow to the identity.
    pub fn constant(c: &FinCat, elements: &[String]) -> Result<SetFunctor, FunctorError> {
        let sets = vec![elements.to_vec(); c.object_count()];
        let actions = vec![(0..elements.len()).collect(); c.arrow_count()];
        SetFunctor::new(c.clone(), sets, actions)
    }

    /// Pointwise disjoint union; summand `i` tags its elements `x@i`.
    pub fn sum(parts: &[&SetFunctor]) -> Result<SetFunctor, FunctorError> {
        let Some(first) = parts.first() else {
            return Err(FunctorError::DomainMismatch);
        };
        let c = &first.domain;
        if parts.iter().any(|p| !p.domain.same_structure(c)) {
            return Err(FunctorError::DomainMismatch);
        }
        let mut sets = vec![Vec::new(); c.object_count()];
        let mut offsets = vec![vec![0; parts.len()]; c.object_count()];
        for (a, set) in sets.iter_mut().enumerate() {
            for (i, p) in parts.iter().enumerate() {
                offsets[a][i] = set.len();
                set.extend(p.sets[a].iter().map(|x| format!("{x}@{i}")));
            }
        }
        let actions = (0..c.arrow_count())
            .map(|f| {
                let t = c.target(f);
                parts
                    .iter()
                    .enumerate()
                    .flat_map(|(i, p)| p.actions[f].iter().map(move |&y| (i, y)))
                    .map(|(i, y)| offsets[t][i] + y)
                    .collect()
            })
            .collect();
        SetFunctor::new(c.clone(), sets, actions)
    }

    pub fn domain(&self) -> &FinCat {
        &self.domain
    }

    pub fn set(&self, a: usize) -> &[String] {
        &self.sets[a]
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.actions[f]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    /// `(Xf)(x)` as an element index.
    pub fn apply(&self, f: usize, x: usize) -> usize {
        self.actions[f][x]
    }

    pub fn element_index(&self, a: usize, name: &str) -> Option<usize> {
        self.sets[a].iter().position(|x| x == name)
    }

    /// `|Xa|` for each object.
    pub fn cardinalities(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.sets
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.len();
                o
            })
            .collect()
    }

    fn element_name(&self, (a, x): (usize, usize)) -> String {
        format!("({}|{})", self.domain.objects()[a], self.sets[a][x])
    }
}

/// A strict functor `X: A -> Cat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFunctor {
    domain: FinCat,
    cats: Vec<FinCat>,
    actions: Vec<FunctorMap>,
}

impl CatFunctor {
    pub fn new(domain: FinCat, cats: Vec<FinCat>, actions: Vec<FunctorMap>) -> Result<CatFunctor, FunctorError> {
        let bad = |m: String| Err(FunctorError::NotFunctorial(m));
        if cats.len() != domain.object_count() || actions.len() != domain.arrow_count() {
            return bad("data does not cover the domain".into());
        }
        for (f, act) in actions.iter().enumerate() {
            act.check(&cats[domain.source(f)], &cats[domain.target(f)])
                .map_err(|e| FunctorError::NotFunctorial(format!("X{}: {e}", domain.arrows()[f].id)))?;
        }
        for a in 0..domain.object_count() {
            if !actions[domain.identity(a)].is_identity() {
                return bad(format!("X{} is not the identity functor", domain.arrows()[domain.identity(a)].id));
            }
        }
        for f in 0..domain.arrow_count() {
            for &g in domain.outgoing(domain.target(f)) {
                let gf = domain.compose(g, f).expect("composable");
                if actions[f].then(&actions[g]) != actions[gf] {
                    return bad(format!("X({} . {}) differs from X{} . X{}", domain.arrows()[g].id, domain.arrows()[f].id, domain.arrows()[g].id, domain.arrows()[f].id));
                }
            }
        }
        Ok(CatFunctor { domain, cats, actions })
    }

    /// Every object sent to `cat`, every arrow to its identity functor.
    pub fn constant(c: &FinCat, cat: &FinCat) -> CatFunctor {
        let actions = vec![FunctorMap::identity(cat); c.arrow_count()];
        CatFunctor::new(c.clone(), vec![cat.clone(); c.object_count()], actions).expect("constant functor")
    }

    /// A set-valued functor with each set viewed as a discrete category.
    pub fn from_set_functor(x: &SetFunctor) -> CatFunctor {
        let c = &x.domain;
        let cats: Vec<FinCat> = (0..c.object_count())
            .map(|a| discrete_on(&format!("X{}", c.objects()[a]), x.set(a)))
            .collect();
        let actions = x
            .actions
            .iter()
            .map(|act| FunctorMap {
                objects: act.clone(),
                arrows: act.clone(),
            })
            .collect();
        CatFunctor::new(c.clone(), cats, actions).expect("discrete fibres")
    }

    pub fn domain(&self) -> &FinCat {
        &self.domain
    }

    pub fn category(&self, a: usize) -> &FinCat {
        &self.cats[a]
    }

    pub fn categories(&self) -> &[FinCat] {
        &self.cats
    }

    pub fn action(&self, f: usize) -> &FunctorMap {
        &self.actions[f]
    }
}

/// Discrete category on the given object ids, identities `id_<x>`.
fn discrete_on(name: &str, objects: &[String]) -> FinCat {
    let arrows = objects
        .iter()
        .enumerate()
        .map(|(i, x)| Arrow {
            id: format!("id_{x}"),
            source: i,
            target: i,
        })
        .collect();
    FinCat::from_table(name, objects.to_vec(), arrows, (0..objects.len()).collect(), |g, f| (g == f).then_some(g))
        .expect("discrete category")
}

/// A category of elements together with its projection to the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementsCategory {
    pub category: FinCat,
    pub projection: FunctorMap,
    /// `(a, x)` for each object, `x` indexing an element (or fibre object).
    pub over: Vec<(usize, usize)>,
}

/// Elements of a set-valued functor: objects `(a|x)`, arrows `(f|x)`.
pub fn elements(x: &SetFunctor) -> Result<ElementsCategory, FunctorError> {
    let c = &x.domain;
    let offsets = x.offsets();
    let mut over = Vec::new();
    let mut objects = Vec::new();
    for a in 0..c.object_count() {
        for (i, e) in x.sets[a].iter().enumerate() {
            over.push((a, i));
            objects.push(format!("({}|{e})", c.objects()[a]));
        }
    }
    let total: usize = (0..c.arrow_count()).map(|f| x.sets[c.source(f)].len()).sum();
    if total > DEFAULT_ARROW_CAP {
        return Err(CategoryError::SizeOverflow {
            arrows: total,
            cap: DEFAULT_ARROW_CAP,
        }
        .into());
    }
    let mut arrow_offset = Vec::with_capacity(c.arrow_count());
    let mut arrows = Vec::with_capacity(total);
    let mut proj = Vec::with_capacity(total);
    for f in 0..c.arrow_count() {
        arrow_offset.push(arrows.len());
        let (s, t) = (c.source(f), c.target(f));
        for (i, e) in x.sets[s].iter().enumerate() {
            arrows.push(Arrow {
                id: format!("({}|{e})", c.arrows()[f].id),
                source: offsets[s] + i,
                target: offsets[t] + x.actions[f][i],
            });
            proj.push(f);
        }
    }
    let identities = over.iter().map(|&(a, i)| arrow_offset[c.identity(a)] + i).collect();
    // arrow k = (f|x) with x recovered from the offset
    let decode = |k: usize| {
        let f = proj[k];
        (f, k - arrow_offset[f])
    };
    let cat = FinCat::from_table(format!("elt({})", c.name()), objects, arrows, identities, |g, f| {
        let ((fa, xi), (ga, _)) = (decode(f), decode(g));
        c.compose(ga, fa).map(|h| arrow_offset[h] + xi)
    })
    .map_err(CategoryError::from)?;
    let projection = FunctorMap {
        objects: over.iter().map(|&(a, _)| a).collect(),
        arrows: proj,
    };
    Ok(ElementsCategory {
        category: cat,
        projection,
        over,
    })
}

/// Elements of a Cat-valued functor: objects `(a|x)` with `x` an object of
/// `Xa`, arrows `(f|x|ξ)` with `ξ: (Xf)x -> x'`, composed as
/// `(g|y|η) ∘ (f|x|ξ) = (g∘f | x | η ∘ (Xg)ξ)`.
pub fn elements_of_cat(x: &CatFunctor) -> Result<ElementsCategory, FunctorError> {
    let c = &x.domain;
    let mut over = Vec::new();
    let mut objects = Vec::new();
    let mut obj_offset = Vec::with_capacity(c.object_count());
    for a in 0..c.object_count() {
        obj_offset.push(over.len());
        for (i, e) in x.cats[a].objects().iter().enumerate() {
            over.push((a, i));
            objects.push(format!("({}|{e})", c.objects()[a]));
        }
    }
    let total: usize = (0..c.arrow_count())
        .map(|f| {
            let xt = &x.cats[c.target(f)];
            (0..x.cats[c.source(f)].object_count())
                .map(|i| xt.outgoing(x.actions[f].objects[i]).len())
                .sum::<usize>()
        })
        .sum();
    if total > DEFAULT_ARROW_CAP {
        return Err(CategoryError::SizeOverflow {
            arrows: total,
            cap: DEFAULT_ARROW_CAP,
        }
        .into());
    }
    let mut arrows = Vec::with_capacity(total);
    let mut triples = Vec::with_capacity(total);
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::with_capacity(total);
    for f in 0..c.arrow_count() {
        let (s, t) = (c.source(f), c.target(f));
        let (xs, xt) = (&x.cats[s], &x.cats[t]);
        for i in 0..xs.object_count() {
            for &xi in xt.outgoing(x.actions[f].objects[i]) {
                index.insert((f, i, xi), arrows.len());
                triples.push((f, i, xi));
                arrows.push(Arrow {
                    id: format!("({}|{}|{})", c.arrows()[f].id, xs.objects()[i], xt.arrows()[xi].id),
                    source: obj_offset[s] + i,
                    target: obj_offset[t] + xt.target(xi),
                });
            }
        }
    }
    let identities = over
        .iter()
        .map(|&(a, i)| index[&(c.identity(a), i, x.cats[a].identity(i))])
        .collect();
    let cat = FinCat::from_table(format!("elt({})", c.name()), objects, arrows, identities, |gk, fk| {
        let (f, i, xi) = triples[fk];
        let (g, _, eta) = triples[gk];
        let gf = c.compose(g, f)?;
        let xg_xi = x.actions[g].arrows[xi];
        let composite = x.cats[c.target(g)].compose(eta, xg_xi)?;
        index.get(&(gf, i, composite)).copied()
    })
    .map_err(CategoryError::from)?;
    let projection = FunctorMap {
        objects: over.iter().map(|&(a, _)| a).collect(),
        arrows: triples.iter().map(|&(f, _, _)| f).collect(),
    };
    Ok(ElementsCategory {
        category: cat,
        projection,
        over,
    })
}

/// Connected components of the category of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colimit {
    /// Components sorted by their least member; each member is `(a, x)`.
    pub classes: Vec<ColimitClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitClass {
    /// The lexicographically least member, rendered `(a|x)`.
    pub name: String,
    pub members: Vec<(usize, usize)>,
}

impl Colimit {
    pub fn cardinality(&self) -> usize {
        self.classes.len()
    }
}

fn classes_from(uf: &UnionFind<usize>, members: Vec<(usize, usize)>, name: impl Fn((usize, usize)) -> String) -> Vec<ColimitClass> {
    let mut groups: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (k, m) in members.into_iter().enumerate() {
        groups.entry(uf.find(k)).or_default().push(m);
    }
    let mut classes: Vec<ColimitClass> = groups
        .into_values()
        .map(|members| {
            let name = members.iter().map(|&m| name(m)).min().expect("nonempty class");
            ColimitClass { name, members }
        })
        .collect();
    classes.sort_by(|p, q| p.name.cmp(&q.name));
    classes
}

/// `colim X` as the components of `elt(X)`, found by union-find.
pub fn colimit(x: &SetFunctor) -> Colimit {
    let c = &x.domain;
    let offsets = x.offsets();
    let total: usize = x.sets.iter().map(Vec::len).sum();
    let mut uf = UnionFind::new(total);
    for f in 0..c.arrow_count() {
        let (s, t) = (c.source(f), c.target(f));
        for (i, &j) in x.actions[f].iter().enumerate() {
            uf.union(offsets[s] + i, offsets[t] + j);
        }
    }
    let members = (0..c.object_count())
        .flat_map(|a| (0..x.sets[a].len()).map(move |i| (a, i)))
        .collect();
    Colimit {
        classes: classes_from(&uf, members, |m| x.element_name(m)),
    }
}

/// A diagram in `elt(X)` that cannot be completed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    /// `f: a -> b`, `f': a' -> b` with `(Xf)x = (Xf')x'` and no completing cone.
    Cospan {
        f: String,
        x: String,
        f2: String,
        x2: String,
    },
    /// Parallel `f, f'` with `(Xf)x = (Xf')x` and no `g` equalizing them at `x`.
    Fork { f: String, f2: String, x: String },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::Cospan { f, x, f2, x2 } => {
                write!(out, "cospan {f} at {x} and {f2} at {x2} has no completion")
            }
            Degeneracy::Fork { f, f2, x } => write!(out, "fork {f}, {f2} at {x} has no completion"),
        }
    }
}

/// The first uncompletable cospan or fork, searched exhaustively.
pub fn degeneracy_witness(x: &SetFunctor) -> Option<Degeneracy> {
    let c = &x.domain;
    let offsets = x.offsets();
    let total: usize = x.sets.iter().map(Vec::len).sum();
    // into[(b, y)] lists every (g, z) with g: c -> b and (Xg)z = y
    let mut into: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
    for g in 0..c.arrow_count() {
        let t = c.target(g);
        for (z, &y) in x.actions[g].iter().enumerate() {
            into[offsets[t] + y].push((g, z));
        }
    }
    let el = |a: usize, e: usize| offsets[a] + e;
    let arrow = |f: usize| c.arrows()[f].id.clone();
    let elem = |a: usize, e: usize| x.sets[a][e].clone();

    for incoming in &into {
        for (i, &(f, xa)) in incoming.iter().enumerate() {
            let a = c.source(f);
            for &(f2, xa2) in &incoming[i + 1..] {
                let a2 = c.source(f2);
                let completed = into[el(a, xa)].iter().any(|&(g, z)| {
                    let fg = c.compose(f, g).expect("composable");
                    c.hom(c.source(g), a2)
                        .iter()
                        .any(|&g2| x.actions[g2][z] == xa2 && c.compose(f2, g2) == Some(fg))
                });
                if !completed {
                    return Some(Degeneracy::Cospan {
                        f: arrow(f),
                        x: elem(a, xa),
                        f2: arrow(f2),
                        x2: elem(a2, xa2),
                    });
                }
            }
        }
    }
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let hs = c.hom(a, b);
            for (i, &f) in hs.iter().enumerate() {
                for &f2 in &hs[i + 1..] {
                    for xa in 0..x.sets[a].len() {
                        if x.actions[f][xa] != x.actions[f2][xa] {
                            continue;
                        }
                        let completed = into[el(a, xa)]
                            .iter()
                            .any(|&(g, _)| c.compose(f, g) == c.compose(f2, g));
                        if !completed {
                            return Some(Degeneracy::Fork {
                                f: arrow(f),
                                f2: arrow(f2),
                                x: elem(a, xa),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_nondegenerate(x: &SetFunctor) -> bool {
    degeneracy_witness(x).is_none()
}

/// `X ≅ Σ_a r(a)·A(a, -)` with the initial element of each component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrDecomposition {
    pub coefficients: Vec<usize>,
    /// `(a, x)` initial in its component, one per component.
    pub witnesses: Vec<(usize, usize)>,
}

fn require_cauchy_complete(c: &FinCat) -> Result<(), FunctorError> {
    if structural_profile(c).is_cauchy_complete {
        return Ok(());
    }
    let e = (0..c.arrow_count())
        .find(|&e| c.is_idempotent(e) && !crate::category::idempotent_splits(c, e))
        .expect("an unsplit idempotent");
    Err(FunctorError::DomainNotCauchyComplete(format!("{} does not split", c.describe_arrow(e))))
}

/// Decomposes `X` as a sum of representables by finding an initial element
/// in every component of `elt(X)`; cross-checked against
/// [`is_nondegenerate`] and against the cardinalities of `X`.
pub fn fr_decompose(x: &SetFunctor) -> Result<FrDecomposition, FunctorError> {
    let c = &x.domain;
    require_cauchy_complete(c)?;
    let col = colimit(x);
    let mut coefficients = vec![0; c.object_count()];
    let mut witnesses = Vec::with_capacity(col.classes.len());
    let mut failure = None;
    for class in &col.classes {
        let initial = class.members.iter().copied().find(|&(a, xa)| {
            class.members.iter().all(|&(b, yb)| {
                c.hom(a, b).iter().filter(|&&f| x.actions[f][xa] == yb).count() == 1
            })
        });
        match initial {
            Some((a, xa)) => {
                coefficients[a] += 1;
                witnesses.push((a, xa));
            }
            None => {
                failure = Some(class.name.clone());
                break;
            }
        }
    }
    let nondegenerate = is_nondegenerate(x);
    if let Some(component) = failure {
        if nondegenerate {
            return Err(FunctorError::TheoremViolated(format!(
                "nondegenerate functor has a component without initial element ({component})"
            )));
        }
        return Err(FunctorError::NotFamiliallyRepresentable { component });
    }
    if !nondegenerate {
        return Err(FunctorError::TheoremViolated("sum of representables reported degenerate".into()));
    }
    for b in 0..c.object_count() {
        let rebuilt: usize = (0..c.object_count()).map(|a| coefficients[a] * c.hom(a, b).len()).sum();
        if rebuilt != x.sets[b].len() {
            return Err(FunctorError::TheoremViolated(format!(
                "coefficients rebuild {rebuilt} elements at {}, not {}",
                c.objects()[b],
                x.sets[b].len()
            )));
        }
    }
    Ok(FrDecomposition {
        coefficients,
        witnesses,
    })
}

/// `r(a) = Σ_b |Xb| μ(b, a)`, applied whether or not `X` is a sum of
/// representables.
pub fn representation_coefficients(x: &SetFunctor) -> Result<Vec<Rational>, FunctorError> {
    let c = &x.domain;
    let mu = mobius_matrix(c)?;
    let card = x.cardinalities();
    Ok((0..c.object_count())
        .map(|a| (0..c.object_count()).fold(Rational::from_integer(0.into()), |acc, b| acc + mu.get(b, a) * int(card[b] as i64)))
        .collect())
}

/// Outcome of weighted counting against the union-find colimit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCount {
    /// `Σ_a k^a |Xa|`.
    pub weighted: Rational,
    pub components: usize,
    /// Whether the domain is Cauchy-complete and `X` nondegenerate, in which
    /// case the two counts were required to agree.
    pub theorem_applies: bool,
}

pub fn colimit_cardinality_via_weighting(x: &SetFunctor, k: &[Rational]) -> Result<WeightedCount, FunctorError> {
    let c = &x.domain;
    if !is_weighting(c, k) {
        return Err(FunctorError::NotAWeighting);
    }
    let weighted = x
        .sets
        .iter()
        .zip(k)
        .fold(Rational::from_integer(0.into()), |acc, (s, w)| acc + w * int(s.len() as i64));
    let components = colimit(x).cardinality();
    let theorem_applies = structural_profile(c).is_cauchy_complete && is_nondegenerate(x);
    if theorem_applies && weighted != int(components as i64) {
        return Err(FunctorError::TheoremViolated(format!(
            "weighted count {weighted} differs from {components} components"
        )));
    }
    Ok(WeightedCount {
        weighted,
        components,
        theorem_applies,
    })
}

/// `Σ_a k^a χ(Xa)`, required to equal `χ(elt X)`.
pub fn chi_of_elements(x: &CatFunctor, k: &[Rational]) -> Result<Rational, FunctorError> {
    let c = &x.domain;
    if !is_weighting(c, k) {
        return Err(FunctorError::NotAWeighting);
    }
    let mut total = Rational::from_integer(0.into());
    for a in 0..c.object_count() {
        let chi = euler_characteristic(&x.cats[a])
            .map_err(|_| FunctorError::UndefinedChi(format!("X{}", c.objects()[a])))?;
        total += &k[a] * chi;
    }
    let elt = elements_of_cat(x)?;
    let chi_elt = euler_characteristic(&elt.category).map_err(|_| FunctorError::UndefinedChi("elt(X)".into()))?;
    if chi_elt != total {
        return Err(FunctorError::TheoremViolated(format!("chi(elt X) = {chi_elt} but the weighted sum is {total}")));
    }
    Ok(total)
}

/// `k^{(a,x)} = k^a k^x` from a weighting on the domain and one on each
/// fibre, checked to weight `elt(X)`.
pub fn elements_weighting(x: &CatFunctor, k: &[Rational], fibres: &[Vec<Rational>]) -> Result<Vec<Rational>, FunctorError> {
    let c = &x.domain;
    if !is_weighting(c, k) || fibres.len() != c.object_count() {
        return Err(FunctorError::NotAWeighting);
    }
    if (0..c.object_count()).any(|a| !is_weighting(&x.cats[a], &fibres[a])) {
        return Err(FunctorError::NotAWeighting);
    }
    let elt = elements_of_cat(x)?;
    let w: Vec<Rational> = elt.over.iter().map(|&(a, i)| &k[a] * &fibres[a][i]).collect();
    if !is_weighting(&elt.category, &w) {
        return Err(FunctorError::TheoremViolated("product weighting does not weight elt(X)".into()));
    }
    Ok(w)
}

/// `Y ⊗ X`: classes of `⨿_a Ya × Xa` under `(y, (Xf)x) ~ ((Yf)y, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorProduct {
    /// Classes sorted by least member, rendered `(a|y|x)`.
    pub classes: Vec<String>,
}

impl TensorProduct {
    pub fn cardinality(&self) -> usize {
        self.classes.len()
    }
}

/// Tensor of `Y: A^op -> Set` with `X: A -> Set`. `Y`'s domain must be the
/// opposite of `X`'s (same ids, reversed endpoints).
pub fn tensor(y: &SetFunctor, x: &SetFunctor) -> Result<TensorProduct, FunctorError> {
    let c = &x.domain;
    if !y.domain.same_structure(&opposite(c)) {
        return Err(FunctorError::DomainMismatch);
    }
    let mut offsets = Vec::with_capacity(c.object_count());
    let mut total = 0;
    for a in 0..c.object_count() {
        offsets.push(total);
        total += y.sets[a].len() * x.sets[a].len();
    }
    let pair = |a: usize, yi: usize, xi: usize| offsets[a] + yi * x.sets[a].len() + xi;
    let mut uf = UnionFind::new(total);
    for f in 0..c.arrow_count() {
        let (a, a2) = (c.source(f), c.target(f));
        // in A^op the arrow f runs a2 -> a
        for yi in 0..y.sets[a2].len() {
            for xi in 0..x.sets[a].len() {
                uf.union(pair(a2, yi, x.actions[f][xi]), pair(a, y.actions[f][yi], xi));
            }
        }
    }
    let members: Vec<(usize, usize)> = (0..c.object_count())
        .flat_map(|a| (0..y.sets[a].len() * x.sets[a].len()).map(move |k| (a, k)))
        .collect();
    let classes = classes_from(&uf, members, |(a, k)| {
        let (yi, xi) = (k / x.sets[a].len(), k % x.sets[a].len());
        format!("({}|{}|{})", c.objects()[a], y.sets[a][yi], x.sets[a][xi])
    });
    Ok(TensorProduct {
        classes: classes.into_iter().map(|cl| cl.name).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::exact::ratio;

    #[test]
    fn representable_has_initial_element() {
        let c = builders::pushout_shape();
        let x = SetFunctor::representable(&c, 0);
        let fr = fr_decompose(&x).unwrap();
        assert_eq!(fr.coefficients, vec![1, 0, 0]);
        let e = elements(&x).unwrap();
        assert!(e.category.is_initial(0));
    }

    #[test]
    fn broken_action_is_rejected() {
        let c = builders::chain(3);
        let sets = vec![vec!["p".to_string(), "q".to_string()]; 3];
        let mut actions = vec![vec![0, 1]; c.arrow_count()];
        actions[c.arrow_index("0<1").unwrap()] = vec![1, 0];
        assert!(matches!(SetFunctor::new(c, sets, actions), Err(FunctorError::NotFunctorial(_))));
    }

    #[test]
    fn weak_quotient_shape() {
        let x = builders::cyclic_action(2, &[2]);
        let e = elements(&x).unwrap();
        assert_eq!((e.category.object_count(), e.category.arrow_count()), (2, 4));
        assert_eq!(colimit(&x).cardinality(), 1);
        assert!(is_nondegenerate(&x));
        assert!(!is_nondegenerate(&builders::cyclic_action(2, &[1, 2])));
    }

    #[test]
    fn pushout_counts() {
        let x = builders::pushout_data(1, 2, 2, &[1], &[0]).unwrap();
        assert_eq!(colimit(&x).cardinality(), 3);
        let r = colimit_cardinality_via_weighting(&x, &[int(-1), int(1), int(1)]).unwrap();
        assert!(r.theorem_applies);
        assert_eq!(r.weighted, int(3));
    }

    #[test]
    fn overlapping_parallel_images_are_degenerate() {
        let x = builders::parallel_data(2, 3, &[0, 1], &[1, 2]).unwrap();
        assert!(matches!(degeneracy_witness(&x), Some(Degeneracy::Cospan { .. })));
        assert!(matches!(fr_decompose(&x), Err(FunctorError::NotFamiliallyRepresentable { .. })));
    }

    #[test]
    fn derangement_coefficients() {
        let x = builders::symmetric_action(4);
        let r = representation_coefficients(&x).unwrap();
        assert_eq!(r, vec![int(1), int(0), int(1), int(2), int(9)]);
        assert_eq!(fr_decompose(&x).unwrap().coefficients, vec![1, 0, 1, 2, 9]);
    }

    #[test]
    fn not_cauchy_complete() {
        let c = builders::idempotent_monoid();
        let x = SetFunctor::representable(&c, 0);
        assert!(matches!(fr_decompose(&x), Err(FunctorError::DomainNotCauchyComplete(_))));
    }

    #[test]
    fn cat_valued_elements() {
        let x = builders::sphere_diagram(2);
        let e = elements_of_cat(&x).unwrap();
        assert_eq!(e.category.object_count(), 6);
        assert_eq!(chi_of_elements(&x, &[int(-1), int(1), int(1)]), Ok(int(2)));
        let q = CatFunctor::from_set_functor(&builders::cyclic_action(2, &[2]));
        assert_eq!(chi_of_elements(&q, &[ratio(1, 2)]), Ok(int(1)));
    }

    #[test]
    fn tensor_with_representable() {
        let c = builders::chain(3);
        let cop = opposite(&c);
        let y = SetFunctor::new(
            cop.clone(),
            vec![vec!["u".into(), "v".into()], vec!["w".into()], vec!["s".into(), "t".into(), "r".into()]],
            (0..cop.arrow_count())
                .map(|f| vec![0; [2, 1, 3][cop.source(f)]].into_iter().enumerate().map(|(i, _)| if cop.source(f) == cop.target(f) { i } else { 0 }).collect())
                .collect(),
        )
        .unwrap();
        for a in 0..3 {
            let x = SetFunctor::representable(&c, a);
            assert_eq!(tensor(&y, &x).unwrap().cardinality(), y.set(a).len());
        }
    }
}
