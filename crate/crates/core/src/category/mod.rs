//! Finite categories given by explicit composition tables.
//!
//! A [`FinCat`] is only ever produced by validation, so holding one means the
//! unit laws, closure and associativity have been checked exhaustively. The
//! declared object order fixes every matrix indexing in the crate.

mod construct;
mod functor;
mod graph;
mod profile;
mod profunctor;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use construct::{
    adjoin_bounds, full_subcategory, interval, opposite, product, product_capped, subcategory, sum,
};
pub use functor::FunctorMap;
pub use graph::{free_category, free_category_capped, DirectedGraph};
pub use profile::{splits as idempotent_splits, structural_profile, StructuralProfile};
pub use profunctor::{collage, collage_capped, Profunctor};

/// Default cap on the number of arrows a constructor may produce.
pub const DEFAULT_ARROW_CAP: usize = 20_000;

const MISSING: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with a total composition table.
#[derive(Debug, Clone)]
pub struct FinCat {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    // comp[f][out_pos[g]] = g ∘ f for every g leaving target(f)
    comp: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    hom: Vec<Vec<Vec<usize>>>,
    object_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.objects == other.objects
            && self.arrows == other.arrows
            && self.identities == other.identities
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

/// One broken law in a raw category description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateObject(String),
    DuplicateArrow(String),
    InvalidIdentifier(String),
    DanglingEndpoint { arrow: String, endpoint: String },
    UnknownArrow { arrow: String },
    BadIdentity { object: String, detail: String },
    NotComposable { g: String, f: String },
    ConflictingComposite { g: String, f: String, first: String, second: String },
    IllTypedComposite { g: String, f: String, h: String },
    MissingComposite { g: String, f: String },
    NonAssociative { f: String, g: String, h: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateObject(x) => write!(out, "DuplicateObject({x})"),
            Violation::DuplicateArrow(x) => write!(out, "DuplicateArrow({x})"),
            Violation::InvalidIdentifier(x) => write!(out, "InvalidIdentifier({x:?})"),
            Violation::DanglingEndpoint { arrow, endpoint } => {
                write!(out, "DanglingEndpoint({arrow}: unknown object {endpoint})")
            }
            Violation::UnknownArrow { arrow } => write!(out, "UnknownArrow({arrow})"),
            Violation::BadIdentity { object, detail } => write!(out, "BadIdentity({object}): {detail}"),
            Violation::NotComposable { g, f } => {
                write!(out, "NotComposable({g} . {f}): target of {f} is not the source of {g}")
            }
            Violation::ConflictingComposite { g, f, first, second } => {
                write!(out, "ConflictingComposite({g} . {f} = {first} and = {second})")
            }
            Violation::IllTypedComposite { g, f, h } => {
                write!(out, "IllTypedComposite({g} . {f} = {h}): endpoints of {h} do not match")
            }
            Violation::MissingComposite { g, f } => write!(out, "MissingComposite({g} . {f})"),
            Violation::NonAssociative { f, g, h } => {
                write!(out, "NonAssociative({h} . ({g} . {f}) != ({h} . {g}) . {f})")
            }
        }
    }
}

/// Every law a raw category description violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub category: String,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category {:?} is invalid ({} violation", self.category, self.violations.len())?;
        if self.violations.len() != 1 {
            write!(f, "s")?;
        }
        write!(f, ")")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
    #[error("construction would produce {arrows} arrows, above the cap of {cap}")]
    SizeOverflow { arrows: usize, cap: usize },
    #[error("graph has a directed cycle: {}", cycle.join(" -> "))]
    CyclicGraph { cycle: Vec<String> },
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid profunctor: {0}")]
    InvalidProfunctor(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("arrow set is not a subcategory: {0}")]
    SubcategoryNotClosed(String),
}

/// Identifiers may not contain whitespace or the separators of the text
/// formats (`,`, `:`, `#`, `=`).
pub fn is_valid_identifier(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, ',' | ':' | '#' | '=' | '{' | '}'))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawArrow {
    pub id: String,
    pub source: String,
    pub target: String,
}

/// `g ∘ f = h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawComposite {
    pub g: String,
    pub f: String,
    pub h: String,
}

/// A category description that has not been checked yet.
///
/// Objects without an explicit identity use the declared arrow `id_<obj>`
/// if there is one, otherwise such an arrow is created. Composites with an
/// identity may be omitted; they are forced by the unit laws.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<RawArrow>,
    /// `(object, arrow)` pairs.
    pub identities: Vec<(String, String)>,
    pub compositions: Vec<RawComposite>,
}

/// Checks a raw description and returns the category, or every violation.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, ValidationReport> {
    let mut violations = Vec::new();
    let mut object_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if !is_valid_identifier(o) {
            violations.push(Violation::InvalidIdentifier(o.clone()));
        }
        if object_index.insert(o.clone(), i).is_some() {
            violations.push(Violation::DuplicateObject(o.clone()));
        }
    }

    let mut arrows: Vec<Arrow> = Vec::with_capacity(raw.arrows.len() + raw.objects.len());
    let mut arrow_index: HashMap<String, usize> = HashMap::new();
    for a in &raw.arrows {
        if !is_valid_identifier(&a.id) {
            violations.push(Violation::InvalidIdentifier(a.id.clone()));
        }
        let mut resolve = |name: &String| match object_index.get(name) {
            Some(&i) => Some(i),
            None => {
                violations.push(Violation::DanglingEndpoint {
                    arrow: a.id.clone(),
                    endpoint: name.clone(),
                });
                None
            }
        };
        let (s, t) = (resolve(&a.source), resolve(&a.target));
        if arrow_index.contains_key(&a.id) {
            violations.push(Violation::DuplicateArrow(a.id.clone()));
            continue;
        }
        if let (Some(source), Some(target)) = (s, t) {
            arrow_index.insert(a.id.clone(), arrows.len());
            arrows.push(Arrow {
                id: a.id.clone(),
                source,
                target,
            });
        }
    }

    let mut identities: Vec<Option<usize>> = vec![None; raw.objects.len()];
    for (obj, arr) in &raw.identities {
        let Some(&o) = object_index.get(obj) else {
            violations.push(Violation::BadIdentity {
                object: obj.clone(),
                detail: "identity declared for an unknown object".into(),
            });
            continue;
        };
        let Some(&a) = arrow_index.get(arr) else {
            violations.push(Violation::UnknownArrow { arrow: arr.clone() });
            continue;
        };
        if identities[o].is_some() {
            violations.push(Violation::BadIdentity {
                object: obj.clone(),
                detail: "identity declared twice".into(),
            });
        }
        identities[o] = Some(a);
    }
    for (o, name) in raw.objects.iter().enumerate() {
        if identities[o].is_some() || object_index.get(name) != Some(&o) {
            continue;
        }
        let id_name = format!("id_{name}");
        match arrow_index.get(&id_name) {
            Some(&a) if arrows[a].source == o && arrows[a].target == o => identities[o] = Some(a),
            Some(_) => violations.push(Violation::BadIdentity {
                object: name.clone(),
                detail: format!("arrow {id_name} is not an endomorphism of {name}"),
            }),
            None => {
                arrow_index.insert(id_name.clone(), arrows.len());
                arrows.push(Arrow {
                    id: id_name,
                    source: o,
                    target: o,
                });
                identities[o] = Some(arrows.len() - 1);
            }
        }
    }

    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for c in &raw.compositions {
        let lookup = |name: &String, v: &mut Vec<Violation>| {
            let r = arrow_index.get(name).copied();
            if r.is_none() {
                v.push(Violation::UnknownArrow { arrow: name.clone() });
            }
            r
        };
        let (g, f, h) = (
            lookup(&c.g, &mut violations),
            lookup(&c.f, &mut violations),
            lookup(&c.h, &mut violations),
        );
        let (Some(g), Some(f), Some(h)) = (g, f, h) else { continue };
        if arrows[f].target != arrows[g].source {
            violations.push(Violation::NotComposable {
                g: c.g.clone(),
                f: c.f.clone(),
            });
            continue;
        }
        if arrows[h].source != arrows[f].source || arrows[h].target != arrows[g].target {
            violations.push(Violation::IllTypedComposite {
                g: c.g.clone(),
                f: c.f.clone(),
                h: c.h.clone(),
            });
            continue;
        }
        if let Some(&prev) = table.get(&(g, f)) {
            if prev != h {
                violations.push(Violation::ConflictingComposite {
                    g: c.g.clone(),
                    f: c.f.clone(),
                    first: arrows[prev].id.clone(),
                    second: c.h.clone(),
                });
            }
            continue;
        }
        table.insert((g, f), h);
    }

    if !violations.is_empty() {
        return Err(ValidationReport {
            category: raw.name.clone(),
            violations,
        });
    }
    let identities: Vec<usize> = identities.into_iter().map(|i| i.expect("identity resolved")).collect();
    let is_id: Vec<bool> = {
        let mut v = vec![false; arrows.len()];
        for &i in &identities {
            v[i] = true;
        }
        v
    };
    assemble(
        raw.name.clone(),
        raw.objects.clone(),
        arrows,
        identities,
        |g, f| {
            table.get(&(g, f)).copied().or_else(|| {
                if is_id[g] {
                    Some(f)
                } else if is_id[f] {
                    Some(g)
                } else {
                    None
                }
            })
        },
    )
}

/// Builds the table from a composition function and checks every law.
///
/// `compose(g, f)` must return `g ∘ f` for every composable pair, or
/// `None` when the composite is undefined (reported as missing).
fn assemble(
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    mut compose: impl FnMut(usize, usize) -> Option<usize>,
) -> Result<FinCat, ValidationReport> {
    let n_obj = objects.len();
    let mut violations = Vec::new();
    let mut object_index = HashMap::with_capacity(n_obj);
    for (i, o) in objects.iter().enumerate() {
        if !is_valid_identifier(o) {
            violations.push(Violation::InvalidIdentifier(o.clone()));
        }
        if object_index.insert(o.clone(), i).is_some() {
            violations.push(Violation::DuplicateObject(o.clone()));
        }
    }
    let mut arrow_index = HashMap::with_capacity(arrows.len());
    for (i, a) in arrows.iter().enumerate() {
        if !is_valid_identifier(&a.id) {
            violations.push(Violation::InvalidIdentifier(a.id.clone()));
        }
        if arrow_index.insert(a.id.clone(), i).is_some() {
            violations.push(Violation::DuplicateArrow(a.id.clone()));
        }
        for e in [a.source, a.target] {
            if e >= n_obj {
                violations.push(Violation::DanglingEndpoint {
                    arrow: a.id.clone(),
                    endpoint: format!("#{e}"),
                });
            }
        }
    }
    if identities.len() != n_obj {
        violations.push(Violation::BadIdentity {
            object: "*".into(),
            detail: format!("{} identities for {} objects", identities.len(), n_obj),
        });
    }
    if !violations.is_empty() {
        return Err(ValidationReport {
            category: name,
            violations,
        });
    }
    for (o, &i) in identities.iter().enumerate() {
        if i >= arrows.len() || arrows[i].source != o || arrows[i].target != o {
            violations.push(Violation::BadIdentity {
                object: objects[o].clone(),
                detail: "identity is not an endomorphism of its object".into(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport {
            category: name,
            violations,
        });
    }

    let mut outgoing = vec![Vec::new(); n_obj];
    let mut out_pos = vec![0; arrows.len()];
    let mut hom = vec![vec![Vec::new(); n_obj]; n_obj];
    for (i, a) in arrows.iter().enumerate() {
        out_pos[i] = outgoing[a.source].len();
        outgoing[a.source].push(i);
        hom[a.source][a.target].push(i);
    }

    let mut comp = Vec::with_capacity(arrows.len());
    for (f, af) in arrows.iter().enumerate() {
        let mut row = Vec::with_capacity(outgoing[af.target].len());
        for &g in &outgoing[af.target] {
            match compose(g, f) {
                Some(h) if h < arrows.len() && arrows[h].source == af.source && arrows[h].target == arrows[g].target => {
                    row.push(h)
                }
                Some(h) => {
                    violations.push(Violation::IllTypedComposite {
                        g: arrows[g].id.clone(),
                        f: af.id.clone(),
                        h: arrows.get(h).map_or_else(|| format!("#{h}"), |a| a.id.clone()),
                    });
                    row.push(MISSING);
                }
                None => {
                    violations.push(Violation::MissingComposite {
                        g: arrows[g].id.clone(),
                        f: af.id.clone(),
                    });
                    row.push(MISSING);
                }
            }
        }
        comp.push(row);
    }

    let cat = FinCat {
        name,
        objects,
        arrows,
        identities,
        comp,
        outgoing,
        out_pos,
        hom,
        object_index,
        arrow_index,
    };

    for (f, a) in cat.arrows.iter().enumerate() {
        let left = cat.raw_compose(cat.identities[a.target], f);
        if left != f {
            violations.push(Violation::BadIdentity {
                object: cat.objects[a.target].clone(),
                detail: format!(
                    "{} . {} = {}, expected {}",
                    cat.arrows[cat.identities[a.target]].id,
                    a.id,
                    cat.name_or_missing(left),
                    a.id
                ),
            });
        }
        let right = cat.raw_compose(f, cat.identities[a.source]);
        if right != f {
            violations.push(Violation::BadIdentity {
                object: cat.objects[a.source].clone(),
                detail: format!(
                    "{} . {} = {}, expected {}",
                    a.id,
                    cat.arrows[cat.identities[a.source]].id,
                    cat.name_or_missing(right),
                    a.id
                ),
            });
        }
    }
    if violations.is_empty() {
        for f in 0..cat.arrows.len() {
            for &g in &cat.outgoing[cat.arrows[f].target] {
                let gf = cat.raw_compose(g, f);
                for &h in &cat.outgoing[cat.arrows[g].target] {
                    let hg = cat.raw_compose(h, g);
                    if cat.raw_compose(h, gf) != cat.raw_compose(hg, f) {
                        violations.push(Violation::NonAssociative {
                            f: cat.arrows[f].id.clone(),
                            g: cat.arrows[g].id.clone(),
                            h: cat.arrows[h].id.clone(),
                        });
                    }
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(cat)
    } else {
        Err(ValidationReport {
            category: cat.name,
            violations,
        })
    }
}

impl FinCat {
    /// Builds a category from indexed data and a composition function
    /// `compose(g, f) = g ∘ f`, checking every law.
    pub fn from_table(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<FinCat, ValidationReport> {
        assemble(name.into(), objects, arrows, identities, compose)
    }

    /// The category with no objects.
    pub fn empty(name: impl Into<String>) -> FinCat {
        FinCat::from_table(name, Vec::new(), Vec::new(), Vec::new(), |_, _| None).expect("empty category")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FinCat {
        self.name = name.into();
        self
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn source(&self, f: usize) -> usize {
        self.arrows[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.arrows[f].target
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].source] == f
    }

    /// Arrows `a -> b` in declaration order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// Arrows with source `a`.
    pub fn outgoing(&self, a: usize) -> &[usize] {
        &self.outgoing[a]
    }

    /// `g ∘ f`, or `None` when `target(f) != source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        if self.arrows[f].target != self.arrows[g].source {
            return None;
        }
        Some(self.comp[f][self.out_pos[g]])
    }

    fn raw_compose(&self, g: usize, f: usize) -> usize {
        if g == MISSING || f == MISSING {
            return MISSING;
        }
        self.comp[f][self.out_pos[g]]
    }

    fn name_or_missing(&self, f: usize) -> String {
        if f == MISSING {
            "<missing>".into()
        } else {
            self.arrows[f].id.clone()
        }
    }

    /// `fs[n-1] ∘ … ∘ fs[0]`.
    pub fn compose_path(&self, fs: &[usize]) -> Option<usize> {
        let (&first, rest) = fs.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    /// Arrow `f` followed by the object ids, e.g. `f: a -> b`.
    pub fn describe_arrow(&self, f: usize) -> String {
        let a = &self.arrows[f];
        format!("{}: {} -> {}", a.id, self.objects[a.source], self.objects[a.target])
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom[b][a].iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identities[a]) && self.compose(f, g) == Some(self.identities[b])
        })
    }

    pub fn is_idempotent(&self, f: usize) -> bool {
        self.source(f) == self.target(f) && self.compose(f, f) == Some(f)
    }

    /// Monic: `f ∘ g = f ∘ h` implies `g = h`, checked over all parallel pairs.
    pub fn is_mono(&self, f: usize) -> bool {
        let a = self.source(f);
        (0..self.object_count()).all(|c| {
            let hs = self.hom(c, a);
            let mut seen = std::collections::HashSet::with_capacity(hs.len());
            hs.iter().all(|&g| seen.insert(self.raw_compose(f, g)))
        })
    }

    pub fn is_epi(&self, f: usize) -> bool {
        let b = self.target(f);
        (0..self.object_count()).all(|c| {
            let hs = self.hom(b, c);
            let mut seen = std::collections::HashSet::with_capacity(hs.len());
            hs.iter().all(|&g| seen.insert(self.raw_compose(g, f)))
        })
    }

    /// A non-identity idempotent, if any.
    pub fn nontrivial_idempotent(&self) -> Option<usize> {
        (0..self.arrow_count()).find(|&f| !self.is_identity(f) && self.is_idempotent(f))
    }

    /// An isomorphism between two distinct objects, if any.
    pub fn iso_between_distinct(&self) -> Option<usize> {
        (0..self.arrow_count()).find(|&f| self.source(f) != self.target(f) && self.is_iso(f))
    }

    /// Isomorphism class index of each object, numbered in order of first
    /// appearance.
    pub fn iso_classes(&self) -> Vec<usize> {
        let n = self.object_count();
        let mut class = vec![usize::MAX; n];
        let mut next = 0;
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            class[a] = next;
            for b in a + 1..n {
                if class[b] == usize::MAX && self.hom(a, b).iter().any(|&f| self.is_iso(f)) {
                    class[b] = next;
                }
            }
            next += 1;
        }
        class
    }

    /// Every hom-set has at most one element and isomorphic objects are
    /// equal.
    pub fn is_poset(&self) -> bool {
        let n = self.object_count();
        (0..n).all(|a| (0..n).all(|b| self.hom(a, b).len() <= 1 && (a == b || self.hom(a, b).is_empty() || self.hom(b, a).is_empty())))
    }

    pub fn is_initial(&self, a: usize) -> bool {
        (0..self.object_count()).all(|b| self.hom(a, b).len() == 1)
    }

    pub fn is_terminal(&self, b: usize) -> bool {
        (0..self.object_count()).all(|a| self.hom(a, b).len() == 1)
    }

    pub fn initial_object(&self) -> Option<usize> {
        (0..self.object_count()).find(|&a| self.is_initial(a))
    }

    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.object_count()).find(|&b| self.is_terminal(b))
    }

    /// Structural equality ignoring the category name.
    pub fn same_structure(&self, other: &FinCat) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.identities == other.identities
            && self.comp == other.comp
    }

    /// Composites `g ∘ f` with neither arrow an identity, in arrow order.
    pub fn nontrivial_composites(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.arrow_count())
            .filter(move |&f| !self.is_identity(f))
            .flat_map(move |f| {
                self.outgoing[self.target(f)]
                    .iter()
                    .filter(move |&&g| !self.is_identity(g))
                    .map(move |&g| (g, f, self.raw_compose(g, f)))
            })
    }

    /// Converts back to a raw description (identities explicit).
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawArrow {
                    id: a.id.clone(),
                    source: self.objects[a.source].clone(),
                    target: self.objects[a.target].clone(),
                })
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(o, &i)| (self.objects[o].clone(), self.arrows[i].id.clone()))
                .collect(),
            compositions: self
                .nontrivial_composites()
                .map(|(g, f, h)| RawComposite {
                    g: self.arrows[g].id.clone(),
                    f: self.arrows[f].id.clone(),
                    h: self.arrows[h].id.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(objects: &[&str], arrows: &[(&str, &str, &str)], comps: &[(&str, &str, &str)]) -> RawCategory {
        RawCategory {
            name: "t".into(),
            objects: objects.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(id, s, t)| RawArrow {
                    id: id.to_string(),
                    source: s.to_string(),
                    target: t.to_string(),
                })
                .collect(),
            identities: Vec::new(),
            compositions: comps
                .iter()
                .map(|(g, f, h)| RawComposite {
                    g: g.to_string(),
                    f: f.to_string(),
                    h: h.to_string(),
                })
                .collect(),
        }
    }

    #[test]
    fn idempotent_monoid_is_valid() {
        let c = validate_category(&raw(&["*"], &[("e", "*", "*")], &[("e", "e", "e")])).unwrap();
        assert_eq!(c.arrow_count(), 2);
        assert_eq!(c.arrows()[1].id, "id_*");
        let e = c.arrow_index("e").unwrap();
        assert!(c.is_idempotent(e));
        assert!(!c.is_identity(e));
    }

    #[test]
    fn broken_unit_law_is_reported() {
        let r = raw(
            &["*"],
            &[("id", "*", "*"), ("e", "*", "*")],
            &[("e", "e", "id"), ("e", "id", "id")],
        );
        let mut r = r;
        r.identities.push(("*".into(), "id".into()));
        let err = validate_category(&r).unwrap_err();
        assert!(err
            .violations
            .iter()
            .any(|v| matches!(v, Violation::BadIdentity { object, .. } if object == "*")));
    }

    #[test]
    fn missing_composite_and_dangling_endpoint() {
        let err = validate_category(&raw(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c")], &[])).unwrap_err();
        assert_eq!(
            err.violations,
            vec![Violation::MissingComposite {
                g: "g".into(),
                f: "f".into()
            }]
        );
        let err = validate_category(&raw(&["a"], &[("f", "a", "z")], &[])).unwrap_err();
        assert!(matches!(&err.violations[0], Violation::DanglingEndpoint { endpoint, .. } if endpoint == "z"));
    }

    #[test]
    fn non_associative_is_named() {
        // one object, arrows x, y with a non-associative table
        let err = validate_category(&raw(
            &["*"],
            &[("x", "*", "*"), ("y", "*", "*")],
            &[("x", "x", "y"), ("y", "x", "y"), ("x", "y", "x"), ("y", "y", "y")],
        ))
        .unwrap_err();
        assert!(err.violations.iter().all(|v| matches!(v, Violation::NonAssociative { .. })));
        assert!(!err.violations.is_empty());
    }

    #[test]
    fn conflicting_and_ill_typed() {
        let err = validate_category(&raw(
            &["a", "b"],
            &[("f", "a", "b"), ("g", "b", "a"), ("e", "a", "a")],
            &[("g", "f", "id_a"), ("g", "f", "e"), ("f", "g", "f")],
        ))
        .unwrap_err();
        assert!(err.violations.iter().any(|v| matches!(v, Violation::ConflictingComposite { .. })));
        assert!(err.violations.iter().any(|v| matches!(v, Violation::IllTypedComposite { .. })));
    }

    #[test]
    fn composition_lookup() {
        let c = validate_category(&raw(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
            &[("g", "f", "h")],
        ))
        .unwrap();
        let (f, g, h) = (c.arrow_index("f").unwrap(), c.arrow_index("g").unwrap(), c.arrow_index("h").unwrap());
        assert_eq!(c.compose(g, f), Some(h));
        assert_eq!(c.compose(f, g), None);
        assert_eq!(c.compose_path(&[f, g]), Some(h));
        assert!(c.is_poset());
        assert_eq!(c.initial_object(), Some(0));
        assert_eq!(c.terminal_object(), Some(2));
    }
}
