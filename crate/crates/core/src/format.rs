//! Line-oriented text formats for categories, graphs, functors,
//! endofunctors, profunctors and Galois connections.
//!
//! All formats share the same lexical rules: `#` starts a comment, blank
//! lines are ignored, identifiers contain no whitespace, and a nested value
//! is written either inline as `key {` … `}` or as `key: path`, the path
//! being resolved by a caller-supplied loader.
//!
//! ```text
//! name: L
//! objects: a, b1, b2
//! arrow p1: a -> b1
//! arrow p2: a -> b2
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::category::{
    validate_category, CategoryError, DirectedGraph, FinCat, FunctorMap, Profunctor, RawArrow, RawCategory,
    RawComposite,
};
use crate::functors::{CatFunctor, FunctorError, SetFunctor};
use crate::lefschetz::Endofunctor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot load {path}: {message}")]
    Load { path: String, message: String },
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

impl FormatError {
    /// The offending line, when the error is tied to one.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// Resolves `key: path` references to file contents.
pub type Loader<'a> = dyn FnMut(&str) -> Result<String, String> + 'a;

/// A loader that refuses every reference.
pub fn no_includes(path: &str) -> Result<String, String> {
    Err(format!("references are not allowed here ({path})"))
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Syntax {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone)]
struct Line {
    no: usize,
    text: String,
}

enum Item {
    Line(Line),
    Block { header: String, no: usize, body: Vec<Line> },
}

fn clean_lines(text: &str) -> Vec<Line> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let t = raw.split('#').next().unwrap_or("").trim();
            (!t.is_empty()).then(|| Line {
                no: i + 1,
                text: t.to_string(),
            })
        })
        .collect()
}

fn group(lines: Vec<Line>) -> Result<Vec<Item>, FormatError> {
    let mut items = Vec::new();
    let mut iter = lines.into_iter();
    while let Some(line) = iter.next() {
        if line.text == "}" {
            return syntax(line.no, "unmatched '}'");
        }
        let Some(header) = line.text.strip_suffix('{') else {
            items.push(Item::Line(line));
            continue;
        };
        let mut depth = 1;
        let mut body = Vec::new();
        for inner in iter.by_ref() {
            if inner.text == "}" {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            } else if inner.text.ends_with('{') {
                depth += 1;
            }
            body.push(inner);
        }
        if depth != 0 {
            return syntax(line.no, "block is never closed");
        }
        items.push(Item::Block {
            header: header.trim().to_string(),
            no: line.no,
            body,
        });
    }
    Ok(items)
}

/// `keyword rest` split at the first whitespace.
fn keyword(text: &str) -> (&str, &str) {
    match text.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (text, ""),
    }
}

fn comma_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
}

/// Parses `x -> y`.
fn arrow_pair(s: &str, no: usize) -> Result<(String, String), FormatError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    match toks.as_slice() {
        [x, "->", y] => Ok((x.to_string(), y.to_string())),
        _ => syntax(no, format!("expected `x -> y`, found {s:?}")),
    }
}

/// Parses `x -> y, x2 -> y2, …`.
fn mapping(s: &str, no: usize) -> Result<Vec<(String, String)>, FormatError> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(|p| arrow_pair(p, no)).collect()
}

/// `head: tail`, with `head` split into whitespace tokens.
fn labelled<'t>(rest: &'t str, no: usize, expect: usize, what: &str) -> Result<(Vec<&'t str>, &'t str), FormatError> {
    let Some((head, tail)) = rest.split_once(':') else {
        return syntax(no, format!("expected `{what}`"));
    };
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.len() != expect {
        return syntax(no, format!("expected `{what}`"));
    }
    Ok((toks, tail.trim()))
}

// ---------------------------------------------------------------------------
// categories

/// Parses a category description.
///
/// ```text
/// name: <free text>
/// objects: a, b, c
/// identity id_a: a
/// arrow f: a -> b
/// compose g . f = h
/// ```
///
/// Identities not declared are named `id_<object>`; composites involving
/// an identity may be omitted.
pub fn parse_category(text: &str) -> Result<FinCat, FormatError> {
    category_from_lines(clean_lines(text))
}

fn category_from_lines(lines: Vec<Line>) -> Result<FinCat, FormatError> {
    let mut raw = RawCategory {
        name: "C".into(),
        ..RawCategory::default()
    };
    for line in lines {
        let no = line.no;
        let t = line.text.as_str();
        if let Some(rest) = t.strip_prefix("name:") {
            raw.name = rest.trim().to_string();
            continue;
        }
        if let Some(rest) = t.strip_prefix("objects:") {
            raw.objects.extend(comma_list(rest));
            continue;
        }
        match keyword(t) {
            ("arrow", rest) => {
                let (id, ends) = labelled(rest, no, 1, "arrow <id>: <source> -> <target>")?;
                let (s, tg) = arrow_pair(ends, no)?;
                raw.arrows.push(RawArrow {
                    id: id[0].to_string(),
                    source: s,
                    target: tg,
                });
            }
            ("identity", rest) => {
                let (id, obj) = labelled(rest, no, 1, "identity <id>: <object>")?;
                if obj.split_whitespace().count() != 1 {
                    return syntax(no, "expected `identity <id>: <object>`");
                }
                raw.arrows.push(RawArrow {
                    id: id[0].to_string(),
                    source: obj.to_string(),
                    target: obj.to_string(),
                });
                raw.identities.push((obj.to_string(), id[0].to_string()));
            }
            ("compose", rest) => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                match toks.as_slice() {
                    [g, ".", f, "=", h] => raw.compositions.push(RawComposite {
                        g: g.to_string(),
                        f: f.to_string(),
                        h: h.to_string(),
                    }),
                    _ => return syntax(no, "expected `compose <g> . <f> = <h>`"),
                }
            }
            _ => return syntax(no, format!("unrecognised line {t:?}")),
        }
    }
    validate_category(&raw).map_err(|r| CategoryError::Invalid(r).into())
}

/// Canonical text of a category. Every identity is written in place as an
/// `identity` line so that arrow order survives a round trip.
pub fn write_category(c: &FinCat) -> String {
    let mut out = String::new();
    writeln!(out, "name: {}", c.name()).unwrap();
    writeln!(out, "objects: {}", c.objects().join(", ")).unwrap();
    for (f, a) in c.arrows().iter().enumerate() {
        if c.is_identity(f) {
            writeln!(out, "identity {}: {}", a.id, c.objects()[a.source]).unwrap();
        } else {
            writeln!(out, "arrow {}: {} -> {}", a.id, c.objects()[a.source], c.objects()[a.target]).unwrap();
        }
    }
    for (g, f, h) in c.nontrivial_composites() {
        writeln!(out, "compose {} . {} = {}", c.arrows()[g].id, c.arrows()[f].id, c.arrows()[h].id).unwrap();
    }
    out
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

/// Resolves a category given either inline or by reference.
fn nested_category(
    items: &mut Vec<Item>,
    key: &str,
    loader: &mut Loader<'_>,
) -> Result<Option<FinCat>, FormatError> {
    let prefix = format!("{key}:");
    let pos = items.iter().position(|it| match it {
        Item::Block { header, .. } => header == key,
        Item::Line(l) => l.text.starts_with(&prefix),
    });
    let Some(pos) = pos else { return Ok(None) };
    match items.remove(pos) {
        Item::Block { body, .. } => category_from_lines(body).map(Some),
        Item::Line(l) => {
            let path = l.text[prefix.len()..].trim().to_string();
            let text = loader(&path).map_err(|message| FormatError::Load { path: path.clone(), message })?;
            parse_category(&text).map(Some)
        }
    }
}

fn require_category(items: &mut Vec<Item>, key: &str, loader: &mut Loader<'_>) -> Result<FinCat, FormatError> {
    nested_category(items, key, loader)?.ok_or_else(|| FormatError::Syntax {
        line: 0,
        message: format!("missing `{key}` section"),
    })
}

fn only_lines(items: Vec<Item>) -> Result<Vec<Line>, FormatError> {
    items
        .into_iter()
        .map(|it| match it {
            Item::Line(l) => Ok(l),
            Item::Block { header, no, .. } => syntax(no, format!("unexpected block {header:?}")),
        })
        .collect()
}

fn lookup(map: &HashMap<&str, usize>, key: &str, no: usize, what: &str) -> Result<usize, FormatError> {
    map.get(key).copied().ok_or_else(|| FormatError::Syntax {
        line: no,
        message: format!("unknown {what} {key:?}"),
    })
}

fn object_map(c: &FinCat) -> HashMap<&str, usize> {
    c.objects().iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect()
}

fn arrow_map(c: &FinCat) -> HashMap<&str, usize> {
    c.arrows().iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect()
}

// ---------------------------------------------------------------------------
// graphs

/// ```text
/// name: g
/// vertex a, b
/// edge e: a -> b
/// ```
pub fn parse_graph(text: &str) -> Result<DirectedGraph, FormatError> {
    let mut name = "G".to_string();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for line in clean_lines(text) {
        let no = line.no;
        if let Some(rest) = line.text.strip_prefix("name:") {
            name = rest.trim().to_string();
            continue;
        }
        match keyword(&line.text) {
            ("vertex", rest) => vertices.extend(comma_list(rest)),
            ("edge", rest) => {
                let (id, ends) = labelled(rest, no, 1, "edge <id>: <source> -> <target>")?;
                let (s, t) = arrow_pair(ends, no)?;
                edges.push((id[0].to_string(), s, t));
            }
            _ => return syntax(no, format!("unrecognised line {:?}", line.text)),
        }
    }
    Ok(DirectedGraph::new(name, vertices, edges)?)
}

pub fn write_graph(g: &DirectedGraph) -> String {
    let mut out = format!("name: {}\n", g.name);
    for v in g.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for (id, s, t) in g.edges() {
        writeln!(out, "edge {id}: {} -> {}", g.vertices()[*s], g.vertices()[*t]).unwrap();
    }
    out
}

// ---------------------------------------------------------------------------
// set-valued functors

/// ```text
/// domain: shape.fincat        # or an inline `domain {` … `}` block
/// at a: x1, x2
/// on f: x1 -> y1, x2 -> y1
/// ```
///
/// Objects without an `at` line get the empty set; identities may be left
/// out.
pub fn parse_set_functor(text: &str, loader: &mut Loader<'_>) -> Result<SetFunctor, FormatError> {
    let mut items = group(clean_lines(text))?;
    let domain = require_category(&mut items, "domain", loader)?;
    set_functor_body(domain, only_lines(items)?)
}

/// An `on` line held back until every set is known: arrow, line, pairs.
type PendingAction = (usize, usize, Vec<(String, String)>);

fn set_functor_body(domain: FinCat, lines: Vec<Line>) -> Result<SetFunctor, FormatError> {
    let objs = object_map(&domain);
    let arrs = arrow_map(&domain);
    let mut sets: Vec<Option<Vec<String>>> = vec![None; domain.object_count()];
    let mut pending: Vec<PendingAction> = Vec::new();
    for line in lines {
        let no = line.no;
        match keyword(&line.text) {
            ("at", rest) => {
                let (head, tail) = labelled(rest, no, 1, "at <object>: x, y, …")?;
                let a = lookup(&objs, head[0], no, "object")?;
                if sets[a].replace(comma_list(tail)).is_some() {
                    return syntax(no, format!("set at {} given twice", head[0]));
                }
            }
            ("on", rest) => {
                let (head, tail) = labelled(rest, no, 1, "on <arrow>: x -> y, …")?;
                let f = lookup(&arrs, head[0], no, "arrow")?;
                pending.push((f, no, mapping(tail, no)?));
            }
            _ => return syntax(no, format!("unrecognised line {:?}", line.text)),
        }
    }
    let sets: Vec<Vec<String>> = sets.into_iter().map(Option::unwrap_or_default).collect();
    let index: Vec<HashMap<&str, usize>> = sets
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect())
        .collect();
    let mut actions: Vec<Option<Vec<usize>>> = vec![None; domain.arrow_count()];
    for (f, no, pairs) in pending {
        let (s, t) = (domain.source(f), domain.target(f));
        let mut act = vec![usize::MAX; sets[s].len()];
        for (x, y) in pairs {
            let xi = lookup(&index[s], &x, no, "element")?;
            act[xi] = lookup(&index[t], &y, no, "element")?;
        }
        if act.contains(&usize::MAX) {
            return syntax(no, format!("action of {} is not total", domain.arrows()[f].id));
        }
        if actions[f].replace(act).is_some() {
            return syntax(no, format!("action of {} given twice", domain.arrows()[f].id));
        }
    }
    let mut full = Vec::with_capacity(domain.arrow_count());
    for (f, act) in actions.into_iter().enumerate() {
        full.push(match act {
            Some(a) => a,
            None if domain.is_identity(f) => (0..sets[domain.source(f)].len()).collect(),
            None if sets[domain.source(f)].is_empty() => Vec::new(),
            None => return syntax(0, format!("no action given for {}", domain.arrows()[f].id)),
        });
    }
    Ok(SetFunctor::new(domain, sets, full)?)
}

pub fn write_set_functor(x: &SetFunctor) -> String {
    let c = x.domain();
    let mut out = format!("domain {{\n{}}}\n", indent(&write_category(c)));
    for a in 0..c.object_count() {
        writeln!(out, "at {}: {}", c.objects()[a], x.set(a).join(", ")).unwrap();
    }
    for f in 0..c.arrow_count() {
        if c.is_identity(f) || x.set(c.source(f)).is_empty() {
            continue;
        }
        let (s, t) = (c.source(f), c.target(f));
        let pairs: Vec<String> = x
            .action(f)
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{} -> {}", x.set(s)[i], x.set(t)[j]))
            .collect();
        writeln!(out, "on {}: {}", c.arrows()[f].id, pairs.join(", ")).unwrap();
    }
    out
}

// ---------------------------------------------------------------------------
// category-valued functors

/// ```text
/// domain { … }
/// at a { … }                  # a category, or `at a: path`
/// obj f: x -> y, …            # object part of Xf
/// arr f: u -> v, …            # arrow part of Xf
/// ```
///
/// Identity arrows of the domain may be left out; so may the `arr` line of
/// `Xf` when every hom-set of the target category has at most one element.
pub fn parse_cat_functor(text: &str, loader: &mut Loader<'_>) -> Result<CatFunctor, FormatError> {
    let mut items = group(clean_lines(text))?;
    let domain = require_category(&mut items, "domain", loader)?;
    let mut cats: Vec<Option<FinCat>> = vec![None; domain.object_count()];
    for (a, name) in domain.objects().iter().enumerate() {
        cats[a] = nested_category(&mut items, &format!("at {name}"), loader)?;
    }
    let cats: Vec<FinCat> = cats
        .into_iter()
        .enumerate()
        .map(|(a, c)| c.unwrap_or_else(|| FinCat::empty(format!("X{}", domain.objects()[a]))))
        .collect();
    let arrs = arrow_map(&domain);
    let mut obj_maps: Vec<Option<Vec<usize>>> = vec![None; domain.arrow_count()];
    let mut arr_maps: Vec<Option<Vec<usize>>> = vec![None; domain.arrow_count()];
    for line in only_lines(items)? {
        let no = line.no;
        let (kw, rest) = keyword(&line.text);
        if kw != "obj" && kw != "arr" {
            return syntax(no, format!("unrecognised line {:?}", line.text));
        }
        let (head, tail) = labelled(rest, no, 1, "obj|arr <arrow>: x -> y, …")?;
        let f = lookup(&arrs, head[0], no, "arrow")?;
        let (src, tgt) = (&cats[domain.source(f)], &cats[domain.target(f)]);
        let (from, to, slot) = if kw == "obj" {
            (object_map(src), object_map(tgt), &mut obj_maps[f])
        } else {
            (arrow_map(src), arrow_map(tgt), &mut arr_maps[f])
        };
        let size = from.len();
        let mut map = vec![usize::MAX; size];
        for (x, y) in mapping(tail, no)? {
            map[lookup(&from, &x, no, "fibre entry")?] = lookup(&to, &y, no, "fibre entry")?;
        }
        if map.contains(&usize::MAX) {
            return syntax(no, format!("{kw} part of X{} is not total", head[0]));
        }
        if slot.replace(map).is_some() {
            return syntax(no, format!("{kw} part of X{} given twice", head[0]));
        }
    }
    let mut actions = Vec::with_capacity(domain.arrow_count());
    for f in 0..domain.arrow_count() {
        let (src, tgt) = (&cats[domain.source(f)], &cats[domain.target(f)]);
        if domain.is_identity(f) && obj_maps[f].is_none() && arr_maps[f].is_none() {
            actions.push(FunctorMap::identity(src));
            continue;
        }
        let name = &domain.arrows()[f].id;
        let objects = match obj_maps[f].take() {
            Some(m) => m,
            None if src.object_count() == 0 => Vec::new(),
            None => return syntax(0, format!("no object part given for X{name}")),
        };
        let map = match arr_maps[f].take() {
            Some(arrows) => FunctorMap { objects, arrows },
            None => FunctorMap::from_monotone(src, tgt, &objects)
                .map_err(|e| FormatError::Syntax { line: 0, message: format!("X{name}: {e}") })?,
        };
        actions.push(map);
    }
    Ok(CatFunctor::new(domain, cats, actions)?)
}

pub fn write_cat_functor(x: &CatFunctor) -> String {
    let c = x.domain();
    let mut out = format!("domain {{\n{}}}\n", indent(&write_category(c)));
    for a in 0..c.object_count() {
        writeln!(out, "at {} {{\n{}}}", c.objects()[a], indent(&write_category(x.category(a)))).unwrap();
    }
    for f in 0..c.arrow_count() {
        if c.is_identity(f) {
            continue;
        }
        let (src, tgt) = (x.category(c.source(f)), x.category(c.target(f)));
        let m = x.action(f);
        let objs: Vec<String> = m
            .objects
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{} -> {}", src.objects()[i], tgt.objects()[j]))
            .collect();
        let arrs: Vec<String> = m
            .arrows
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{} -> {}", src.arrows()[i].id, tgt.arrows()[j].id))
            .collect();
        writeln!(out, "obj {}: {}", c.arrows()[f].id, objs.join(", ")).unwrap();
        writeln!(out, "arr {}: {}", c.arrows()[f].id, arrs.join(", ")).unwrap();
    }
    out
}

// ---------------------------------------------------------------------------
// endofunctors

/// ```text
/// domain { … }
/// obj a -> b
/// arr f -> g
/// ```
///
/// `arr` lines may be omitted when the target hom-set is a singleton.
pub fn parse_endofunctor(text: &str, loader: &mut Loader<'_>) -> Result<Endofunctor, FormatError> {
    let mut items = group(clean_lines(text))?;
    let c = require_category(&mut items, "domain", loader)?;
    let (objs, arrs) = (object_map(&c), arrow_map(&c));
    let mut om: Vec<Option<usize>> = vec![None; c.object_count()];
    let mut am: Vec<Option<usize>> = vec![None; c.arrow_count()];
    for line in only_lines(items)? {
        let no = line.no;
        let (kw, rest) = keyword(&line.text);
        let (x, y) = arrow_pair(rest, no)?;
        let (map, slot) = match kw {
            "obj" => (&objs, &mut om[lookup(&objs, &x, no, "object")?]),
            "arr" => (&arrs, &mut am[lookup(&arrs, &x, no, "arrow")?]),
            _ => return syntax(no, format!("unrecognised line {:?}", line.text)),
        };
        if slot.replace(lookup(map, &y, no, "image")?).is_some() {
            return syntax(no, format!("image of {x} given twice"));
        }
    }
    let mut objects = Vec::with_capacity(c.object_count());
    for (a, o) in om.into_iter().enumerate() {
        objects.push(o.ok_or_else(|| FormatError::Syntax {
            line: 0,
            message: format!("no image given for object {}", c.objects()[a]),
        })?);
    }
    let mut arrows = Vec::with_capacity(c.arrow_count());
    for (f, g) in am.into_iter().enumerate() {
        let image = match g {
            Some(g) => g,
            None => match c.hom(objects[c.source(f)], objects[c.target(f)]) {
                [only] => *only,
                _ => {
                    return syntax(0, format!("image of arrow {} is not determined", c.arrows()[f].id));
                }
            },
        };
        arrows.push(image);
    }
    Ok(Endofunctor::new(c, FunctorMap { objects, arrows })?)
}

pub fn write_endofunctor(f: &Endofunctor) -> String {
    let c = f.category();
    let mut out = format!("domain {{\n{}}}\n", indent(&write_category(c)));
    for a in 0..c.object_count() {
        writeln!(out, "obj {} -> {}", c.objects()[a], c.objects()[f.on_object(a)]).unwrap();
    }
    for g in 0..c.arrow_count() {
        writeln!(out, "arr {} -> {}", c.arrows()[g].id, c.arrows()[f.on_arrow(g)].id).unwrap();
    }
    out
}

// ---------------------------------------------------------------------------
// profunctors

/// ```text
/// B { … }
/// A { … }
/// at b a: m1, m2          # elements of M(b, a)
/// left beta a: m -> m'    # beta: b' -> b sends M(b, a) to M(b', a)
/// right alpha b: m -> m'  # alpha: a -> a' sends M(b, a) to M(b, a')
/// ```
///
/// `constant: k` instead of `at` lines gives `k` elements everywhere with
/// trivial actions. Actions of identities, and actions on empty sets, may
/// be omitted.
pub fn parse_profunctor(text: &str, loader: &mut Loader<'_>) -> Result<Profunctor, FormatError> {
    let mut items = group(clean_lines(text))?;
    let b = require_category(&mut items, "B", loader)?;
    let a = require_category(&mut items, "A", loader)?;
    let lines = only_lines(items)?;
    if let [single] = lines.as_slice() {
        if let Some(k) = single.text.strip_prefix("constant:") {
            let k: usize = k.trim().parse().or_else(|_| syntax(single.no, "expected `constant: <count>`"))?;
            return Ok(Profunctor::constant(&b, &a, k));
        }
    }
    let (bo, ao) = (object_map(&b), object_map(&a));
    let (ba, aa) = (arrow_map(&b), arrow_map(&a));
    let mut elements = vec![vec![Vec::new(); a.object_count()]; b.object_count()];
    let mut left_lines = Vec::new();
    let mut right_lines = Vec::new();
    for line in lines {
        let no = line.no;
        match keyword(&line.text) {
            ("at", rest) => {
                let (head, tail) = labelled(rest, no, 2, "at <b> <a>: m, …")?;
                let (x, y) = (lookup(&bo, head[0], no, "object of B")?, lookup(&ao, head[1], no, "object of A")?);
                elements[x][y] = comma_list(tail);
            }
            ("left", rest) => {
                let (head, tail) = labelled(rest, no, 2, "left <beta> <a>: m -> m', …")?;
                let beta = lookup(&ba, head[0], no, "arrow of B")?;
                let y = lookup(&ao, head[1], no, "object of A")?;
                left_lines.push((beta, y, no, mapping(tail, no)?));
            }
            ("right", rest) => {
                let (head, tail) = labelled(rest, no, 2, "right <alpha> <b>: m -> m', …")?;
                let alpha = lookup(&aa, head[0], no, "arrow of A")?;
                let x = lookup(&bo, head[1], no, "object of B")?;
                right_lines.push((alpha, x, no, mapping(tail, no)?));
            }
            _ => return syntax(no, format!("unrecognised line {:?}", line.text)),
        }
    }
    let index = |x: usize, y: usize| -> HashMap<&str, usize> {
        elements[x][y].iter().enumerate().map(|(i, m)| (m.as_str(), i)).collect()
    };
    // left[beta][a] maps M(target beta, a) -> M(source beta, a)
    let mut left: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; a.object_count()]; b.arrow_count()];
    for (beta, y, no, pairs) in left_lines {
        let (from, to) = (index(b.target(beta), y), index(b.source(beta), y));
        left[beta][y] = Some(table(&from, &to, pairs, no)?);
    }
    let mut right: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; b.object_count()]; a.arrow_count()];
    for (alpha, x, no, pairs) in right_lines {
        let (from, to) = (index(x, a.source(alpha)), index(x, a.target(alpha)));
        right[alpha][x] = Some(table(&from, &to, pairs, no)?);
    }
    let fill = |slot: Option<Vec<usize>>, size: usize, is_id: bool, what: String| match slot {
        Some(t) => Ok(t),
        None if is_id || size == 0 => Ok((0..size).collect()),
        None => syntax(0, format!("missing action {what}")),
    };
    let mut left_full = Vec::with_capacity(b.arrow_count());
    for (beta, row) in left.into_iter().enumerate() {
        let mut out = Vec::with_capacity(a.object_count());
        for (y, slot) in row.into_iter().enumerate() {
            let size = elements[b.target(beta)][y].len();
            out.push(fill(slot, size, b.is_identity(beta), format!("left {} {}", b.arrows()[beta].id, a.objects()[y]))?);
        }
        left_full.push(out);
    }
    let mut right_full = Vec::with_capacity(a.arrow_count());
    for (alpha, row) in right.into_iter().enumerate() {
        let mut out = Vec::with_capacity(b.object_count());
        for (x, slot) in row.into_iter().enumerate() {
            let size = elements[x][a.source(alpha)].len();
            out.push(fill(slot, size, a.is_identity(alpha), format!("right {} {}", a.arrows()[alpha].id, b.objects()[x]))?);
        }
        right_full.push(out);
    }
    Ok(Profunctor::new(b, a, elements, left_full, right_full)?)
}

fn table(
    from: &HashMap<&str, usize>,
    to: &HashMap<&str, usize>,
    pairs: Vec<(String, String)>,
    no: usize,
) -> Result<Vec<usize>, FormatError> {
    let mut t = vec![usize::MAX; from.len()];
    for (m, m2) in pairs {
        t[lookup(from, &m, no, "element")?] = lookup(to, &m2, no, "element")?;
    }
    if t.contains(&usize::MAX) {
        return syntax(no, "action is not total");
    }
    Ok(t)
}

pub fn write_profunctor(p: &Profunctor) -> String {
    let (b, a) = (p.left_category(), p.right_category());
    let mut out = format!(
        "B {{\n{}}}\nA {{\n{}}}\n",
        indent(&write_category(b)),
        indent(&write_category(a))
    );
    for x in 0..b.object_count() {
        for y in 0..a.object_count() {
            writeln!(out, "at {} {}: {}", b.objects()[x], a.objects()[y], p.elements(x, y).join(", ")).unwrap();
        }
    }
    for beta in 0..b.arrow_count() {
        if b.is_identity(beta) {
            continue;
        }
        for y in 0..a.object_count() {
            let src = p.elements(b.target(beta), y);
            if src.is_empty() {
                continue;
            }
            let dst = p.elements(b.source(beta), y);
            let pairs: Vec<String> = (0..src.len())
                .map(|i| format!("{} -> {}", src[i], dst[p.act_left(beta, y, i)]))
                .collect();
            writeln!(out, "left {} {}: {}", b.arrows()[beta].id, a.objects()[y], pairs.join(", ")).unwrap();
        }
    }
    for alpha in 0..a.arrow_count() {
        if a.is_identity(alpha) {
            continue;
        }
        for x in 0..b.object_count() {
            let src = p.elements(x, a.source(alpha));
            if src.is_empty() {
                continue;
            }
            let dst = p.elements(x, a.target(alpha));
            let pairs: Vec<String> = (0..src.len())
                .map(|i| format!("{} -> {}", src[i], dst[p.act_right(alpha, x, i)]))
                .collect();
            writeln!(out, "right {} {}: {}", a.arrows()[alpha].id, b.objects()[x], pairs.join(", ")).unwrap();
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Galois connections

/// Two posets and object maps `F: A -> B`, `G: B -> A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisData {
    pub a: FinCat,
    pub b: FinCat,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

/// ```text
/// A { … }
/// B { … }
/// F a -> b
/// G b -> a
/// ```
pub fn parse_galois(text: &str, loader: &mut Loader<'_>) -> Result<GaloisData, FormatError> {
    let mut items = group(clean_lines(text))?;
    let a = require_category(&mut items, "A", loader)?;
    let b = require_category(&mut items, "B", loader)?;
    let (ao, bo) = (object_map(&a), object_map(&b));
    let mut f = vec![None; a.object_count()];
    let mut g = vec![None; b.object_count()];
    for line in only_lines(items)? {
        let no = line.no;
        let (kw, rest) = keyword(&line.text);
        let (x, y) = arrow_pair(rest, no)?;
        match kw {
            "F" => f[lookup(&ao, &x, no, "object of A")?] = Some(lookup(&bo, &y, no, "object of B")?),
            "G" => g[lookup(&bo, &x, no, "object of B")?] = Some(lookup(&ao, &y, no, "object of A")?),
            _ => return syntax(no, format!("unrecognised line {:?}", line.text)),
        }
    }
    let total = |m: Vec<Option<usize>>, which: &str| -> Result<Vec<usize>, FormatError> {
        m.into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| FormatError::Syntax { line: 0, message: format!("{which} is not defined everywhere") })
    };
    Ok(GaloisData {
        f: total(f, "F")?,
        g: total(g, "G")?,
        a,
        b,
    })
}

pub fn write_galois(d: &GaloisData) -> String {
    let mut out = format!(
        "A {{\n{}}}\nB {{\n{}}}\n",
        indent(&write_category(&d.a)),
        indent(&write_category(&d.b))
    );
    for (x, &y) in d.f.iter().enumerate() {
        writeln!(out, "F {} -> {}", d.a.objects()[x], d.b.objects()[y]).unwrap();
    }
    for (y, &x) in d.g.iter().enumerate() {
        writeln!(out, "G {} -> {}", d.b.objects()[y], d.a.objects()[x]).unwrap();
    }
    out
}
