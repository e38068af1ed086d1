//! Named categories and functors, generated programmatically.
//!
//! Identities are always named `id_<object>`. Concrete categories of finite
//! sets name a function `m -> n` as `m>n/v1v2…` with 1-based values listed
//! in order (`e` for the empty function); functions are enumerated in
//! lexicographic order so identifiers are deterministic.

use std::collections::HashMap;

use thiserror::Error;

use crate::category::{
    opposite, validate_category, Arrow, CategoryError, FinCat, FunctorMap, RawArrow, RawCategory, RawComposite,
};
use crate::functors::{CatFunctor, FunctorError, SetFunctor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("{name}: {detail}")]
    ParamOutOfRange { name: String, detail: String },
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

/// One catalog entry: its name, parameter description and a short gloss.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub about: &'static str,
}

pub const CATEGORIES: &[CatalogEntry] = &[
    CatalogEntry { name: "discrete", params: "n (0..=200)", about: "n objects, identities only" },
    CatalogEntry { name: "chain", params: "n (0..=100)", about: "the total order 0 < 1 < … < n-1" },
    CatalogEntry { name: "codiscrete", params: "n (0..=30)", about: "n objects, exactly one arrow between any two" },
    CatalogEntry { name: "poset", params: "n i1 j1 i2 j2 … (n <= 60)", about: "preorder on 0..n-1 generated by i <= j" },
    CatalogEntry { name: "subsets_poset", params: "n (0..=6)", about: "nonempty subsets of {1..n} under inclusion" },
    CatalogEntry { name: "powerset", params: "n (0..=6)", about: "all subsets of {1..n} under inclusion, empty set named e" },
    CatalogEntry { name: "divisors", params: "n (1..=100000)", about: "divisors of n under divisibility" },
    CatalogEntry { name: "delta_inj", params: "N (0..=7)", about: "sets 0..N and order-preserving injections" },
    CatalogEntry { name: "delta_surj", params: "N (0..=7)", about: "sets 0..N and order-preserving surjections" },
    CatalogEntry { name: "fin_sets", params: "N (0..=4)", about: "sets 1..N and all functions" },
    CatalogEntry { name: "sphere_poset", params: "n (-1..=30)", about: "two incomparable elements on each level 0..n" },
    CatalogEntry { name: "pushout_shape", params: "", about: "b1 <- a -> b2" },
    CatalogEntry { name: "parallel_pair", params: "", about: "two parallel arrows a => b" },
    CatalogEntry { name: "no_weighting_example", params: "", about: "four objects, Cauchy-complete, no weighting" },
    CatalogEntry { name: "idempotent_monoid", params: "", about: "the monoid {1, e} with e.e = e" },
    CatalogEntry { name: "split_epi_category", params: "", about: "the idempotent split through a second object" },
    CatalogEntry { name: "cyclic_group", params: "n (1..=64)", about: "Z/n as a one-object category" },
    CatalogEntry { name: "symmetric_group", params: "n (0..=4)", about: "S_n as a one-object category" },
    CatalogEntry { name: "monoid", params: "k t11 … tkk", about: "monoid on 0..k-1 (0 the unit) with table t" },
];

pub const FUNCTORS: &[CatalogEntry] = &[
    CatalogEntry { name: "symmetric_action", params: "N (0..=6)", about: "n |-> S_n on delta_inj(N)" },
    CatalogEntry { name: "group_action", params: "n d1 d2 …", about: "Z/n acting on orbits Z/d_i (each d_i divides n)" },
    CatalogEntry { name: "intersection_diagram", params: "mask1 mask2 …", about: "J |-> intersection of the sets S_j on P_n^op" },
    CatalogEntry { name: "pushout_data", params: "|Xa| |Xb1| |Xb2| f1… f2…", about: "a functor on the pushout shape (1-based values)" },
    CatalogEntry { name: "parallel_data", params: "|Xa| |Xb| f… g…", about: "a functor on the parallel pair (1-based values)" },
];

fn out_of_range(name: &str, detail: impl Into<String>) -> BuildError {
    BuildError::ParamOutOfRange {
        name: name.into(),
        detail: detail.into(),
    }
}

fn arity(name: &str, params: &[i64], n: usize) -> Result<(), BuildError> {
    if params.len() != n {
        return Err(out_of_range(name, format!("expected {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

fn ranged(name: &str, params: &[i64], lo: i64, hi: i64) -> Result<usize, BuildError> {
    arity(name, params, 1)?;
    let v = params[0];
    if v < lo || v > hi {
        return Err(out_of_range(name, format!("parameter {v} outside {lo}..={hi}")));
    }
    Ok(v as usize)
}

/// Builds a catalog category by name.
pub fn build(name: &str, params: &[i64]) -> Result<FinCat, BuildError> {
    let c = match name {
        "discrete" => discrete(ranged(name, params, 0, 200)?),
        "chain" => chain(ranged(name, params, 0, 100)?),
        "codiscrete" => codiscrete(ranged(name, params, 0, 30)?),
        "poset" => {
            let (&n, rest) = params.split_first().ok_or_else(|| out_of_range(name, "missing size"))?;
            if !(0..=60).contains(&n) || rest.len() % 2 != 0 {
                return Err(out_of_range(name, "expected n followed by pairs i j"));
            }
            let n = n as usize;
            let mut pairs = Vec::new();
            for p in rest.chunks(2) {
                if p.iter().any(|&x| x < 0 || x as usize >= n) {
                    return Err(out_of_range(name, format!("pair {} {} outside 0..{n}", p[0], p[1])));
                }
                pairs.push((p[0] as usize, p[1] as usize));
            }
            poset_from_relation(n, &pairs)
        }
        "subsets_poset" => subsets_poset(ranged(name, params, 0, 6)?),
        "powerset" => powerset(ranged(name, params, 0, 6)?),
        "divisors" => divisors(ranged(name, params, 1, 100_000)? as u64),
        "delta_inj" => delta_inj(ranged(name, params, 0, 7)?),
        "delta_surj" => delta_surj(ranged(name, params, 0, 7)?),
        "fin_sets" => fin_sets(ranged(name, params, 0, 4)?),
        "sphere_poset" => sphere_poset(ranged(name, params, -1, 30).map(|_| params[0])?),
        "pushout_shape" => {
            arity(name, params, 0)?;
            pushout_shape()
        }
        "parallel_pair" => {
            arity(name, params, 0)?;
            parallel_pair()
        }
        "no_weighting_example" => {
            arity(name, params, 0)?;
            no_weighting_example()
        }
        "idempotent_monoid" => {
            arity(name, params, 0)?;
            idempotent_monoid()
        }
        "split_epi_category" => {
            arity(name, params, 0)?;
            split_epi_category()
        }
        "cyclic_group" => cyclic_group(ranged(name, params, 1, 64)?),
        "symmetric_group" => symmetric_group(ranged(name, params, 0, 4)?),
        "monoid" => {
            let (&k, table) = params.split_first().ok_or_else(|| out_of_range(name, "missing size"))?;
            if !(1..=64).contains(&k) || table.len() != (k * k) as usize {
                return Err(out_of_range(name, "expected k followed by k*k table entries"));
            }
            let k = k as usize;
            if table.iter().any(|&t| t < 0 || t as usize >= k) {
                return Err(out_of_range(name, "table entry outside 0..k"));
            }
            let names: Vec<String> = (1..k).map(|i| format!("m{i}")).collect();
            monoid("monoid", &names, |i, j| table[i * k + j] as usize)?
        }
        _ => return Err(BuildError::UnknownName(name.into())),
    };
    Ok(c)
}

/// Builds a catalog Set-valued functor by name.
pub fn build_functor(name: &str, params: &[i64]) -> Result<SetFunctor, BuildError> {
    let nonneg = |xs: &[i64]| -> Result<Vec<usize>, BuildError> {
        xs.iter()
            .map(|&x| usize::try_from(x).map_err(|_| out_of_range(name, format!("negative parameter {x}"))))
            .collect()
    };
    match name {
        "symmetric_action" => Ok(symmetric_action(ranged(name, params, 0, 6)?)),
        "group_action" => {
            let ps = nonneg(params)?;
            let (&n, orbits) = ps.split_first().ok_or_else(|| out_of_range(name, "missing group order"))?;
            if n == 0 || n > 64 || orbits.iter().any(|&d| d == 0 || n % d != 0) || orbits.iter().sum::<usize>() > 5000 {
                return Err(out_of_range(name, "orbit sizes must divide the group order"));
            }
            Ok(cyclic_action(n, orbits))
        }
        "intersection_diagram" => {
            let ps = nonneg(params)?;
            if ps.len() > 5 || ps.iter().any(|&m| m >= 1 << 16) {
                return Err(out_of_range(name, "at most 5 sets, each a mask below 2^16"));
            }
            let sets: Vec<Vec<u32>> = ps
                .iter()
                .map(|&m| (0..16).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect())
                .collect();
            Ok(intersection_diagram(&sets))
        }
        "pushout_data" => {
            let ps = nonneg(params)?;
            if ps.len() < 3 || ps.len() != 3 + 2 * ps[0] {
                return Err(out_of_range(name, "expected |Xa| |Xb1| |Xb2| then two lists of |Xa| values"));
            }
            let (xa, xb1, xb2) = (ps[0], ps[1], ps[2]);
            let f1 = one_based(name, &ps[3..3 + xa], xb1)?;
            let f2 = one_based(name, &ps[3 + xa..], xb2)?;
            Ok(pushout_data(xa, xb1, xb2, &f1, &f2)?)
        }
        "parallel_data" => {
            let ps = nonneg(params)?;
            if ps.len() < 2 || ps.len() != 2 + 2 * ps[0] {
                return Err(out_of_range(name, "expected |Xa| |Xb| then two lists of |Xa| values"));
            }
            let (xa, xb) = (ps[0], ps[1]);
            let f = one_based(name, &ps[2..2 + xa], xb)?;
            let g = one_based(name, &ps[2 + xa..], xb)?;
            Ok(parallel_data(xa, xb, &f, &g)?)
        }
        _ => Err(BuildError::UnknownName(name.into())),
    }
}

fn one_based(name: &str, xs: &[usize], bound: usize) -> Result<Vec<usize>, BuildError> {
    xs.iter()
        .map(|&x| {
            if x == 0 || x > bound {
                Err(out_of_range(name, format!("value {x} outside 1..={bound}")))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// preorders

/// The preorder on `elements` with an arrow `x -> y` iff `leq(x, y)`.
/// Non-identity arrows are named `x<y`. Fails unless `leq` is reflexive and
/// transitive.
pub fn preorder(
    name: &str,
    elements: Vec<String>,
    leq: impl Fn(usize, usize) -> bool,
) -> Result<FinCat, CategoryError> {
    let n = elements.len();
    let mut arrows = Vec::new();
    let mut hom = vec![vec![usize::MAX; n]; n];
    let mut identities = vec![0; n];
    for x in 0..n {
        for y in 0..n {
            if leq(x, y) {
                hom[x][y] = arrows.len();
                let id = if x == y {
                    identities[x] = arrows.len();
                    format!("id_{}", elements[x])
                } else {
                    format!("{}<{}", elements[x], elements[y])
                };
                arrows.push(Arrow { id, source: x, target: y });
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| hom[x][x] == usize::MAX) {
        return Err(CategoryError::InvalidGraph(format!("relation is not reflexive at {}", elements[x])));
    }
    let targets: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
    let c = FinCat::from_table(name, elements, arrows, identities, |g, f| {
        let h = hom[targets[f].0][targets[g].1];
        (h != usize::MAX).then_some(h)
    })?;
    Ok(c)
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn discrete(n: usize) -> FinCat {
    preorder(&format!("discrete{n}"), numbered(n), |x, y| x == y).expect("discrete")
}

pub fn chain(n: usize) -> FinCat {
    preorder(&format!("chain{n}"), numbered(n), |x, y| x <= y).expect("chain")
}

/// The indiscrete (codiscrete) groupoid: all objects uniquely isomorphic.
pub fn codiscrete(n: usize) -> FinCat {
    preorder(&format!("codiscrete{n}"), numbered(n), |_, _| true).expect("codiscrete")
}

/// Preorder on `0..n` generated by the given pairs `i <= j`.
pub fn poset_from_relation(n: usize, pairs: &[(usize, usize)]) -> FinCat {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in pairs {
        r[i][j] = true;
    }
    // Warshall closure
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    preorder("poset", numbered(n), |x, y| r[x][y]).expect("closure is a preorder")
}

fn subset_name(mask: u32) -> String {
    if mask == 0 {
        return "e".into();
    }
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b + 1).to_string())
        .collect::<Vec<_>>()
        .join(".")
}

/// Subsets of `{1..n}` as bitmasks, ordered by size and then
/// lexicographically by their sorted elements.
fn subsets_ordered(n: usize, include_empty: bool) -> Vec<u32> {
    let mut masks: Vec<u32> = (u32::from(!include_empty)..(1u32 << n)).collect();
    masks.sort_by_key(|&m| {
        let elems: Vec<u32> = (0..n as u32).filter(|b| m >> b & 1 == 1).collect();
        (elems.len(), elems)
    });
    masks
}

/// Nonempty subsets of `{1..n}`, named like `1.3`, ordered by inclusion.
pub fn subsets_poset(n: usize) -> FinCat {
    let masks = subsets_ordered(n, false);
    preorder(&format!("P{n}"), masks.iter().map(|&m| subset_name(m)).collect(), |x, y| {
        masks[x] & !masks[y] == 0
    })
    .expect("inclusion order")
}

/// The bitmask of each object of [`subsets_poset`], in object order.
pub fn subsets_masks(n: usize) -> Vec<u32> {
    subsets_ordered(n, false)
}

/// All subsets of `{1..n}` (the empty one named `e`) under inclusion.
pub fn powerset(n: usize) -> FinCat {
    let masks = subsets_ordered(n, true);
    preorder(&format!("B{n}"), masks.iter().map(|&m| subset_name(m)).collect(), |x, y| {
        masks[x] & !masks[y] == 0
    })
    .expect("inclusion order")
}

pub fn divisors(n: u64) -> FinCat {
    let ds: Vec<u64> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    preorder(&format!("div{n}"), ds.iter().map(u64::to_string).collect(), |x, y| ds[y].is_multiple_of(ds[x]))
        .expect("divisibility order")
}

/// Objects `c0, d0, c1, d1, …, cn, dn`; `x < y` whenever `x` sits on a
/// strictly lower level. `n = -1` gives the empty category.
pub fn sphere_poset(n: i64) -> FinCat {
    let levels = (n + 1).max(0) as usize;
    let names = (0..levels).flat_map(|i| [format!("c{i}"), format!("d{i}")]).collect();
    preorder(&format!("S{n}"), names, |x, y| x == y || x / 2 < y / 2).expect("sphere poset")
}

// ---------------------------------------------------------------------------
// small hand-made categories

fn raw_category(
    name: &str,
    objects: &[&str],
    arrows: &[(&str, &str, &str)],
    compositions: &[(&str, &str, &str)],
) -> FinCat {
    validate_category(&RawCategory {
        name: name.into(),
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
        compositions: compositions
            .iter()
            .map(|(g, f, h)| RawComposite {
                g: g.to_string(),
                f: f.to_string(),
                h: h.to_string(),
            })
            .collect(),
    })
    .unwrap_or_else(|e| panic!("catalog category {name} is invalid: {e}"))
}

/// `b1 <-p1- a -p2-> b2`.
pub fn pushout_shape() -> FinCat {
    raw_category("L", &["a", "b1", "b2"], &[("p1", "a", "b1"), ("p2", "a", "b2")], &[])
}

/// `f, g : a => b`.
pub fn parallel_pair() -> FinCat {
    raw_category("B", &["a", "b"], &[("f", "a", "b"), ("g", "a", "b")], &[])
}

pub fn idempotent_monoid() -> FinCat {
    raw_category("E", &["*"], &[("e", "*", "*")], &[("e", "e", "e")])
}

/// `s: a -> b`, `i: b -> a` with `s ∘ i = 1_b`; the idempotent `e = i ∘ s`
/// is the only other arrow.
pub fn split_epi_category() -> FinCat {
    raw_category(
        "SplitE",
        &["a", "b"],
        &[("e", "a", "a"), ("s", "a", "b"), ("i", "b", "a")],
        &[
            ("s", "i", "id_b"),
            ("i", "s", "e"),
            ("e", "e", "e"),
            ("s", "e", "s"),
            ("e", "i", "i"),
        ],
    )
}

/// Four objects `a1..a4`. Arrows between distinct objects: two each way
/// between `a1` and `a2`, one each way between `a3` and each of `a1`, `a2`,
/// and into `a4` one from `a1`, two from `a2`, one from `a3`. The
/// endomorphisms are `1, f11` on `a1` and `1, f22` on `a2`. Every composite of
/// two non-identity arrows `a_i -> a_j -> a_k` is `f_ik`, where `f33` means
/// the identity of `a3`.
pub fn no_weighting_example() -> FinCat {
    let arrows: &[(&str, &str, &str)] = &[
        ("f11", "a1", "a1"),
        ("f22", "a2", "a2"),
        ("f12", "a1", "a2"),
        ("g12", "a1", "a2"),
        ("f21", "a2", "a1"),
        ("g21", "a2", "a1"),
        ("f13", "a1", "a3"),
        ("f31", "a3", "a1"),
        ("f23", "a2", "a3"),
        ("f32", "a3", "a2"),
        ("f34", "a3", "a4"),
        ("f14", "a1", "a4"),
        ("f24", "a2", "a4"),
        ("g24", "a2", "a4"),
    ];
    let index = |o: &str| o[1..].parse::<usize>().expect("a<i>");
    let canonical = |i: usize, k: usize| match (i, k) {
        (3, 3) => "id_a3".to_string(),
        _ => format!("f{i}{k}"),
    };
    let mut comps = Vec::new();
    for &(p, s, t) in arrows {
        for &(q, s2, t2) in arrows {
            if t == s2 {
                comps.push((q.to_string(), p.to_string(), canonical(index(s), index(t2))));
            }
        }
    }
    let comps: Vec<(&str, &str, &str)> = comps.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    raw_category("NoWeighting", &["a1", "a2", "a3", "a4"], arrows, &comps)
}

/// One-object category on `1` and the named elements; `mul(i, j)` is the
/// product `i · j` (apply `j` first) on indices with `0` the unit.
pub fn monoid(name: &str, elements: &[String], mul: impl Fn(usize, usize) -> usize) -> Result<FinCat, CategoryError> {
    let k = elements.len() + 1;
    let mut arrows = vec![Arrow {
        id: "id_*".into(),
        source: 0,
        target: 0,
    }];
    arrows.extend(elements.iter().map(|e| Arrow {
        id: e.clone(),
        source: 0,
        target: 0,
    }));
    let c = FinCat::from_table(name, vec!["*".into()], arrows, vec![0], |g, f| {
        let h = mul(g, f);
        (h < k).then_some(h)
    })?;
    Ok(c)
}

/// `Z/n` with generator powers named `g^k`.
pub fn cyclic_group(n: usize) -> FinCat {
    let names: Vec<String> = (1..n).map(|k| format!("g^{k}")).collect();
    monoid(&format!("Z{n}"), &names, |i, j| (i + j) % n).expect("cyclic group")
}

/// A permutation of `{1..n}` in one-line notation, e.g. `p2-1-3`.
pub fn perm_name(p: &[usize]) -> String {
    format!("p{}", p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join("-"))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    functions(n, n).into_iter().filter(|f| is_injective(f)).collect()
}

/// `S_n` as a one-object category; arrows are named in one-line notation.
pub fn symmetric_group(n: usize) -> FinCat {
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    // identity first
    let names: Vec<String> = perms[1..].iter().map(|p| perm_name(p)).collect();
    monoid(&format!("S{n}"), &names, |g, f| {
        let h: Vec<usize> = perms[f].iter().map(|&x| perms[g][x]).collect();
        index[&h]
    })
    .expect("symmetric group")
}

// ---------------------------------------------------------------------------
// concrete categories of finite sets

/// All functions `0..m -> 0..n` in lexicographic order.
pub fn functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..n).map(move |v| {
                    let mut f = f.clone();
                    f.push(v);
                    f
                })
            })
            .collect();
    }
    out
}

fn is_injective(f: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    f.iter().all(|x| seen.insert(x))
}

fn is_surjective(f: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    for &x in f {
        hit[x] = true;
    }
    hit.into_iter().all(|h| h)
}

fn is_monotone(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] <= w[1])
}

/// Builds a category whose objects are finite sets of the given sizes and
/// whose arrows are the functions selected by `keep`.
fn concrete(
    name: &str,
    objects: &[(String, usize)],
    keep: impl Fn(&[usize], usize, usize) -> bool,
) -> FinCat {
    let n = objects.len();
    let mut arrows = Vec::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut identities = vec![usize::MAX; n];
    for (s, (sname, m)) in objects.iter().enumerate() {
        for (t, (tname, k)) in objects.iter().enumerate() {
            for f in functions(*m, *k) {
                if !keep(&f, *m, *k) {
                    continue;
                }
                let is_id = s == t && f.iter().enumerate().all(|(i, &x)| i == x);
                let id = if is_id {
                    identities[s] = arrows.len();
                    format!("id_{sname}")
                } else if f.is_empty() {
                    format!("{sname}>{tname}/e")
                } else {
                    format!("{sname}>{tname}/{}", f.iter().map(|x| (x + 1).to_string()).collect::<String>())
                };
                index.insert((s, t, f.clone()), arrows.len());
                arrows.push(Arrow { id, source: s, target: t });
                maps.push(f);
            }
        }
    }
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
    FinCat::from_table(name, objects.iter().map(|o| o.0.clone()).collect(), arrows, identities, |g, f| {
        let h: Vec<usize> = maps[f].iter().map(|&x| maps[g][x]).collect();
        index.get(&(ends[f].0, ends[g].1, h)).copied()
    })
    .unwrap_or_else(|e| panic!("concrete category {name}: {e}"))
}

/// The function `0..m -> 0..n` underlying an arrow of a concrete catalog
/// category, recovered from its identifier.
pub fn arrow_function(c: &FinCat, f: usize) -> Option<Vec<usize>> {
    let id = &c.arrows()[f].id;
    if c.is_identity(f) {
        let m = object_size(c, c.source(f))?;
        return Some((0..m).collect());
    }
    let (_, vals) = id.split_once('/')?;
    if vals == "e" {
        return Some(Vec::new());
    }
    vals.chars().map(|ch| ch.to_digit(10).map(|d| d as usize - 1)).collect()
}

fn object_size(c: &FinCat, o: usize) -> Option<usize> {
    c.objects()[o].parse().ok()
}

/// `𝔻_N`: sets `0..N` and order-preserving injections.
pub fn delta_inj(n: usize) -> FinCat {
    let objs: Vec<(String, usize)> = (0..=n).map(|i| (i.to_string(), i)).collect();
    concrete(&format!("Dinj{n}"), &objs, |f, _, _| is_monotone(f) && f.windows(2).all(|w| w[0] < w[1]))
}

/// Sets `0..N` and order-preserving surjections.
pub fn delta_surj(n: usize) -> FinCat {
    let objs: Vec<(String, usize)> = (0..=n).map(|i| (i.to_string(), i)).collect();
    concrete(&format!("Dsurj{n}"), &objs, |f, _, k| is_monotone(f) && is_surjective(f, k))
}

/// `F_N`: sets `1..N` and all functions.
pub fn fin_sets(n: usize) -> FinCat {
    let objs: Vec<(String, usize)> = (1..=n).map(|i| (i.to_string(), i)).collect();
    concrete(&format!("F{n}"), &objs, |_, _, _| true)
}

// ---------------------------------------------------------------------------
// functors

/// `S: 𝔻_N -> Set` with `S(n) = S_n`; an injection `f` sends `τ` to the
/// permutation acting as `τ` on the image of `f` and fixing the rest.
pub fn symmetric_action(n: usize) -> SetFunctor {
    let d = delta_inj(n);
    let perms: Vec<Vec<Vec<usize>>> = (0..=n).map(permutations).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = perms
        .iter()
        .map(|ps| ps.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
        .collect();
    let sets = perms.iter().map(|ps| ps.iter().map(|p| perm_name(p)).collect()).collect();
    let actions = (0..d.arrow_count())
        .map(|f| {
            let (m, k) = (d.source(f), d.target(f));
            let img = arrow_function(&d, f).expect("concrete arrow");
            perms[m]
                .iter()
                .map(|tau| {
                    let mut sigma: Vec<usize> = (0..k).collect();
                    for i in 0..m {
                        sigma[img[i]] = img[tau[i]];
                    }
                    index[k][&sigma]
                })
                .collect()
        })
        .collect();
    SetFunctor::new(d, sets, actions).expect("symmetric action is functorial")
}

/// `Z/n` acting by rotation on a disjoint union of orbits `Z/d` (each `d`
/// dividing `n`); elements are named `o<i>.<r>`. Free iff every `d = n`.
pub fn cyclic_action(n: usize, orbits: &[usize]) -> SetFunctor {
    let g = cyclic_group(n);
    let mut elements = Vec::new();
    let mut offsets = Vec::new();
    for (i, &d) in orbits.iter().enumerate() {
        offsets.push(elements.len());
        elements.extend((0..d).map(|r| format!("o{i}.{r}")));
    }
    // arrow index k is the rotation by k
    let actions = (0..n)
        .map(|k| {
            orbits
                .iter()
                .enumerate()
                .flat_map(|(i, &d)| (0..d).map(move |r| (i, d, r)))
                .map(|(i, d, r)| offsets[i] + (r + k) % d)
                .collect()
        })
        .collect();
    SetFunctor::new(g, vec![elements], actions).expect("rotation action")
}

/// A group given as a one-object category acting on named elements; each
/// arrow carries a permutation of element indices.
pub fn group_action(group: &FinCat, elements: Vec<String>, act: Vec<Vec<usize>>) -> Result<SetFunctor, FunctorError> {
    SetFunctor::new(group.clone(), vec![elements], act)
}

/// `X: P_n^op -> Set`, `X(J) = ⋂_{j ∈ J} S_j`, elements named by value.
pub fn intersection_diagram(sets: &[Vec<u32>]) -> SetFunctor {
    let n = sets.len();
    let p = opposite(&subsets_poset(n));
    let masks = subsets_masks(n);
    let fiber = |m: u32| -> Vec<u32> {
        let mut acc: Option<Vec<u32>> = None;
        for (j, s) in sets.iter().enumerate() {
            if m >> j & 1 == 1 {
                let mut s = s.clone();
                s.sort_unstable();
                s.dedup();
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.into_iter().filter(|x| s.contains(x)).collect(),
                });
            }
        }
        acc.unwrap_or_default()
    };
    let fibers: Vec<Vec<u32>> = masks.iter().map(|&m| fiber(m)).collect();
    let names = fibers.iter().map(|f| f.iter().map(u32::to_string).collect()).collect();
    let actions = (0..p.arrow_count())
        .map(|f| {
            let (s, t) = (p.source(f), p.target(f));
            fibers[s]
                .iter()
                .map(|x| fibers[t].iter().position(|y| y == x).expect("inclusion"))
                .collect()
        })
        .collect();
    SetFunctor::new(p, names, actions).expect("intersection diagram")
}

/// `X: L -> Set` with `|Xa| = xa` and the two legs given by 0-based values.
pub fn pushout_data(xa: usize, xb1: usize, xb2: usize, f1: &[usize], f2: &[usize]) -> Result<SetFunctor, FunctorError> {
    let l = pushout_shape();
    let elems = |prefix: &str, k: usize| (1..=k).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>();
    let sets = vec![elems("x", xa), elems("y", xb1), elems("z", xb2)];
    let mut actions = vec![Vec::new(); l.arrow_count()];
    for o in 0..3 {
        actions[l.identity(o)] = (0..sets[o].len()).collect();
    }
    actions[l.arrow_index("p1").expect("p1")] = f1.to_vec();
    actions[l.arrow_index("p2").expect("p2")] = f2.to_vec();
    SetFunctor::new(l, sets, actions)
}

/// `X: (a => b) -> Set` with the two functions given by 0-based values.
pub fn parallel_data(xa: usize, xb: usize, f: &[usize], g: &[usize]) -> Result<SetFunctor, FunctorError> {
    let b = parallel_pair();
    let elems = |prefix: &str, k: usize| (1..=k).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>();
    let sets = vec![elems("x", xa), elems("y", xb)];
    let mut actions = vec![Vec::new(); b.arrow_count()];
    for o in 0..2 {
        actions[b.identity(o)] = (0..sets[o].len()).collect();
    }
    actions[b.arrow_index("f").expect("f")] = f.to_vec();
    actions[b.arrow_index("g").expect("g")] = g.to_vec();
    SetFunctor::new(b, sets, actions)
}

/// `X: L -> Cat` with `Xa = S^{n-1}` and both `Xb_i` terminal; its category
/// of elements is a copy of `S^n`.
pub fn sphere_diagram(n: i64) -> CatFunctor {
    let l = pushout_shape();
    let below = sphere_poset(n - 1);
    let point = discrete(1);
    let cats = vec![below.clone(), point.clone(), point.clone()];
    let mut actions = Vec::with_capacity(l.arrow_count());
    for f in 0..l.arrow_count() {
        actions.push(if l.source(f) == 0 && l.target(f) == 0 {
            FunctorMap::identity(&below)
        } else if l.source(f) == 0 {
            FunctorMap::to_terminal(&below)
        } else {
            FunctorMap::identity(&point)
        });
    }
    CatFunctor::new(l, cats, actions).expect("sphere diagram")
}
