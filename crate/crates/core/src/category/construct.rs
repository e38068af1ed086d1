//! Constructions producing new categories from old ones.
//!
//! Identifier conventions: summands tag their ids as `x@i`, products use
//! `[x;y;…]`. Both are injective, so the results never need renaming.

use super::{Arrow, CategoryError, FinCat, DEFAULT_ARROW_CAP};

/// The opposite category. Object and arrow ids are kept; only endpoints and
/// the order of composition change.
pub fn opposite(c: &FinCat) -> FinCat {
    let name = match c.name().strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", c.name()),
    };
    let arrows = c
        .arrows()
        .iter()
        .map(|a| Arrow {
            id: a.id.clone(),
            source: a.target,
            target: a.source,
        })
        .collect();
    FinCat::from_table(name, c.objects().to_vec(), arrows, c.identities().to_vec(), |g, f| c.compose(f, g))
        .expect("opposite of a valid category is valid")
}

/// Disjoint union; summand `i` contributes ids `x@i`.
pub fn sum(categories: &[&FinCat]) -> FinCat {
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut identities = Vec::new();
    // (object offset, arrow offset) per summand
    let mut offsets = Vec::with_capacity(categories.len());
    let mut owner = Vec::new();
    for (i, c) in categories.iter().enumerate() {
        let (oo, ao) = (objects.len(), arrows.len());
        offsets.push((oo, ao));
        objects.extend(c.objects().iter().map(|x| format!("{x}@{i}")));
        arrows.extend(c.arrows().iter().map(|a| Arrow {
            id: format!("{}@{i}", a.id),
            source: a.source + oo,
            target: a.target + oo,
        }));
        owner.extend(std::iter::repeat_n(i, c.arrow_count()));
        identities.extend(c.identities().iter().map(|&f| f + ao));
    }
    let name = categories.iter().map(|c| c.name()).collect::<Vec<_>>().join("+");
    FinCat::from_table(format!("({name})"), objects, arrows, identities, |g, f| {
        let i = owner[f];
        let ao = offsets[i].1;
        categories[i].compose(g - ao, f - ao).map(|h| h + ao)
    })
    .expect("sum of valid categories is valid")
}

/// Product with the default arrow cap.
pub fn product(categories: &[&FinCat]) -> Result<FinCat, CategoryError> {
    product_capped(categories, DEFAULT_ARROW_CAP)
}

/// Cartesian product; objects and arrows are tuples `[x;y;…]`, the first
/// factor varying slowest.
pub fn product_capped(categories: &[&FinCat], cap: usize) -> Result<FinCat, CategoryError> {
    let arrow_total = categories
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.arrow_count()))
        .unwrap_or(usize::MAX);
    if arrow_total > cap {
        return Err(CategoryError::SizeOverflow {
            arrows: arrow_total,
            cap,
        });
    }
    let obj_sizes: Vec<usize> = categories.iter().map(|c| c.object_count()).collect();
    let arr_sizes: Vec<usize> = categories.iter().map(|c| c.arrow_count()).collect();
    let objects_t = tuples(&obj_sizes);
    let arrows_t = tuples(&arr_sizes);
    let encode = |t: &[usize], sizes: &[usize]| t.iter().zip(sizes).fold(0, |acc, (&x, &s)| acc * s + x);

    let objects = objects_t
        .iter()
        .map(|t| tuple_id(t.iter().enumerate().map(|(k, &x)| categories[k].objects()[x].as_str())))
        .collect();
    let arrows = arrows_t
        .iter()
        .map(|t| {
            let src: Vec<usize> = t.iter().enumerate().map(|(k, &f)| categories[k].source(f)).collect();
            let tgt: Vec<usize> = t.iter().enumerate().map(|(k, &f)| categories[k].target(f)).collect();
            Arrow {
                id: tuple_id(t.iter().enumerate().map(|(k, &f)| categories[k].arrows()[f].id.as_str())),
                source: encode(&src, &obj_sizes),
                target: encode(&tgt, &obj_sizes),
            }
        })
        .collect();
    let identities = objects_t
        .iter()
        .map(|t| {
            let ids: Vec<usize> = t.iter().enumerate().map(|(k, &x)| categories[k].identity(x)).collect();
            encode(&ids, &arr_sizes)
        })
        .collect();
    let names = categories.iter().map(|c| c.name()).collect::<Vec<_>>().join("x");
    let cat = FinCat::from_table(format!("({names})"), objects, arrows, identities, |g, f| {
        let (gt, ft) = (&arrows_t[g], &arrows_t[f]);
        let mut h = Vec::with_capacity(gt.len());
        for k in 0..categories.len() {
            h.push(categories[k].compose(gt[k], ft[k])?);
        }
        Some(encode(&h, &arr_sizes))
    })?;
    Ok(cat)
}

fn tuple_id<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    format!("[{}]", parts.collect::<Vec<_>>().join(";"))
}

/// All tuples with `t[k] < sizes[k]`, lexicographic.
fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..s).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Full subcategory on the given objects, kept in the ambient order.
pub fn full_subcategory(c: &FinCat, objects: &[usize]) -> FinCat {
    let mut keep: Vec<usize> = objects.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let mut arrows = Vec::new();
    for &a in &keep {
        for &b in &keep {
            arrows.extend(c.hom(a, b).iter().copied());
        }
    }
    arrows.sort_unstable();
    subcategory(c, &keep, &arrows).expect("full subcategory is closed").with_name(c.name().to_string())
}

/// Subcategory on the given objects and arrows; fails unless identities and
/// composites stay inside.
pub fn subcategory(c: &FinCat, objects: &[usize], arrows: &[usize]) -> Result<FinCat, CategoryError> {
    let mut obj_map = vec![usize::MAX; c.object_count()];
    for (i, &o) in objects.iter().enumerate() {
        obj_map[o] = i;
    }
    let mut arr_map = vec![usize::MAX; c.arrow_count()];
    for (i, &f) in arrows.iter().enumerate() {
        arr_map[f] = i;
    }
    for &f in arrows {
        if obj_map[c.source(f)] == usize::MAX || obj_map[c.target(f)] == usize::MAX {
            return Err(CategoryError::SubcategoryNotClosed(format!(
                "arrow {} leaves the object set",
                c.arrows()[f].id
            )));
        }
    }
    let mut identities = Vec::with_capacity(objects.len());
    for &o in objects {
        let id = c.identity(o);
        if arr_map[id] == usize::MAX {
            return Err(CategoryError::SubcategoryNotClosed(format!(
                "identity {} is missing",
                c.arrows()[id].id
            )));
        }
        identities.push(arr_map[id]);
    }
    for &f in arrows {
        for &g in arrows {
            if let Some(h) = c.compose(g, f) {
                if arr_map[h] == usize::MAX {
                    return Err(CategoryError::SubcategoryNotClosed(format!(
                        "{} . {} = {} is missing",
                        c.arrows()[g].id,
                        c.arrows()[f].id,
                        c.arrows()[h].id
                    )));
                }
            }
        }
    }
    let new_arrows = arrows
        .iter()
        .map(|&f| Arrow {
            id: c.arrows()[f].id.clone(),
            source: obj_map[c.source(f)],
            target: obj_map[c.target(f)],
        })
        .collect();
    let cat = FinCat::from_table(
        c.name().to_string(),
        objects.iter().map(|&o| c.objects()[o].clone()).collect(),
        new_arrows,
        identities,
        |g, f| c.compose(arrows[g], arrows[f]).map(|h| arr_map[h]),
    )?;
    Ok(cat)
}

/// The full subcategory on objects `b` with arrows `a -> b -> c`.
pub fn interval(c: &FinCat, a: usize, end: usize) -> FinCat {
    let objs: Vec<usize> = (0..c.object_count())
        .filter(|&b| !c.hom(a, b).is_empty() && !c.hom(b, end).is_empty())
        .collect();
    full_subcategory(c, &objs).with_name(format!("{}[{},{}]", c.name(), c.objects()[a], c.objects()[end]))
}

fn fresh(c: &FinCat, base: &str) -> String {
    let mut name = base.to_string();
    while c.object_index(&name).is_some() || c.arrow_index(&format!("id_{name}")).is_some() {
        name.push('\'');
    }
    name
}

/// Freely adjoins a new initial object (`bot`, first) and/or a new terminal
/// object (`top`, last), even when the category already has one.
pub fn adjoin_bounds(c: &FinCat, initial: bool, terminal: bool) -> FinCat {
    let n = c.object_count();
    let bot = fresh(c, "bot");
    let top = fresh(c, "top");
    let shift = usize::from(initial);
    let mut objects = Vec::with_capacity(n + 2);
    if initial {
        objects.push(bot.clone());
    }
    objects.extend(c.objects().iter().cloned());
    if terminal {
        objects.push(top.clone());
    }
    let bot_o = 0;
    let top_o = objects.len() - 1;

    let mut arrows: Vec<Arrow> = c
        .arrows()
        .iter()
        .map(|a| Arrow {
            id: a.id.clone(),
            source: a.source + shift,
            target: a.target + shift,
        })
        .collect();
    let mut identities: Vec<usize> = Vec::with_capacity(objects.len());
    if initial {
        identities.push(arrows.len());
        arrows.push(Arrow {
            id: format!("id_{bot}"),
            source: bot_o,
            target: bot_o,
        });
    }
    identities.extend(c.identities().iter().copied());
    if terminal {
        identities.push(arrows.len());
        arrows.push(Arrow {
            id: format!("id_{top}"),
            source: top_o,
            target: top_o,
        });
    }
    // from_bot[x] : bot -> x, to_top[x] : x -> top (indices in the new object order)
    let mut from_bot = vec![usize::MAX; objects.len()];
    let mut to_top = vec![usize::MAX; objects.len()];
    if initial {
        from_bot[bot_o] = identities[bot_o];
        for x in 0..n {
            from_bot[x + shift] = arrows.len();
            arrows.push(Arrow {
                id: format!("{bot}>{}", c.objects()[x]),
                source: bot_o,
                target: x + shift,
            });
        }
    }
    if terminal {
        to_top[top_o] = identities[top_o];
        for x in 0..n {
            to_top[x + shift] = arrows.len();
            arrows.push(Arrow {
                id: format!("{}>{top}", c.objects()[x]),
                source: x + shift,
                target: top_o,
            });
        }
        if initial {
            from_bot[top_o] = arrows.len();
            to_top[bot_o] = arrows.len();
            arrows.push(Arrow {
                id: format!("{bot}>{top}"),
                source: bot_o,
                target: top_o,
            });
        }
    }
    let old = c.arrow_count();
    let name = format!("{}~", c.name());
    let arrows_ref = arrows.clone();
    FinCat::from_table(name, objects, arrows, identities, |g, f| {
        let (fa, ga) = (&arrows_ref[f], &arrows_ref[g]);
        if f < old && g < old {
            return c.compose(g, f);
        }
        // Every composite involving a new arrow starts at bot or ends at top,
        // and is forced by uniqueness.
        if initial && fa.source == bot_o {
            return Some(from_bot[ga.target]);
        }
        if terminal && ga.target == top_o {
            return Some(to_top[fa.source]);
        }
        None
    })
    .expect("adjoining bounds preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn opposite_is_involution() {
        let c = builders::fin_sets(2);
        assert_eq!(opposite(&opposite(&c)), c);
        let p = builders::chain(2);
        let op = opposite(&p);
        let f = op.arrow_index("0<1").unwrap();
        assert_eq!((op.source(f), op.target(f)), (1, 0));
    }

    #[test]
    fn sum_of_points_is_discrete() {
        let t = builders::discrete(1);
        let s = sum(&[&t, &t, &t]);
        assert_eq!(s.object_count(), 3);
        assert_eq!(s.arrow_count(), 3);
        assert_eq!(sum(&[]).object_count(), 0);
    }

    #[test]
    fn product_with_terminal_is_a_copy() {
        let c = builders::split_epi_category();
        let p = product(&[&c, &builders::discrete(1)]).unwrap();
        assert_eq!(p.object_count(), c.object_count());
        assert_eq!(p.arrow_count(), c.arrow_count());
        assert_eq!(product(&[]).unwrap().arrow_count(), 1);
    }

    #[test]
    fn product_respects_cap() {
        let c = builders::fin_sets(3);
        assert!(matches!(
            product_capped(&[&c, &c, &c], 1000),
            Err(CategoryError::SizeOverflow { .. })
        ));
    }

    #[test]
    fn interval_of_incomparable_pair_is_empty() {
        let p = builders::pushout_shape();
        let (b1, b2) = (p.object_index("b1").unwrap(), p.object_index("b2").unwrap());
        assert_eq!(interval(&p, b1, b2).object_count(), 0);
        let i = interval(&p, b1, b1);
        assert_eq!((i.object_count(), i.arrow_count()), (1, 1));
    }

    #[test]
    fn adjoin_to_empty_is_arrow() {
        let e = FinCat::empty("e");
        let a = adjoin_bounds(&e, true, true);
        assert_eq!(a.object_count(), 2);
        assert_eq!(a.arrow_count(), 3);
        assert!(a.is_poset());
        let d = adjoin_bounds(&builders::discrete(2), true, true);
        assert_eq!(d.object_count(), 4);
        assert_eq!(d.arrow_count(), 9);
        assert!(d.is_initial(0) && d.is_terminal(3));
    }

    #[test]
    fn adjoin_avoids_clashing_names() {
        let e = adjoin_bounds(&FinCat::empty("e"), true, true);
        let twice = adjoin_bounds(&e, true, true);
        assert_eq!(twice.objects(), &["bot'", "bot", "top", "top'"]);
    }

    #[test]
    fn subcategory_must_be_closed() {
        let c = builders::split_epi_category();
        let s = c.arrow_index("s").unwrap();
        let objs = [0, 1];
        let arrows = [c.identity(0), c.identity(1), s, c.arrow_index("i").unwrap()];
        assert!(matches!(
            subcategory(&c, &objs, &arrows),
            Err(CategoryError::SubcategoryNotClosed(_))
        ));
    }
}
