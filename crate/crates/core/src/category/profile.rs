use super::FinCat;

/// Structural flags of a finite category, each found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralProfile {
    pub is_skeletal: bool,
    pub idempotents_are_identities: bool,
    pub endos_are_autos: bool,
    pub is_circuit_free: bool,
    pub is_cauchy_complete: bool,
    /// `|Aut(a)|` for each object, in object order.
    pub aut_orders: Vec<usize>,
}

pub fn structural_profile(c: &FinCat) -> StructuralProfile {
    let n = c.object_count();
    let endos = |a: usize| c.hom(a, a).iter().copied();

    let is_skeletal = c.iso_between_distinct().is_none();
    let idempotents_are_identities = c.nontrivial_idempotent().is_none();
    let endos_are_autos = (0..n).all(|a| endos(a).all(|e| c.is_iso(e)));

    // A circuit with a non-identity arrow exists iff there is a non-identity
    // endomorphism or two distinct objects with arrows both ways.
    let is_circuit_free = (0..n).all(|a| c.hom(a, a).len() == 1)
        && (0..n).all(|a| (a + 1..n).all(|b| c.hom(a, b).is_empty() || c.hom(b, a).is_empty()));

    let is_cauchy_complete = (0..c.arrow_count())
        .filter(|&e| c.is_idempotent(e))
        .all(|e| splits(c, e));

    let aut_orders = (0..n).map(|a| endos(a).filter(|&e| c.is_iso(e)).count()).collect();

    StructuralProfile {
        is_skeletal,
        idempotents_are_identities,
        endos_are_autos,
        is_circuit_free,
        is_cauchy_complete,
        aut_orders,
    }
}

/// `e: a -> a` splits if there are `s: a -> b`, `i: b -> a` with
/// `s ∘ i = 1_b` and `i ∘ s = e`.
pub fn splits(c: &FinCat, e: usize) -> bool {
    let a = c.source(e);
    (0..c.object_count()).any(|b| {
        c.hom(a, b).iter().any(|&s| {
            c.hom(b, a)
                .iter()
                .any(|&i| c.compose(s, i) == Some(c.identity(b)) && c.compose(i, s) == Some(e))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{validate_category, RawArrow, RawCategory, RawComposite};

    fn monoid(elems: &[&str], table: &[(&str, &str, &str)]) -> FinCat {
        validate_category(&RawCategory {
            name: "m".into(),
            objects: vec!["*".into()],
            arrows: elems
                .iter()
                .map(|e| RawArrow {
                    id: e.to_string(),
                    source: "*".into(),
                    target: "*".into(),
                })
                .collect(),
            identities: Vec::new(),
            compositions: table
                .iter()
                .map(|(g, f, h)| RawComposite {
                    g: g.to_string(),
                    f: f.to_string(),
                    h: h.to_string(),
                })
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn group_profile() {
        let z2 = monoid(&["g"], &[("g", "g", "id_*")]);
        let p = structural_profile(&z2);
        assert!(p.idempotents_are_identities && p.endos_are_autos && p.is_cauchy_complete);
        assert!(!p.is_circuit_free);
        assert_eq!(p.aut_orders, vec![2]);
    }

    #[test]
    fn idempotent_monoid_profile() {
        let m = monoid(&["e"], &[("e", "e", "e")]);
        let p = structural_profile(&m);
        assert!(!p.idempotents_are_identities);
        assert!(!p.endos_are_autos);
        assert!(!p.is_cauchy_complete);
        assert_eq!(p.aut_orders, vec![1]);
    }
}
