//! The bundled invariant suite, run over catalog categories and one round
//! of combinators applied to them.

use num_traits::Zero;

use crate::builders;
use crate::category::{
    adjoin_bounds, collage, interval, opposite, product_capped, structural_profile, sum, DirectedGraph, FinCat,
    Profunctor,
};
use crate::exact::{int, Rational};
use crate::format::{parse_category, write_category};
use crate::functors::{colimit_cardinality_via_weighting, fr_decompose, representation_coefficients};
use crate::lefschetz::{lefschetz_number, Endofunctor};
use crate::mobius::{
    cll_mobius, collage_mobius, epi_mono_classes, euler_characteristic, euler_of_graph, mobius_by_factorization,
    mobius_by_paths, mobius_matrix, nerve_euler, weighting, zeta,
};

/// One line of the verification table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Small instances of every catalog category.
pub fn catalog_sample() -> Vec<FinCat> {
    vec![
        builders::discrete(2),
        builders::chain(3),
        builders::codiscrete(2),
        builders::subsets_poset(3),
        builders::powerset(2),
        builders::divisors(12),
        builders::delta_inj(3),
        builders::delta_surj(3),
        builders::fin_sets(2),
        builders::fin_sets(3),
        builders::sphere_poset(1),
        builders::sphere_poset(2),
        builders::cyclic_group(3),
        builders::symmetric_group(3),
        builders::pushout_shape(),
        builders::parallel_pair(),
        builders::idempotent_monoid(),
        builders::split_epi_category(),
        builders::no_weighting_example(),
    ]
}

/// Arrow cap applied to binary combinators in the closure sample.
pub const CLOSURE_ARROW_CAP: usize = 1_500;

/// `base` together with one application of sum, product, collage (constant
/// one-element profunctor), adjoining bounds, and intervals.
pub fn closure_sample(base: &[FinCat]) -> Vec<FinCat> {
    let mut out: Vec<FinCat> = base.to_vec();
    for x in base {
        out.push(adjoin_bounds(x, true, true));
        out.push(adjoin_bounds(x, true, false));
        out.push(adjoin_bounds(x, false, true));
        for a in 0..x.object_count() {
            for c in 0..x.object_count() {
                let i = interval(x, a, c);
                if i.object_count() > 1 {
                    out.push(i);
                }
            }
        }
    }
    for (i, x) in base.iter().enumerate() {
        for y in &base[i..] {
            out.push(sum(&[x, y]));
            if x.arrow_count() * y.arrow_count() <= CLOSURE_ARROW_CAP {
                if let Ok(p) = product_capped(&[x, y], CLOSURE_ARROW_CAP) {
                    out.push(p);
                }
            }
            if let Ok(c) = collage(&Profunctor::constant(x, y, 1)) {
                out.push(c);
            }
        }
    }
    out
}

fn check(name: &str, failures: Vec<String>, total: usize) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{total} cases"),
            Some(first) => format!("{} of {total} failed, first: {first}", failures.len()),
        },
    }
}

/// Runs every invariant and returns the table in a fixed order.
pub fn run_suite() -> Vec<CheckResult> {
    let base = catalog_sample();
    let closure = closure_sample(&base);
    let mut results = Vec::new();

    let mut fails = Vec::new();
    for c in &closure {
        match parse_category(&write_category(c)) {
            Ok(d) if d == *c => {}
            _ => fails.push(c.name().to_string()),
        }
    }
    results.push(check("text round trip", fails, closure.len()));

    let fails = closure
        .iter()
        .filter(|c| {
            let p = structural_profile(c);
            p.idempotents_are_identities != p.endos_are_autos
                || (p.is_circuit_free && !p.idempotents_are_identities)
        })
        .map(|c| c.name().to_string())
        .collect();
    results.push(check("idempotents vs endomorphisms", fails, closure.len()));

    let fails = closure
        .iter()
        .filter(|c| !opposite(&opposite(c)).same_structure(c) || zeta(&opposite(c)) != zeta(c).transpose())
        .map(|c| c.name().to_string())
        .collect();
    results.push(check("opposite involution", fails, closure.len()));

    let mobius: Vec<(&FinCat, Option<crate::exact::QMat>)> =
        closure.iter().map(|c| (c, mobius_matrix(c).ok())).collect();

    let mut fails = Vec::new();
    let mut count = 0;
    for (c, mu) in &mobius {
        let Some(mu) = mu else { continue };
        count += 1;
        let z = zeta(c);
        for a in 0..c.object_count() {
            for b in 0..c.object_count() {
                if z.get(a, b).is_zero() && !mu.get(a, b).is_zero() {
                    fails.push(format!("{} at ({a}, {b})", c.name()));
                }
            }
        }
    }
    results.push(check("zeta zero implies mu zero", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for (c, mu) in &mobius {
        for a in 0..c.object_count() {
            for e in 0..c.object_count() {
                let i = interval(c, a, e);
                let sub = mobius_matrix(&i).ok();
                count += 1;
                match (mu, sub) {
                    (Some(mu), Some(s)) => {
                        let idx: Vec<usize> = i.objects().iter().map(|o| c.object_index(o).expect("object")).collect();
                        if mu.submatrix(&idx, &idx) != s {
                            fails.push(format!("{} interval ({a}, {e})", c.name()));
                        }
                    }
                    (Some(_), None) => fails.push(format!("{} interval ({a}, {e}) lost inversion", c.name())),
                    _ => {}
                }
            }
        }
    }
    results.push(check("interval restriction", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for (c, mu) in &mobius {
        let Some(mu) = mu else { continue };
        if let Ok(p) = mobius_by_paths(c) {
            count += 1;
            if &p != mu {
                fails.push(format!("{} paths", c.name()));
            }
        }
        let (e, m) = epi_mono_classes(c);
        if let Ok(f) = mobius_by_factorization(c, &e, &m) {
            count += 1;
            if &f != mu {
                fails.push(format!("{} factorization", c.name()));
            }
        }
    }
    results.push(check("Möbius algorithms agree", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for c in &closure {
        let chi = euler_characteristic(c);
        let chi_op = euler_characteristic(&opposite(c));
        count += 1;
        if chi.as_ref().ok() != chi_op.as_ref().ok() {
            fails.push(format!("{} op", c.name()));
        }
        if let Ok(x) = &chi {
            if (c.initial_object().is_some() || c.terminal_object().is_some()) && *x != int(1) {
                fails.push(format!("{} bounded but chi = {x}", c.name()));
            }
        }
        if let Ok(n) = nerve_euler(c) {
            if chi.as_ref().ok() != Some(&Rational::from_integer(n.chi.clone())) {
                fails.push(format!("{} nerve count", c.name()));
            }
        }
    }
    results.push(check("Euler characteristic identities", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for (i, x) in base.iter().enumerate() {
        for y in &base[i..] {
            let (cx, cy) = (euler_characteristic(x), euler_characteristic(y));
            let (Ok(cx), Ok(cy)) = (cx, cy) else { continue };
            count += 1;
            if euler_characteristic(&sum(&[x, y])).ok() != Some(&cx + &cy) {
                fails.push(format!("{} + {}", x.name(), y.name()));
            }
            if x.arrow_count() * y.arrow_count() <= CLOSURE_ARROW_CAP {
                let p = product_capped(&[x, y], CLOSURE_ARROW_CAP).expect("under cap");
                if euler_characteristic(&p).ok() != Some(&cx * &cy) {
                    fails.push(format!("{} x {}", x.name(), y.name()));
                }
            }
        }
    }
    results.push(check("sums and products", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for c in &base {
        let (Ok(_), Ok(chi)) = (mobius_matrix(c), euler_characteristic(c)) else { continue };
        count += 1;
        let t = adjoin_bounds(c, true, true);
        let mu = mobius_matrix(&t);
        let last = t.object_count() - 1;
        if mu.map(|m| m.get(0, last).clone()).ok() != Some(chi - int(1)) {
            fails.push(c.name().to_string());
        }
    }
    results.push(check("adjoined bounds", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for (i, x) in base.iter().enumerate() {
        for y in &base[i..] {
            if mobius_matrix(x).is_err() || mobius_matrix(y).is_err() {
                continue;
            }
            for k in [1, 2] {
                let p = Profunctor::constant(x, y, k);
                count += 1;
                let direct = collage(&p).ok().and_then(|c| mobius_matrix(&c).ok());
                if collage_mobius(&p).ok() != direct {
                    fails.push(format!("coll({}, {}) k = {k}", x.name(), y.name()));
                }
            }
        }
    }
    results.push(check("collage block formula", fails, count));

    let mut fails = Vec::new();
    let groupoids = [
        builders::cyclic_group(4),
        builders::symmetric_group(3),
        builders::codiscrete(3),
        sum(&[&builders::cyclic_group(2), &builders::codiscrete(2), &builders::symmetric_group(3)]),
    ];
    for g in &groupoids {
        let classes = g.iso_classes();
        let aut = structural_profile(g).aut_orders;
        let mut expected = int(0);
        for k in 0..=classes.iter().copied().max().unwrap_or(0) {
            if let Some(a) = classes.iter().position(|&c| c == k) {
                expected += Rational::new(1.into(), aut[a].into());
            }
        }
        if euler_characteristic(g).ok() != Some(expected) {
            fails.push(g.name().to_string());
        }
    }
    results.push(check("groupoid cardinality", fails, groupoids.len()));

    let graphs = [
        DirectedGraph::from_pairs("g1", 2, &[(0, 1)]),
        DirectedGraph::from_pairs("g2", 2, &[(0, 1), (0, 1)]),
        DirectedGraph::from_pairs("g3", 4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]),
        DirectedGraph::from_pairs("g4", 5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 4)]),
    ];
    let fails = graphs
        .iter()
        .filter(|g| euler_of_graph(g).is_err())
        .map(|g| g.name.clone())
        .collect();
    results.push(check("graph formula", fails, graphs.len()));

    let mut fails = Vec::new();
    for n in 0..=5 {
        let x = builders::symmetric_action(n);
        let r = representation_coefficients(&x);
        let fr = fr_decompose(&x);
        let ok = match (r, fr) {
            (Ok(r), Ok(fr)) => r.iter().zip(&fr.coefficients).all(|(p, &q)| *p == int(q as i64)),
            _ => false,
        };
        if !ok {
            fails.push(format!("N = {n}"));
        }
    }
    results.push(check("derangement coefficients", fails, 6));

    let mut fails = Vec::new();
    let samples = vec![
        (builders::pushout_data(2, 3, 3, &[0, 1], &[1, 2]).expect("pushout"), vec![int(-1), int(1), int(1)]),
        (builders::cyclic_action(4, &[4, 4]), vec![Rational::new(1.into(), 4.into())]),
        (builders::parallel_data(1, 3, &[0], &[2]).expect("parallel"), vec![int(-1), int(1)]),
    ];
    for (x, k) in &samples {
        match colimit_cardinality_via_weighting(x, k) {
            Ok(r) if r.theorem_applies => {}
            Ok(_) => fails.push(format!("{} not nondegenerate", x.domain().name())),
            Err(e) => fails.push(e.to_string()),
        }
    }
    let n = 3;
    let inter = builders::intersection_diagram(&[vec![1, 2, 3], vec![3, 4], vec![1, 4, 5]]);
    let k: Vec<Rational> = builders::subsets_masks(n)
        .iter()
        .map(|m| if m.count_ones() % 2 == 1 { int(1) } else { int(-1) })
        .collect();
    match colimit_cardinality_via_weighting(&inter, &k) {
        Ok(r) if r.components == 5 && r.weighted == int(5) => {}
        other => fails.push(format!("inclusion-exclusion: {other:?}")),
    }
    results.push(check("colimit cardinality", fails, samples.len() + 1));

    let mut fails = Vec::new();
    let mut count = 0;
    for c in closure.iter().filter(|c| c.is_poset()) {
        count += 1;
        if let Err(e) = cll_mobius(c) {
            fails.push(format!("{}: {e}", c.name()));
        }
    }
    for n in 2..=5 {
        count += 1;
        if cll_mobius(&builders::cyclic_group(n)).is_ok() {
            fails.push(format!("Z/{n} inverted"));
        }
    }
    results.push(check("arrow-level Möbius", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for c in &base {
        let chi = euler_characteristic(c).ok();
        count += 1;
        if lefschetz_number(&Endofunctor::identity(c)).ok() != chi {
            fails.push(c.name().to_string());
        }
    }
    results.push(check("Lefschetz number of the identity", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for c in &base {
        let w = weighting(c);
        for v in &w.nullspace_basis {
            count += 1;
            let s: Rational = v.iter().sum();
            if !s.is_zero() && euler_characteristic(c).is_ok() {
                fails.push(c.name().to_string());
            }
        }
    }
    results.push(check("weighting sums constant", fails, count));

    results
}

/// Renders the table, one line per check.
pub fn render_table(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for r in results {
        let pad = width - r.name.chars().count();
        out.push_str(&format!(
            "{}{}  {}  {}\n",
            r.name,
            " ".repeat(pad),
            if r.passed { "PASS" } else { "FAIL" },
            r.detail
        ));
    }
    out
}
