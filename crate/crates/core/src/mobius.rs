//! Zeta and Möbius functions, weightings and Euler characteristic.
//!
//! Möbius inversion is decided by exact rank. The structural algorithms
//! ([`mobius_by_paths`], [`mobius_by_factorization`]) are independent
//! routes to the same matrix and always check their result against `ζ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::category::{
    collage, free_category, structural_profile, subcategory, CategoryError, DirectedGraph, FinCat, FunctorMap,
    Profunctor,
};
use crate::exact::{int, AffineSolutionSet, LinalgError, QMat, Rational, SolutionKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MobiusError {
    #[error("no Möbius inversion: zeta has rank {rank} of {size}")]
    NoMobiusInversion { rank: usize, size: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a factorization system: {0}")]
    NotAFactorizationSystem(String),
    #[error("arrow set is not a subcategory: {0}")]
    SubcategoryNotClosed(String),
    #[error("Euler characteristic undefined ({})", undefined_reason(*.no_weighting, *.no_coweighting))]
    UndefinedEuler { no_weighting: bool, no_coweighting: bool },
    #[error("not an equivalence: {0}")]
    NotAnEquivalence(String),
    #[error("vector is not a weighting")]
    NotAWeighting,
    #[error("not adjoint: F{a} <= {b} and {a} <= G{b} disagree")]
    NotAdjoint { a: String, b: String },
    #[error("arrow-level Möbius function does not exist (rank {rank} of {size})")]
    NotInvertible { rank: usize, size: usize },
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

fn undefined_reason(w: bool, cw: bool) -> &'static str {
    match (w, cw) {
        (true, true) => "no weighting and no coweighting",
        (true, false) => "no weighting",
        (false, true) => "no coweighting",
        (false, false) => "both sides exist",
    }
}

fn labels(c: &FinCat) -> Vec<String> {
    c.objects().to_vec()
}

/// `ζ(a, b) = |C(a, b)|`.
pub fn zeta(c: &FinCat) -> QMat {
    let n = c.object_count();
    let rows = (0..n).map(|a| (0..n).map(|b| int(c.hom(a, b).len() as i64)).collect()).collect();
    QMat::from_rows(labels(c), labels(c), rows)
}

/// `μ = ζ⁻¹`, checked on both sides.
pub fn mobius_matrix(c: &FinCat) -> Result<QMat, MobiusError> {
    zeta(c).invert().map_err(|e| match e {
        LinalgError::Singular { rank, size } => MobiusError::NoMobiusInversion { rank, size },
        other => MobiusError::Inconsistent(other.to_string()),
    })
}

fn check_inverse(c: &FinCat, mu: &QMat, what: &str) -> Result<(), MobiusError> {
    let z = zeta(c);
    let left = mu.mul(&z).map_err(|e| MobiusError::Inconsistent(e.to_string()))?;
    let right = z.mul(mu).map_err(|e| MobiusError::Inconsistent(e.to_string()))?;
    if left.is_identity() && right.is_identity() {
        Ok(())
    } else {
        Err(MobiusError::Inconsistent(format!("{what} does not invert zeta")))
    }
}

/// Witness that `c` is not skeletal or has a non-identity idempotent.
fn skeletal_idempotent_witness(c: &FinCat) -> Option<String> {
    if let Some(f) = c.iso_between_distinct() {
        return Some(format!("not skeletal: {} is an isomorphism", c.describe_arrow(f)));
    }
    c.nontrivial_idempotent()
        .map(|e| format!("{} is an idempotent other than an identity", c.describe_arrow(e)))
}

/// Sum over paths of distinct objects, weighted by automorphism groups.
///
/// Evaluated as `Σ_n (-1)^n D (Z'D)^n`, where `Z'` is `ζ` with its diagonal
/// cleared and `D = diag(1/|Aut|)`: the `(a, b)` entry of `D(Z'D)^n` sums
/// `ζ(a0,a1)⋯ζ(a(n-1),an) / |Aut(a0)|⋯|Aut(an)|` over object strings with
/// consecutive entries distinct, and those are exactly the strings of
/// distinct objects under the precondition.
pub fn mobius_by_paths(c: &FinCat) -> Result<QMat, MobiusError> {
    if let Some(w) = skeletal_idempotent_witness(c) {
        return Err(MobiusError::PreconditionFailed(w));
    }
    let n = c.object_count();
    let aut = structural_profile(c).aut_orders;
    let inv_aut: Vec<Rational> = aut.iter().map(|&k| Rational::new(1.into(), BigInt::from(k))).collect();
    let mut step = zeta(c);
    for a in 0..n {
        step.set(a, a, Rational::zero());
    }
    // Z' D: scale columns
    let step = step.transpose().scale_rows(&inv_aut).transpose();
    let d = QMat::identity(labels(c)).scale_rows(&inv_aut);
    let mut term = d.clone();
    let mut acc = d;
    for _ in 0..n {
        term = term.mul(&step).map_err(|e| MobiusError::Inconsistent(e.to_string()))?;
        term = term.scale_rows(&vec![-Rational::one(); n]);
        if term.is_zero() {
            break;
        }
        acc = add(&acc, &term);
    }
    check_inverse(c, &acc, "path sum")?;
    Ok(acc)
}

fn add(x: &QMat, y: &QMat) -> QMat {
    x.sub(&y.scale_rows(&vec![-Rational::one(); y.rows()]))
}

/// The default factorization candidates: all epimorphisms and all
/// monomorphisms, found exhaustively.
pub fn epi_mono_classes(c: &FinCat) -> (Vec<usize>, Vec<usize>) {
    let epis = (0..c.arrow_count()).filter(|&f| c.is_epi(f)).collect();
    let monos = (0..c.arrow_count()).filter(|&f| c.is_mono(f)).collect();
    (epis, monos)
}

/// `μ = μ_M · diag(|Aut|) · μ_E`, with `μ_E`, `μ_M` computed by path sums on
/// the wide subcategories spanned by `e` and `m`.
///
/// The factorization property is checked as the matrix identity
/// `ζ = ζ_E · diag(1/|Aut|) · ζ_M`.
pub fn mobius_by_factorization(c: &FinCat, e: &[usize], m: &[usize]) -> Result<QMat, MobiusError> {
    if let Some(f) = c.iso_between_distinct() {
        return Err(MobiusError::PreconditionFailed(format!(
            "not skeletal: {} is an isomorphism",
            c.describe_arrow(f)
        )));
    }
    let objects: Vec<usize> = (0..c.object_count()).collect();
    let wide = |arrows: &[usize], label: &str| -> Result<FinCat, MobiusError> {
        let mut arrows = arrows.to_vec();
        arrows.sort_unstable();
        arrows.dedup();
        subcategory(c, &objects, &arrows).map_err(|err| match err {
            CategoryError::SubcategoryNotClosed(d) => MobiusError::SubcategoryNotClosed(format!("{label}: {d}")),
            other => other.into(),
        })
    };
    let ec = wide(e, "E")?;
    let mc = wide(m, "M")?;
    let aut = structural_profile(c).aut_orders;
    let aut_q: Vec<Rational> = aut.iter().map(|&k| int(k as i64)).collect();
    let inv_aut: Vec<Rational> = aut.iter().map(|&k| Rational::new(1.into(), BigInt::from(k))).collect();
    let lift = |x: Result<QMat, LinalgError>| x.map_err(|e| MobiusError::Inconsistent(e.to_string()));

    let predicted = lift(zeta(&ec).mul(&zeta(&mc).scale_rows(&inv_aut)))?;
    if predicted != zeta(c) {
        let (a, b) = first_difference(&predicted, &zeta(c));
        return Err(MobiusError::NotAFactorizationSystem(format!(
            "zeta_E * (1/|Aut|) * zeta_M differs from zeta at ({}, {})",
            c.objects()[a],
            c.objects()[b]
        )));
    }
    let mu_e = mobius_by_paths(&ec).map_err(|err| match err {
        MobiusError::PreconditionFailed(d) => MobiusError::PreconditionFailed(format!("E: {d}")),
        other => other,
    })?;
    let mu_m = mobius_by_paths(&mc).map_err(|err| match err {
        MobiusError::PreconditionFailed(d) => MobiusError::PreconditionFailed(format!("M: {d}")),
        other => other,
    })?;
    let mu = lift(mu_m.mul(&mu_e.scale_rows(&aut_q)))?;
    check_inverse(c, &mu, "factorization formula")?;
    Ok(mu)
}

fn first_difference(x: &QMat, y: &QMat) -> (usize, usize) {
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if x.get(i, j) != y.get(i, j) {
                return (i, j);
            }
        }
    }
    (0, 0)
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// Solutions of `ζ k = 1`.
pub fn weighting(c: &FinCat) -> AffineSolutionSet {
    zeta(c).solve_affine(&ones(c.object_count())).expect("square system")
}

/// Solutions of `kᵀ ζ = 1ᵀ`.
pub fn coweighting(c: &FinCat) -> AffineSolutionSet {
    zeta(c).transpose().solve_affine(&ones(c.object_count())).expect("square system")
}

pub fn is_weighting(c: &FinCat, k: &[Rational]) -> bool {
    k.len() == c.object_count() && zeta(c).mul_vec(k).iter().all(|x| x.is_one())
}

pub fn is_coweighting(c: &FinCat, k: &[Rational]) -> bool {
    k.len() == c.object_count() && zeta(c).transpose().mul_vec(k).iter().all(|x| x.is_one())
}

fn sum(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x)
}

/// `χ = Σ k^a` for a weighting `k`, defined when both a weighting and a
/// coweighting exist.
///
/// The sum is taken on the particular solution; that it is the same for
/// every weighting and coweighting is checked, not assumed: each null-space
/// direction on either side must have coordinate sum zero.
pub fn euler_characteristic(c: &FinCat) -> Result<Rational, MobiusError> {
    let w = weighting(c);
    let cw = coweighting(c);
    let (Some(k), Some(kc)) = (&w.particular, &cw.particular) else {
        return Err(MobiusError::UndefinedEuler {
            no_weighting: !w.is_solvable(),
            no_coweighting: !cw.is_solvable(),
        });
    };
    for (side, basis) in [("weighting", &w.nullspace_basis), ("coweighting", &cw.nullspace_basis)] {
        if basis.iter().any(|v| !sum(v).is_zero()) {
            return Err(MobiusError::Inconsistent(format!("{side} sum varies along the solution family")));
        }
    }
    let (s, sc) = (sum(k), sum(kc));
    if s != sc {
        return Err(MobiusError::Inconsistent(format!("weighting sum {s} differs from coweighting sum {sc}")));
    }
    Ok(s)
}

/// Convenience wrapper: `None` when χ is undefined.
pub fn chi(c: &FinCat) -> Option<Rational> {
    euler_characteristic(c).ok()
}

/// Alternating count of nondegenerate paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveEuler {
    /// `counts[n]` is the number of nondegenerate `n`-paths.
    pub counts: Vec<BigInt>,
    pub chi: BigInt,
}

fn require_endo_free(c: &FinCat) -> Result<(), MobiusError> {
    if let Some(f) = c.iso_between_distinct() {
        return Err(MobiusError::PreconditionFailed(format!(
            "not skeletal: {} is an isomorphism",
            c.describe_arrow(f)
        )));
    }
    if let Some(a) = (0..c.object_count()).find(|&a| c.hom(a, a).len() != 1) {
        let f = *c.hom(a, a).iter().find(|&&f| !c.is_identity(f)).expect("non-identity endo");
        return Err(MobiusError::PreconditionFailed(format!(
            "{} is an endomorphism other than the identity",
            c.describe_arrow(f)
        )));
    }
    Ok(())
}

/// Number of strings of `n` composable non-identity arrows, summed with
/// alternating signs. Requires a skeletal category whose only
/// endomorphisms are identities, so that every string is finite.
pub fn nerve_euler(c: &FinCat) -> Result<NerveEuler, MobiusError> {
    require_endo_free(c)?;
    let n = c.object_count();
    // v[a] = number of nondegenerate paths of the current length starting at a
    let mut v: Vec<BigInt> = vec![BigInt::one(); n];
    let mut counts: Vec<BigInt> = Vec::new();
    while v.iter().any(|x| !x.is_zero()) {
        counts.push(v.iter().sum());
        v = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a)
                    .map(|b| BigInt::from(c.hom(a, b).len()) * &v[b])
                    .sum()
            })
            .collect();
        if counts.len() > n + 1 {
            return Err(MobiusError::Inconsistent("path counts do not terminate".into()));
        }
    }
    let chi = counts
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x })
        .sum();
    Ok(NerveEuler { counts, chi })
}

/// χ of the free category on a circuit-free graph, checked against
/// `|vertices| - |edges|` and against `μ = δ - ζ_G`.
pub fn euler_of_graph(g: &DirectedGraph) -> Result<Rational, MobiusError> {
    let c = free_category(g)?;
    let chi = euler_characteristic(&c)?;
    let expected = int(g.vertices().len() as i64 - g.edges().len() as i64);
    if chi != expected {
        return Err(MobiusError::Inconsistent(format!("chi {chi} differs from |G0| - |G1| = {expected}")));
    }
    let mu = mobius_matrix(&c)?;
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let want = int(i64::from(a == b) - g.edge_count(a, b) as i64);
            if *mu.get(a, b) != want {
                return Err(MobiusError::Inconsistent(format!(
                    "mu({}, {}) is not delta - zeta_G",
                    c.objects()[a],
                    c.objects()[b]
                )));
            }
        }
    }
    Ok(chi)
}

/// Checks that `f: c -> d` is full, faithful and essentially surjective.
pub fn check_equivalence(c: &FinCat, d: &FinCat, f: &FunctorMap) -> Result<(), MobiusError> {
    f.check(c, d)?;
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let mut images: Vec<usize> = c.hom(a, b).iter().map(|&h| f.arrows[h]).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != c.hom(a, b).len() {
                return Err(MobiusError::NotAnEquivalence(format!(
                    "not faithful on {} -> {}",
                    c.objects()[a],
                    c.objects()[b]
                )));
            }
            if images.len() != d.hom(f.objects[a], f.objects[b]).len() {
                return Err(MobiusError::NotAnEquivalence(format!(
                    "not full on {} -> {}",
                    c.objects()[a],
                    c.objects()[b]
                )));
            }
        }
    }
    let classes = d.iso_classes();
    for y in 0..d.object_count() {
        if !f.objects.iter().any(|&x| classes[x] == classes[y]) {
            return Err(MobiusError::NotAnEquivalence(format!(
                "{} is not isomorphic to any object in the image",
                d.objects()[y]
            )));
        }
    }
    Ok(())
}

fn class_sizes(c: &FinCat) -> (Vec<usize>, Vec<usize>) {
    let classes = c.iso_classes();
    let mut size = vec![0; classes.iter().max().map_or(0, |m| m + 1)];
    for &k in &classes {
        size[k] += 1;
    }
    (classes, size)
}

/// Pulls a weighting on `d` back along an equivalence `f: c -> d`.
///
/// `k^a = (1/C_a) Σ_{y ≅ Fa} l^y`, where `C_x` counts the objects isomorphic
/// to `x`. When `l` is constant on isomorphism classes this is
/// `(C_{Fa}/C_a) l^{Fa}`; averaging over the class keeps the result a
/// weighting for every `l`.
pub fn transport_weighting(c: &FinCat, d: &FinCat, f: &FunctorMap, l: &[Rational]) -> Result<Vec<Rational>, MobiusError> {
    check_equivalence(c, d, f)?;
    if !is_weighting(d, l) {
        return Err(MobiusError::NotAWeighting);
    }
    let (c_class, c_size) = class_sizes(c);
    let (d_class, _) = class_sizes(d);
    let k: Vec<Rational> = (0..c.object_count())
        .map(|a| {
            let target = d_class[f.objects[a]];
            let total = (0..d.object_count())
                .filter(|&y| d_class[y] == target)
                .fold(Rational::zero(), |acc, y| acc + &l[y]);
            total / int(c_size[c_class[a]] as i64)
        })
        .collect();
    if !is_weighting(c, &k) {
        return Err(MobiusError::Inconsistent("transported vector is not a weighting".into()));
    }
    Ok(k)
}

/// Outcome of checking `Σ_{a': Fa'=b} μ(a,a') = Σ_{b': Gb'=a} μ(b',b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisReport {
    pub pairs_checked: usize,
    /// `(a, b, left side, right side)` for every failing pair.
    pub violations: Vec<(String, String, Rational, Rational)>,
}

/// Checks the Möbius identity for a Galois connection `F ⊣ G` between
/// posets, given by object maps. Adjointness and monotonicity are verified
/// exhaustively first.
pub fn galois_identity_check(a: &FinCat, b: &FinCat, f: &[usize], g: &[usize]) -> Result<GaloisReport, MobiusError> {
    for (c, label) in [(a, "A"), (b, "B")] {
        if !c.is_poset() {
            return Err(MobiusError::PreconditionFailed(format!("{label} is not a poset")));
        }
    }
    if f.len() != a.object_count() || g.len() != b.object_count() {
        return Err(MobiusError::PreconditionFailed("object maps do not cover the posets".into()));
    }
    FunctorMap::from_monotone(a, b, f)?;
    FunctorMap::from_monotone(b, a, g)?;
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            if b.hom(f[x], y).is_empty() != a.hom(x, g[y]).is_empty() {
                return Err(MobiusError::NotAdjoint {
                    a: a.objects()[x].clone(),
                    b: b.objects()[y].clone(),
                });
            }
        }
    }
    let mu_a = mobius_matrix(a)?;
    let mu_b = mobius_matrix(b)?;
    let mut report = GaloisReport {
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            let left = (0..a.object_count())
                .filter(|&x2| f[x2] == y)
                .fold(Rational::zero(), |acc, x2| acc + mu_a.get(x, x2));
            let right = (0..b.object_count())
                .filter(|&y2| g[y2] == x)
                .fold(Rational::zero(), |acc, y2| acc + mu_b.get(y2, y));
            report.pairs_checked += 1;
            if left != right {
                report
                    .violations
                    .push((a.objects()[x].clone(), b.objects()[y].clone(), left, right));
            }
        }
    }
    Ok(report)
}

/// The arrow-level Möbius function: the inverse of the constant function 1
/// under `(θφ)(f) = Σ_{hg=f} θ(g) φ(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CllMobius {
    /// `values[f]` for each arrow in declaration order.
    pub values: Vec<Rational>,
    /// `Σ_{f ∈ C(a,b)} μ(f)`, indexed by objects.
    pub aggregated: QMat,
}

/// Solves `Σ_{hg=f} μ(g) = [f is an identity]` and checks the other side,
/// `Σ_{hg=f} μ(h) = [f is an identity]`, plus agreement with the object-level
/// Möbius function whenever that exists.
pub fn cll_mobius(c: &FinCat) -> Result<CllMobius, MobiusError> {
    let m = c.arrow_count();
    let ids: Vec<String> = c.arrows().iter().map(|a| a.id.clone()).collect();
    // left[f][g] = #{h : h∘g = f}, right[f][h] = #{g : h∘g = f}
    let mut left = QMat::zeros(ids.clone(), ids.clone());
    let mut right = QMat::zeros(ids.clone(), ids);
    for g in 0..m {
        for &h in c.outgoing(c.target(g)) {
            let f = c.compose(h, g).expect("composable");
            let v = left.get(f, g) + Rational::one();
            left.set(f, g, v);
            let v = right.get(f, h) + Rational::one();
            right.set(f, h, v);
        }
    }
    let unit: Vec<Rational> = (0..m).map(|f| if c.is_identity(f) { Rational::one() } else { Rational::zero() }).collect();
    let sol = left.solve_affine(&unit).expect("square system");
    let values = match (sol.kind(), sol.particular) {
        (SolutionKind::Unique, Some(p)) => p,
        _ => {
            return Err(MobiusError::NotInvertible {
                rank: left.rank(),
                size: m,
            })
        }
    };
    if right.mul_vec(&values) != unit {
        return Err(MobiusError::Inconsistent("arrow-level inverse is one-sided".into()));
    }
    let n = c.object_count();
    let mut aggregated = QMat::zeros(labels(c), labels(c));
    for (f, v) in values.iter().enumerate() {
        let (a, b) = (c.source(f), c.target(f));
        let s = aggregated.get(a, b) + v;
        aggregated.set(a, b, s);
    }
    match mobius_matrix(c) {
        Ok(mu) => {
            if mu != aggregated {
                return Err(MobiusError::Inconsistent("arrow-level values do not sum to the Möbius matrix".into()));
            }
        }
        Err(MobiusError::NoMobiusInversion { .. }) => {
            return Err(MobiusError::Inconsistent(format!(
                "arrow-level inverse exists but the {n}-object zeta matrix is singular"
            )))
        }
        Err(e) => return Err(e),
    }
    Ok(CllMobius { values, aggregated })
}

/// Möbius function of a collage assembled blockwise from those of `B` and
/// `A`: the diagonal blocks are `μ_B`, `μ_A`, the lower block is zero and
/// `μ(b, a) = -Σ μ_B(b, b') |M(b', a')| μ_A(a', a)`.
pub fn collage_mobius(p: &Profunctor) -> Result<QMat, MobiusError> {
    let (b, a) = (p.left_category(), p.right_category());
    let mu_b = mobius_matrix(b)?;
    let mu_a = mobius_matrix(a)?;
    let card = p.cardinalities();
    let (nb, na) = (b.object_count(), a.object_count());
    let m = QMat::from_rows(
        labels(b),
        labels(a),
        card.iter().map(|row| row.iter().map(|&k| int(k as i64)).collect()).collect(),
    );
    let lift = |x: Result<QMat, LinalgError>| x.map_err(|e| MobiusError::Inconsistent(e.to_string()));
    let cross = lift(lift(mu_b.mul(&m))?.mul(&mu_a))?;
    let c = collage(p)?;
    let mut out = QMat::zeros(labels(&c), labels(&c));
    for i in 0..nb {
        for j in 0..nb {
            out.set(i, j, mu_b.get(i, j).clone());
        }
        for j in 0..na {
            out.set(i, nb + j, -cross.get(i, j).clone());
        }
    }
    for i in 0..na {
        for j in 0..na {
            out.set(nb + i, nb + j, mu_a.get(i, j).clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::exact::ratio;

    #[test]
    fn fin_sets_mu_one_two() {
        let c = builders::fin_sets(3);
        let mu = mobius_matrix(&c).unwrap();
        assert_eq!(mu.entry("1", "2"), Some(&ratio(-5, 2)));
        let (e, m) = epi_mono_classes(&c);
        assert_eq!(mobius_by_factorization(&c, &e, &m).unwrap(), mu);
    }

    #[test]
    fn groups_and_groupoids() {
        for n in 1..6 {
            let g = builders::cyclic_group(n);
            assert_eq!(mobius_matrix(&g).unwrap().get(0, 0), &ratio(1, n as i64));
            assert_eq!(mobius_by_paths(&g).unwrap().get(0, 0), &ratio(1, n as i64));
        }
        assert!(matches!(
            mobius_matrix(&builders::codiscrete(2)),
            Err(MobiusError::NoMobiusInversion { rank: 1, size: 2 })
        ));
    }

    #[test]
    fn paths_precondition() {
        assert!(matches!(
            mobius_by_paths(&builders::idempotent_monoid()),
            Err(MobiusError::PreconditionFailed(_))
        ));
        assert!(matches!(
            mobius_by_paths(&builders::codiscrete(2)),
            Err(MobiusError::PreconditionFailed(_))
        ));
        let mu = mobius_by_paths(&builders::chain(2)).unwrap();
        assert_eq!(mu, QMat::from_rows(labels(&builders::chain(2)), labels(&builders::chain(2)), vec![
            vec![int(1), int(-1)],
            vec![int(0), int(1)]
        ]));
    }

    #[test]
    fn weightings() {
        let l = builders::pushout_shape();
        assert_eq!(weighting(&l).particular, Some(vec![int(-1), int(1), int(1)]));
        assert_eq!(weighting(&builders::no_weighting_example()).kind(), SolutionKind::None);
        assert_eq!(weighting(&builders::codiscrete(2)).kind(), SolutionKind::Family);
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_characteristic(&builders::idempotent_monoid()), Ok(ratio(1, 2)));
        assert_eq!(euler_characteristic(&builders::split_epi_category()), Ok(int(1)));
        assert_eq!(euler_characteristic(&builders::codiscrete(3)), Ok(int(1)));
        assert!(matches!(
            euler_characteristic(&builders::no_weighting_example()),
            Err(MobiusError::UndefinedEuler { no_weighting: true, .. })
        ));
    }

    #[test]
    fn nerve_of_subsets() {
        let r = nerve_euler(&builders::subsets_poset(2)).unwrap();
        assert_eq!(r.counts, vec![BigInt::from(3), BigInt::from(2)]);
        assert_eq!(r.chi, BigInt::from(1));
        assert!(nerve_euler(&builders::cyclic_group(2)).is_err());
    }

    #[test]
    fn graph_formula() {
        let g = DirectedGraph::from_pairs("g", 4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]);
        assert_eq!(euler_of_graph(&g), Ok(int(-1)));
    }

    #[test]
    fn transport_on_groupoid() {
        let c = builders::codiscrete(2);
        let d = builders::discrete(1);
        let f = FunctorMap::to_terminal(&c);
        assert_eq!(transport_weighting(&c, &d, &f, &[int(1)]), Ok(vec![ratio(1, 2), ratio(1, 2)]));
        // a weighting that is not constant on an iso class still transports
        let g = FunctorMap { objects: vec![0], arrows: vec![0] };
        assert_eq!(transport_weighting(&d, &c, &g, &[int(1), int(0)]), Ok(vec![int(1)]));
    }

    #[test]
    fn cll_small_cases() {
        let r = cll_mobius(&builders::chain(2)).unwrap();
        assert_eq!(r.values, vec![int(1), int(-1), int(1)]);
        assert!(matches!(cll_mobius(&builders::cyclic_group(2)), Err(MobiusError::NotInvertible { .. })));
    }

    #[test]
    fn collage_blocks_match_inversion() {
        let b = builders::chain(2);
        let a = builders::cyclic_group(2);
        let p = Profunctor::constant(&b, &a, 2);
        assert_eq!(collage_mobius(&p).unwrap(), mobius_matrix(&collage(&p).unwrap()).unwrap());
    }
}
