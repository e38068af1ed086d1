//! `eulercat`: Möbius functions, weightings and Euler characteristics of
//! finite categories from the command line.
//!
//! Exit codes: 0 on success, 1 when the mathematics gives a negative answer
//! (a `reason: CODE` line goes to stdout), 2 when the input is broken.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use eulercat_core::builders::{self, CATEGORIES, FUNCTORS};
use eulercat_core::category::{
    self as cat, collage_capped, free_category_capped, opposite, product_capped, structural_profile, CategoryError,
    FinCat, DEFAULT_ARROW_CAP,
};
use eulercat_core::exact::{parse_rational, render, AffineSolutionSet, QMat, Rational, SolutionKind};
use eulercat_core::format::{self, FormatError};
use eulercat_core::functors::{self as fun, CatFunctor, FunctorError, SetFunctor};
use eulercat_core::lefschetz::{self as lef, Endofunctor};
use eulercat_core::mobius::{self as mob, MobiusError};
use eulercat_core::verify;

#[derive(Debug, Parser)]
#[command(name = "eulercat", version, about = "Exact Möbius inversion and Euler characteristics of finite categories")]
struct Cli {
    /// Emit a structured JSON rendering instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Arrow cap for constructions (product, collage, free-cat).
    #[arg(long, global = true, default_value_t = DEFAULT_ARROW_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the category laws and report the size.
    Validate { file: String },
    /// Structural flags: skeletal, circuit-free, Cauchy-complete, automorphism orders.
    Profile { file: String },
    /// Matrix of hom-set cardinalities.
    Zeta { file: String },
    /// Möbius function by exact matrix inversion.
    Mobius { file: String },
    /// Möbius function by alternating path sums.
    MobiusPaths { file: String },
    /// Möbius function through a factorization system (default: epis, monos).
    MobiusFs {
        file: String,
        /// Comma-separated arrow ids of the left class.
        #[arg(long, value_delimiter = ',', requires = "m")]
        e: Option<Vec<String>>,
        /// Comma-separated arrow ids of the right class.
        #[arg(long, value_delimiter = ',', requires = "e")]
        m: Option<Vec<String>>,
    },
    /// Solution set of the weighting equations.
    Weighting { file: String },
    /// Solution set of the coweighting equations.
    Coweighting { file: String },
    /// Euler characteristic.
    Euler { file: String },
    /// Alternating count of nondegenerate paths.
    NerveEuler { file: String },
    /// Euler characteristic of the free category on a circuit-free graph.
    GraphEuler { file: String },
    /// Category of elements of a Set-valued (or, with --cat, Cat-valued) functor.
    Elements {
        file: String,
        #[arg(long)]
        cat: bool,
    },
    /// Colimit of a Set-valued functor as connected components.
    Colim { file: String },
    /// Weighted element count compared with the colimit cardinality.
    ColimCard {
        file: String,
        /// Comma-separated weighting; defaults to a solution of the weighting equations.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weighting: Option<Vec<String>>,
    },
    /// Check that a Set-valued functor is nondegenerate.
    Nondegen { file: String },
    /// Decompose a functor as a sum of representables.
    Fr { file: String },
    /// Coefficients r(a) with |Xb| = Σ r(a) ζ(a, b).
    Repcoeffs { file: String },
    /// Derangement numbers from the symmetric action on injections.
    Derangements { n: i64 },
    /// Tensor product Y ⊗ X of functors on A^op and A.
    Tensor { y: String, x: String },
    /// Σ k^a χ(Xa), checked against χ of the category of elements.
    ChiElements {
        file: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weighting: Option<Vec<String>>,
    },
    /// Strict fixed-point category of an endofunctor.
    Fix { file: String },
    /// Lefschetz number of an endofunctor.
    Lefschetz {
        file: String,
        /// Also compute the path count and the dialgebra Euler characteristics.
        #[arg(long)]
        report: bool,
    },
    /// Category of algebras of an endofunctor.
    Alg { file: String },
    /// Category of coalgebras of an endofunctor.
    Coalg { file: String },
    /// Opposite category.
    Op { file: String },
    /// Disjoint union of categories.
    Sum {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Cartesian product of categories.
    Product {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Interval category between two objects.
    Interval { file: String, a: String, c: String },
    /// Adjoin an initial and/or terminal object (default: both).
    Adjoin {
        file: String,
        #[arg(long)]
        initial: bool,
        #[arg(long)]
        terminal: bool,
    },
    /// Collage of a profunctor, with its blockwise Möbius function checked.
    Collage { file: String },
    /// Free category on a circuit-free graph.
    FreeCat { file: String },
    /// Arrow-level Möbius function.
    Cll { file: String },
    /// Check the Möbius identity for a Galois connection.
    GaloisCheck { file: String },
    /// Emit a catalog category (or, with --functor, a catalog functor).
    Build {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        #[arg(long)]
        functor: bool,
        /// List the catalog.
        #[arg(long)]
        list: bool,
    },
    /// Run the invariant suite over the catalog and its closure.
    Verify,
}

/// Why a command did not produce a result.
#[derive(Debug)]
enum Failure {
    /// The mathematics says no; exit 1.
    Negative { reason: &'static str, message: String },
    /// The input is broken; exit 2.
    Input(String),
}

fn negative(reason: &'static str, message: impl Into<String>) -> Failure {
    Failure::Negative {
        reason,
        message: message.into(),
    }
}

impl From<MobiusError> for Failure {
    fn from(e: MobiusError) -> Failure {
        let reason = match &e {
            MobiusError::NoMobiusInversion { .. } => "NO_MOBIUS_INVERSION",
            MobiusError::PreconditionFailed(_) => "PRECONDITION_FAILED",
            MobiusError::NotAFactorizationSystem(_) => "NOT_A_FACTORIZATION_SYSTEM",
            MobiusError::SubcategoryNotClosed(_) => "SUBCATEGORY_NOT_CLOSED",
            MobiusError::UndefinedEuler { .. } => "UNDEFINED_EULER",
            MobiusError::NotAnEquivalence(_) => "NOT_AN_EQUIVALENCE",
            MobiusError::NotAWeighting => "NOT_A_WEIGHTING",
            MobiusError::NotAdjoint { .. } => "NOT_ADJOINT",
            MobiusError::NotInvertible { .. } => "NOT_INVERTIBLE",
            MobiusError::Inconsistent(_) => "INCONSISTENT",
            MobiusError::Category(c) => return c.clone().into(),
        };
        negative(reason, e.to_string())
    }
}

impl From<CategoryError> for Failure {
    fn from(e: CategoryError) -> Failure {
        match &e {
            CategoryError::SizeOverflow { .. } => negative("SIZE_OVERFLOW", e.to_string()),
            CategoryError::CyclicGraph { .. } => negative("CYCLIC_GRAPH", e.to_string()),
            CategoryError::SubcategoryNotClosed(_) => negative("SUBCATEGORY_NOT_CLOSED", e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<FunctorError> for Failure {
    fn from(e: FunctorError) -> Failure {
        let reason = match &e {
            FunctorError::DomainNotCauchyComplete(_) => "NOT_CAUCHY_COMPLETE",
            FunctorError::NotFamiliallyRepresentable { .. } => "DEGENERATE",
            FunctorError::UndefinedChi(_) => "UNDEFINED_EULER",
            FunctorError::NotAWeighting => "NOT_A_WEIGHTING",
            FunctorError::TheoremViolated(_) => "THEOREM_VIOLATED",
            FunctorError::Category(c) => return c.clone().into(),
            FunctorError::Mobius(m) => return m.clone().into(),
            FunctorError::NotFunctorial(_) | FunctorError::DomainMismatch => return Failure::Input(e.to_string()),
        };
        negative(reason, e.to_string())
    }
}

/// A rendered result: text for humans, JSON for scripts.
struct Output {
    text: String,
    json: Value,
}

/// Input text together with the directory that nested references resolve
/// against.
struct Source {
    label: String,
    text: String,
    dir: PathBuf,
}

impl Source {
    fn read(path: &str) -> Result<Source, Failure> {
        if path == "-" {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("<stdin>: {e}")))?;
            return Ok(Source {
                label: "<stdin>".into(),
                text,
                dir: PathBuf::from("."),
            });
        }
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        let dir = Path::new(path).parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Source {
            label: path.into(),
            text,
            dir,
        })
    }

    fn fail(&self, e: FormatError) -> Failure {
        match e {
            FormatError::Syntax { line, message } => Failure::Input(format!("{}:{line}: {message}", self.label)),
            FormatError::Functor(f) => match Failure::from(f) {
                Failure::Input(m) => Failure::Input(format!("{}: {m}", self.label)),
                other => other,
            },
            other => Failure::Input(format!("{}: {other}", self.label)),
        }
    }

    fn with_loader<T>(&self, parse: impl FnOnce(&str, &mut format::Loader<'_>) -> Result<T, FormatError>) -> Result<T, Failure> {
        let dir = self.dir.clone();
        let mut loader = move |p: &str| fs::read_to_string(dir.join(p)).map_err(|e| e.to_string());
        parse(&self.text, &mut loader).map_err(|e| self.fail(e))
    }
}

fn load_category(path: &str) -> Result<FinCat, Failure> {
    let src = Source::read(path)?;
    format::parse_category(&src.text).map_err(|e| src.fail(e))
}

fn load_set_functor(path: &str) -> Result<SetFunctor, Failure> {
    Source::read(path)?.with_loader(format::parse_set_functor)
}

fn load_cat_functor(path: &str) -> Result<CatFunctor, Failure> {
    Source::read(path)?.with_loader(format::parse_cat_functor)
}

fn load_endofunctor(path: &str) -> Result<Endofunctor, Failure> {
    Source::read(path)?.with_loader(format::parse_endofunctor)
}

fn object(c: &FinCat, id: &str) -> Result<usize, Failure> {
    c.object_index(id)
        .ok_or_else(|| Failure::Input(format!("unknown object {id:?} in {}", c.name())))
}

fn arrows(c: &FinCat, ids: &[String]) -> Result<Vec<usize>, Failure> {
    ids.iter()
        .map(|id| {
            c.arrow_index(id.trim())
                .ok_or_else(|| Failure::Input(format!("unknown arrow {id:?} in {}", c.name())))
        })
        .collect()
}

fn rationals(values: &[String]) -> Result<Vec<Rational>, Failure> {
    values
        .iter()
        .map(|v| parse_rational(v.trim()).ok_or_else(|| Failure::Input(format!("not a rational number: {v:?}"))))
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(render).collect()
}

fn matrix_json(m: &QMat) -> Value {
    let entries: Vec<Vec<String>> = (0..m.rows()).map(|i| strings(m.row(i))).collect();
    json!({ "rows": m.row_labels(), "cols": m.col_labels(), "entries": entries })
}

fn matrix(m: &QMat) -> Output {
    Output {
        text: m.to_string(),
        json: matrix_json(m),
    }
}

fn category_json(c: &FinCat) -> Value {
    let arrows: Vec<Value> = c
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            json!({
                "id": a.id,
                "source": c.objects()[a.source],
                "target": c.objects()[a.target],
                "identity": c.is_identity(i),
            })
        })
        .collect();
    let composites: Vec<Value> = c
        .nontrivial_composites()
        .map(|(g, f, h)| json!([c.arrows()[g].id, c.arrows()[f].id, c.arrows()[h].id]))
        .collect();
    json!({ "name": c.name(), "objects": c.objects(), "arrows": arrows, "composites": composites })
}

fn category(c: &FinCat) -> Output {
    Output {
        text: format::write_category(c),
        json: category_json(c),
    }
}

/// Object-labelled vector, one `label: value` line each.
fn labelled_lines(labels: &[String], values: &[String]) -> String {
    let w = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    labels
        .iter()
        .zip(values)
        .map(|(l, v)| format!("{l:<w$}  {v}\n"))
        .collect()
}

fn vector_json(labels: &[String], values: &[Rational]) -> Value {
    labels
        .iter()
        .zip(values)
        .map(|(l, v)| (l.clone(), Value::String(render(v))))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn solution_set(c: &FinCat, s: &AffineSolutionSet, what: &str, reason: &'static str) -> Result<Output, Failure> {
    let labels = c.objects();
    let Some(particular) = &s.particular else {
        return Err(negative(reason, format!("{} admits no {what}", c.name())));
    };
    let mut text = match s.kind() {
        SolutionKind::Unique => format!("unique {what}\n"),
        _ => format!("family of {what}s, dimension {}\nparticular:\n", s.nullspace_basis.len()),
    };
    text += &labelled_lines(labels, &strings(particular));
    for (i, v) in s.nullspace_basis.iter().enumerate() {
        text += &format!("null space {}:\n", i + 1);
        text += &labelled_lines(labels, &strings(v));
    }
    let basis: Vec<Value> = s.nullspace_basis.iter().map(|v| vector_json(labels, v)).collect();
    let kind = if s.kind() == SolutionKind::Unique { "unique" } else { "family" };
    Ok(Output {
        text,
        json: json!({ "kind": kind, "particular": vector_json(labels, particular), "nullspace": basis }),
    })
}

fn scalar(r: &Rational) -> Output {
    Output {
        text: format!("{}\n", render(r)),
        json: json!({ "value": render(r) }),
    }
}

/// The supplied weighting, or a solution of the weighting equations.
fn weighting_or_default(c: &FinCat, given: Option<Vec<String>>) -> Result<Vec<Rational>, Failure> {
    match given {
        Some(v) => {
            let k = rationals(&v)?;
            if k.len() != c.object_count() {
                return Err(Failure::Input(format!(
                    "weighting has {} entries but {} has {} objects",
                    k.len(),
                    c.name(),
                    c.object_count()
                )));
            }
            Ok(k)
        }
        None => mob::weighting(c)
            .particular
            .ok_or_else(|| negative("NO_WEIGHTING", format!("{} admits no weighting", c.name()))),
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let cap = cli.cap;
    match cli.command {
        Command::Validate { file } => {
            let c = load_category(&file)?;
            Ok(Output {
                text: format!("valid: {} ({} objects, {} arrows)\n", c.name(), c.object_count(), c.arrow_count()),
                json: json!({ "valid": true, "name": c.name(), "objects": c.object_count(), "arrows": c.arrow_count() }),
            })
        }
        Command::Profile { file } => {
            let c = load_category(&file)?;
            let p = structural_profile(&c);
            let auts: Vec<String> = p.aut_orders.iter().map(usize::to_string).collect();
            let mut text = format!(
                "skeletal: {}\nidempotents are identities: {}\nendomorphisms are automorphisms: {}\ncircuit-free: {}\nCauchy-complete: {}\nautomorphism orders:\n",
                yes_no(p.is_skeletal),
                yes_no(p.idempotents_are_identities),
                yes_no(p.endos_are_autos),
                yes_no(p.is_circuit_free),
                yes_no(p.is_cauchy_complete),
            );
            text += &labelled_lines(c.objects(), &auts);
            let orders: serde_json::Map<String, Value> =
                c.objects().iter().cloned().zip(p.aut_orders.iter().map(|&n| json!(n))).collect();
            Ok(Output {
                text,
                json: json!({
                    "skeletal": p.is_skeletal,
                    "idempotents_are_identities": p.idempotents_are_identities,
                    "endos_are_autos": p.endos_are_autos,
                    "circuit_free": p.is_circuit_free,
                    "cauchy_complete": p.is_cauchy_complete,
                    "aut_orders": orders,
                }),
            })
        }
        Command::Zeta { file } => Ok(matrix(&mob::zeta(&load_category(&file)?))),
        Command::Mobius { file } => Ok(matrix(&mob::mobius_matrix(&load_category(&file)?)?)),
        Command::MobiusPaths { file } => Ok(matrix(&mob::mobius_by_paths(&load_category(&file)?)?)),
        Command::MobiusFs { file, e, m } => {
            let c = load_category(&file)?;
            let (e, m) = match (e, m) {
                (Some(e), Some(m)) => (arrows(&c, &e)?, arrows(&c, &m)?),
                _ => mob::epi_mono_classes(&c),
            };
            Ok(matrix(&mob::mobius_by_factorization(&c, &e, &m)?))
        }
        Command::Weighting { file } => {
            let c = load_category(&file)?;
            solution_set(&c, &mob::weighting(&c), "weighting", "NO_WEIGHTING")
        }
        Command::Coweighting { file } => {
            let c = load_category(&file)?;
            solution_set(&c, &mob::coweighting(&c), "coweighting", "NO_COWEIGHTING")
        }
        Command::Euler { file } => Ok(scalar(&mob::euler_characteristic(&load_category(&file)?)?)),
        Command::NerveEuler { file } => {
            let n = mob::nerve_euler(&load_category(&file)?)?;
            let mut text: String = n.counts.iter().enumerate().map(|(i, x)| format!("paths of length {i}: {x}\n")).collect();
            text += &format!("chi: {}\n", n.chi);
            let counts: Vec<String> = n.counts.iter().map(ToString::to_string).collect();
            Ok(Output {
                text,
                json: json!({ "counts": counts, "chi": n.chi.to_string() }),
            })
        }
        Command::GraphEuler { file } => {
            let src = Source::read(&file)?;
            let g = format::parse_graph(&src.text).map_err(|e| src.fail(e))?;
            Ok(scalar(&mob::euler_of_graph(&g)?))
        }
        Command::Elements { file, cat } => {
            let elt = if cat {
                fun::elements_of_cat(&load_cat_functor(&file)?)?
            } else {
                fun::elements(&load_set_functor(&file)?)?
            };
            Ok(category(&elt.category))
        }
        Command::Colim { file } => {
            let x = load_set_functor(&file)?;
            let colim = fun::colimit(&x);
            let c = x.domain();
            let member = |&(a, i): &(usize, usize)| format!("({}|{})", c.objects()[a], x.set(a)[i]);
            let mut text = format!("{}\n", colim.cardinality());
            let mut classes = Vec::new();
            for class in &colim.classes {
                let members: Vec<String> = class.members.iter().map(member).collect();
                text += &format!("{}: {}\n", class.name, members.join(" "));
                classes.push(json!({ "name": class.name, "members": members }));
            }
            Ok(Output {
                text,
                json: json!({ "cardinality": colim.cardinality(), "classes": classes }),
            })
        }
        Command::ColimCard { file, weighting } => {
            let x = load_set_functor(&file)?;
            let k = weighting_or_default(x.domain(), weighting)?;
            let w = fun::colimit_cardinality_via_weighting(&x, &k)?;
            Ok(Output {
                text: format!(
                    "weighted count: {}\ncomponents: {}\ntheorem applies: {}\n",
                    render(&w.weighted),
                    w.components,
                    yes_no(w.theorem_applies)
                ),
                json: json!({
                    "weighted": render(&w.weighted),
                    "components": w.components,
                    "theorem_applies": w.theorem_applies,
                }),
            })
        }
        Command::Nondegen { file } => {
            let x = load_set_functor(&file)?;
            match fun::degeneracy_witness(&x) {
                None => Ok(Output {
                    text: "nondegenerate\n".into(),
                    json: json!({ "nondegenerate": true }),
                }),
                Some(w) => Err(negative("DEGENERATE", w.to_string())),
            }
        }
        Command::Fr { file } => {
            let x = load_set_functor(&file)?;
            let d = fun::fr_decompose(&x)?;
            let c = x.domain();
            let counts: Vec<String> = d.coefficients.iter().map(usize::to_string).collect();
            let mut text = labelled_lines(c.objects(), &counts);
            let witnesses: Vec<String> = d
                .witnesses
                .iter()
                .map(|&(a, i)| format!("({}|{})", c.objects()[a], x.set(a)[i]))
                .collect();
            text += &format!("generators: {}\n", witnesses.join(" "));
            let coeffs: serde_json::Map<String, Value> =
                c.objects().iter().cloned().zip(d.coefficients.iter().map(|&n| json!(n))).collect();
            Ok(Output {
                text,
                json: json!({ "coefficients": coeffs, "generators": witnesses }),
            })
        }
        Command::Repcoeffs { file } => {
            let x = load_set_functor(&file)?;
            let r = fun::representation_coefficients(&x)?;
            Ok(Output {
                text: labelled_lines(x.domain().objects(), &strings(&r)),
                json: vector_json(x.domain().objects(), &r),
            })
        }
        Command::Derangements { n } => {
            let x = builders::build_functor("symmetric_action", &[n]).map_err(|e| Failure::Input(e.to_string()))?;
            let r = fun::representation_coefficients(&x)?;
            let text = r.iter().enumerate().map(|(i, d)| format!("d_{i} = {}\n", render(d))).collect();
            Ok(Output {
                text,
                json: json!({ "derangements": strings(&r) }),
            })
        }
        Command::Tensor { y, x } => {
            let (y, x) = (load_set_functor(&y)?, load_set_functor(&x)?);
            let t = fun::tensor(&y, &x)?;
            let mut text = format!("{}\n", t.cardinality());
            for class in &t.classes {
                text += &format!("{class}\n");
            }
            Ok(Output {
                text,
                json: json!({ "cardinality": t.cardinality(), "classes": t.classes }),
            })
        }
        Command::ChiElements { file, weighting } => {
            let x = load_cat_functor(&file)?;
            let k = weighting_or_default(x.domain(), weighting)?;
            Ok(scalar(&fun::chi_of_elements(&x, &k)?))
        }
        Command::Fix { file } => Ok(category(&lef::fixed_category(&load_endofunctor(&file)?))),
        Command::Lefschetz { file, report: false } => Ok(scalar(&lef::lefschetz_number(&load_endofunctor(&file)?)?)),
        Command::Lefschetz { file, report: true } => {
            let f = load_endofunctor(&file)?;
            let r = lef::lefschetz_report(&f)?;
            let show = |v: &Option<Rational>| v.as_ref().map_or("undefined".to_string(), render);
            let paths = r.fixed_paths.as_ref().map_or("n/a".to_string(), ToString::to_string);
            Ok(Output {
                text: format!(
                    "lefschetz: {}\nfixed path count: {paths}\nchi(Alg): {}\nchi(Coalg): {}\nconsistent: {}\n",
                    show(&r.lefschetz),
                    show(&r.chi_alg),
                    show(&r.chi_coalg),
                    yes_no(r.consistent())
                ),
                json: json!({
                    "lefschetz": r.lefschetz.as_ref().map(render),
                    "fixed_paths": r.fixed_paths.as_ref().map(ToString::to_string),
                    "chi_alg": r.chi_alg.as_ref().map(render),
                    "chi_coalg": r.chi_coalg.as_ref().map(render),
                    "consistent": r.consistent(),
                }),
            })
        }
        Command::Alg { file } => Ok(category(&lef::algebra_category(&load_endofunctor(&file)?)?)),
        Command::Coalg { file } => Ok(category(&lef::coalgebra_category(&load_endofunctor(&file)?)?)),
        Command::Op { file } => Ok(category(&opposite(&load_category(&file)?))),
        Command::Sum { files } => {
            let cs = files.iter().map(|f| load_category(f)).collect::<Result<Vec<_>, _>>()?;
            Ok(category(&cat::sum(&cs.iter().collect::<Vec<_>>())))
        }
        Command::Product { files } => {
            let cs = files.iter().map(|f| load_category(f)).collect::<Result<Vec<_>, _>>()?;
            Ok(category(&product_capped(&cs.iter().collect::<Vec<_>>(), cap)?))
        }
        Command::Interval { file, a, c: end } => {
            let c = load_category(&file)?;
            let (a, end) = (object(&c, &a)?, object(&c, &end)?);
            Ok(category(&cat::interval(&c, a, end)))
        }
        Command::Adjoin { file, initial, terminal } => {
            let c = load_category(&file)?;
            let (i, t) = if initial || terminal { (initial, terminal) } else { (true, true) };
            Ok(category(&cat::adjoin_bounds(&c, i, t)))
        }
        Command::Collage { file } => {
            let p = Source::read(&file)?.with_loader(format::parse_profunctor)?;
            let c = collage_capped(&p, cap)?;
            // the blockwise formula must agree with direct inversion when both sides exist
            if let (Ok(direct), Ok(blocks)) = (mob::mobius_matrix(&c), mob::collage_mobius(&p)) {
                if direct != blocks {
                    return Err(negative("INCONSISTENT", "blockwise Möbius function differs from direct inversion"));
                }
            }
            Ok(category(&c))
        }
        Command::FreeCat { file } => {
            let src = Source::read(&file)?;
            let g = format::parse_graph(&src.text).map_err(|e| src.fail(e))?;
            Ok(category(&free_category_capped(&g, cap)?))
        }
        Command::Cll { file } => {
            let c = load_category(&file)?;
            let r = mob::cll_mobius(&c)?;
            let ids: Vec<String> = c.arrows().iter().map(|a| a.id.clone()).collect();
            let mut text = labelled_lines(&ids, &strings(&r.values));
            text += "aggregated:\n";
            text += &r.aggregated.to_string();
            Ok(Output {
                text,
                json: json!({ "values": vector_json(&ids, &r.values), "aggregated": matrix_json(&r.aggregated) }),
            })
        }
        Command::GaloisCheck { file } => {
            let d = Source::read(&file)?.with_loader(format::parse_galois)?;
            let r = mob::galois_identity_check(&d.a, &d.b, &d.f, &d.g)?;
            if let Some((a, b, l, rt)) = r.violations.first() {
                return Err(negative(
                    "IDENTITY_VIOLATED",
                    format!(
                        "{} of {} pairs fail, first at ({a}, {b}): {} != {}",
                        r.violations.len(),
                        r.pairs_checked,
                        render(l),
                        render(rt)
                    ),
                ));
            }
            Ok(Output {
                text: format!("pairs checked: {}\nviolations: 0\n", r.pairs_checked),
                json: json!({ "pairs_checked": r.pairs_checked, "violations": 0 }),
            })
        }
        Command::Build { list: true, .. } => {
            let mut text = String::from("categories:\n");
            let mut entries = Vec::new();
            for (kind, catalog) in [("category", CATEGORIES), ("functor", FUNCTORS)] {
                if kind == "functor" {
                    text += "functors (--functor):\n";
                }
                for e in catalog {
                    text += &format!("  {} {}  {}\n", e.name, e.params, e.about);
                    entries.push(json!({ "kind": kind, "name": e.name, "params": e.params, "about": e.about }));
                }
            }
            Ok(Output {
                text,
                json: Value::Array(entries),
            })
        }
        Command::Build {
            name, params, functor, ..
        } => {
            let name = name.unwrap_or_default();
            if functor {
                let x = builders::build_functor(&name, &params).map_err(|e| Failure::Input(e.to_string()))?;
                let sets: serde_json::Map<String, Value> =
                    x.domain().objects().iter().cloned().zip(x.sets().iter().map(|s| json!(s))).collect();
                Ok(Output {
                    text: format::write_set_functor(&x),
                    json: json!({ "domain": category_json(x.domain()), "sets": sets }),
                })
            } else {
                let c = builders::build(&name, &params).map_err(|e| Failure::Input(e.to_string()))?;
                Ok(category(&c))
            }
        }
        Command::Verify => {
            let results = verify::run_suite();
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
            let out = Output {
                text: verify::render_table(&results),
                json: Value::Array(
                    results
                        .iter()
                        .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
                        .collect(),
                ),
            };
            if failed.is_empty() {
                Ok(out)
            } else {
                // the table still goes out so the failing rows are visible
                eprint!("{}", out.text);
                Err(negative("VERIFY_FAILED", format!("failing checks: {}", failed.join(", "))))
            }
        }
    }
}

fn emit(cli_json: bool, output: Option<&Path>, out: &Output) -> io::Result<()> {
    let body = if cli_json {
        let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values always serialize");
        s.push('\n');
        s
    } else {
        out.text.clone()
    };
    match output {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_mode, output) = (cli.json, cli.output.clone());
    match run(cli) {
        Ok(out) => match emit(json_mode, output.as_deref(), &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Negative { reason, message }) => {
            if json_mode {
                println!("{}", json!({ "ok": false, "reason": reason, "message": message }));
            } else {
                println!("reason: {reason}");
                eprintln!("{message}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
