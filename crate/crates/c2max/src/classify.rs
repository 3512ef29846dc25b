//! The Maximal / Galois-Maximal classifier with three independent routes
//! and cross-checking.
//!
//! Routes: the definition route compares the Smith-Thom and
//! Harnack-Krasnov budgets against the fixed subobject; the Borel route
//! reads the barcode of the F2[z]-module (free = Maximal, free plus
//! length-one torsion = Galois-Maximal); the degeneration route tests the
//! E2 page together with a fixed vertex, adding triviality of the action
//! for Maximality. Disagreement between applicable routes on the same space
//! is an internal soundness error, never a property of the input.

use serde::Serialize;

use crate::borel::{barcode, Barcode};
use crate::cohomology::{betti, cohomology_with_action, group_cohomology_dim, GradedC2Module};
use crate::errors::{Error, Result};
use crate::sset::build::fixed_subobject;
use crate::sset::C2SimplicialSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Maximal,
    GaloisMaximalOnly,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Method {
    Definition,
    Borel,
    Degeneration,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct Budgets {
    pub fixed_sum: usize,
    pub hk_sum: usize,
    pub st_sum: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub budgets: Option<Budgets>,
    pub barcode: Option<Barcode>,
    pub degeneration: Option<(bool, Option<usize>)>,
    pub trivial_action: bool,
    pub routes_used: Vec<Method>,
    pub agreement: bool,
}

/// The three budget sums of the two classical inequalities: total fixed-set
/// Betti number, the group-cohomology refinement, and the total Betti
/// number. Only trustworthy on fixed-faithful objects.
pub fn budgets(set: &C2SimplicialSet) -> Result<Budgets> {
    let cwa = cohomology_with_action(set)?;
    budgets_with(set, &cwa)
}

fn budgets_with(set: &C2SimplicialSet, cwa: &GradedC2Module) -> Result<Budgets> {
    if !set.is_fixed_faithful() {
        return Err(Error::NotFixedFaithful(
            "budgets need a trusted fixed subobject".into(),
        ));
    }
    let fixed = fixed_subobject(set)?;
    let fixed_sum = betti(&fixed)?.iter().sum();
    let st_sum = cwa.degrees.iter().map(|d| d.dim).sum();
    let hk_sum = cwa
        .degrees
        .iter()
        .map(|d| group_cohomology_dim(&d.sigma, 1))
        .sum();
    Ok(Budgets {
        fixed_sum,
        hk_sum,
        st_sum,
    })
}

fn definition_verdict(b: &Budgets) -> Verdict {
    if b.fixed_sum == b.st_sum {
        Verdict::Maximal
    } else if b.fixed_sum == b.hk_sum {
        Verdict::GaloisMaximalOnly
    } else {
        Verdict::Neither
    }
}

fn borel_verdict(code: &Barcode) -> Verdict {
    if code.all_infinite() {
        Verdict::Maximal
    } else if code.infinite_or_unit() {
        Verdict::GaloisMaximalOnly
    } else {
        Verdict::Neither
    }
}

fn degeneration_verdict(
    has_fixed_vertex: bool,
    degenerates: bool,
    trivial_action: bool,
) -> Verdict {
    if has_fixed_vertex && degenerates {
        if trivial_action {
            Verdict::Maximal
        } else {
            Verdict::GaloisMaximalOnly
        }
    } else {
        Verdict::Neither
    }
}

fn has_fixed_vertex(set: &C2SimplicialSet) -> bool {
    let d = set.degree(0);
    (0..d.len() as u32).any(|v| d.sigma[v as usize] == v)
}

/// Classifies a complete C2-object by the requested route(s).
///
/// The (reduced) chain data is computed once and shared by every route.
pub fn classify(set: &C2SimplicialSet, method: Method) -> Result<ClassificationReport> {
    crate::borel::require_complete(set)?;
    let dim = set.dim();
    let chain = crate::reduce::reduced_chain_data(set);
    let cwa: GradedC2Module = crate::cohomology::cohomology_with_action_of_chain(&chain, dim);
    let trivial_action = cwa.action_is_trivial();
    let budgets_avail = if set.is_fixed_faithful() {
        Some(budgets_with(set, &cwa)?)
    } else {
        None
    };

    let mut verdicts: Vec<(Method, Verdict)> = Vec::new();
    let mut code = None;
    let mut degeneration = None;

    let want = |m: Method| method == Method::All || method == m;

    if want(Method::Definition) {
        match &budgets_avail {
            Some(b) => verdicts.push((Method::Definition, definition_verdict(b))),
            None => {
                if method == Method::Definition {
                    return Err(Error::NotFixedFaithful(
                        "definition route refused: fixed subobject untrusted (use the Borel route)"
                            .into(),
                    ));
                }
            }
        }
    }
    let module = if want(Method::Borel) || want(Method::Degeneration) {
        Some(crate::borel::borel_module_from_chain(&chain, dim, dim + 2)?)
    } else {
        None
    };
    if want(Method::Borel) {
        let c = barcode(module.as_ref().unwrap());
        verdicts.push((Method::Borel, borel_verdict(&c)));
        code = Some(c);
    }
    if want(Method::Degeneration) {
        let module = module.as_ref().unwrap();
        let page = crate::borel::E2Page::from_module(&cwa);
        let mut d = (true, None);
        for n in 0..=dim + 1 {
            if page.antidiagonal_sum(n) != module.h[n] {
                d = (false, Some(n));
                break;
            }
        }
        verdicts.push((
            Method::Degeneration,
            degeneration_verdict(has_fixed_vertex(set), d.0, trivial_action),
        ));
        degeneration = Some(d);
    }

    let agreement = verdicts.windows(2).all(|w| w[0].1 == w[1].1);
    if !agreement {
        let detail: Vec<String> = verdicts
            .iter()
            .map(|(m, v)| format!("{m:?}={v:?}"))
            .collect();
        return Err(Error::RouteDisagreement(detail.join(", ")));
    }
    let verdict = verdicts
        .first()
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::Contract("no applicable route".into()))?;
    if verdict == Verdict::Maximal {
        debug_assert!(trivial_action, "Maximal forces a trivial action");
    }
    Ok(ClassificationReport {
        verdict,
        budgets: budgets_avail,
        barcode: code,
        degeneration,
        trivial_action,
        routes_used: verdicts.iter().map(|&(m, _)| m).collect(),
        agreement,
    })
}

/// The named corpus of regular, fixed-faithful test spaces with fixed
/// basepoints: spheres, a wedge, products, inductions, and a subdivision.
pub fn corpus() -> Vec<(String, C2SimplicialSet)> {
    use crate::complex::C2Complex;
    use crate::sset::build::{
        additive_induction, multiplicative_induction, product, to_simplicial_set, wedge,
    };
    let conv = |k: &C2Complex| to_simplicial_set(k).unwrap();
    let sphere = |p: usize, q: usize| conv(&C2Complex::rep_sphere(p, q).unwrap());
    let circle = conv(&C2Complex::circle());
    let s2 = conv(&C2Complex::s2());
    let mut out: Vec<(String, C2SimplicialSet)> = Vec::new();
    for (p, q) in [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)] {
        out.push((format!("sphere({p},{q})"), sphere(p, q)));
    }
    out.push((
        "wedge(sphere(1,1),sphere(2,1))".into(),
        wedge(&sphere(1, 1), &sphere(2, 1)).unwrap(),
    ));
    out.push((
        "prod(sphere(1,1),sphere(1,0))".into(),
        product(&sphere(1, 1), &sphere(1, 0)).unwrap(),
    ));
    out.push((
        "prod(sphere(1,1),sphere(1,1))".into(),
        product(&sphere(1, 1), &sphere(1, 1)).unwrap(),
    ));
    out.push(("lind(circle)".into(), additive_induction(&circle).unwrap()));
    out.push(("lind(s2)".into(), additive_induction(&s2).unwrap()));
    out.push((
        "nind(circle)".into(),
        multiplicative_induction(&circle).unwrap(),
    ));
    out.push((
        "sd(sphere(1,1))".into(),
        conv(
            &C2Complex::rep_sphere(1, 1)
                .unwrap()
                .barycentric_subdivision(),
        ),
    ));
    out.push((
        "wedge(circle,sphere(1,1))".into(),
        wedge(&circle, &sphere(1, 1)).unwrap(),
    ));
    out
}
