//! The symmetric-product tower: Steenrod-range stability of the inclusions,
//! Nakaoka-style equivariant splitting, and the main-theorem verifier that
//! classifies every level of the tower over a maximal base.

use std::time::Instant;

use serde::Serialize;

use crate::chain::ChainData;
use crate::classify::{budgets, classify, Method, Verdict};
use crate::cohomology::{
    cohomology_with_action_of_chain, equivariant_section_exists, CochainAnalysis, GradedMap,
};
use crate::errors::{Error, Result};
use crate::f2::F2Matrix;
use crate::par;
use crate::sset::sp::{sp_inclusion, symmetric_product, SpInclusion};
use crate::sset::C2SimplicialSet;

#[derive(Clone, Debug, Serialize)]
pub struct StabilityFailure {
    pub n: usize,
    pub q: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub n_max: usize,
    pub ok: bool,
    pub failures: Vec<StabilityFailure>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitLevel {
    pub n: usize,
    pub split_ok: bool,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub n_max: usize,
    pub ok: bool,
    pub levels: Vec<SplitLevel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerLevel {
    pub n: usize,
    pub verdict: Verdict,
    pub barcode: crate::borel::Barcode,
    pub trivial_action: bool,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub input_verdict: Verdict,
    pub levels: Vec<TowerLevel>,
    /// Every level Galois-Maximal, and Maximal whenever the input is.
    pub ok: bool,
}

/// Cohomology bases of both ends of one tower inclusion together with the
/// induced chain map, on unreduced chains so the map matrices make sense.
struct LevelMaps {
    x: CochainAnalysis,
    y: CochainAnalysis,
    x_chain: ChainData,
    y_chain: ChainData,
    /// Cochain-level restriction maps C^q(sp(n+1)) -> C^q(sp(n)).
    fsharp: Vec<F2Matrix>,
    through: usize,
}

fn safe_top(set: &C2SimplicialSet) -> usize {
    if set.is_complete() {
        set.dim()
    } else {
        set.stored_top().saturating_sub(1)
    }
}

fn level_maps(k: &C2SimplicialSet, n: usize, depth: usize) -> Result<LevelMaps> {
    let inc: SpInclusion = sp_inclusion(k, n, Some(depth))?;
    let x_chain = ChainData::from_sset(&inc.source.set);
    let y_chain = ChainData::from_sset(&inc.target.set);
    let through = safe_top(&inc.source.set).min(safe_top(&inc.target.set));
    let x = CochainAnalysis::from_chain(&x_chain, through);
    let y = CochainAnalysis::from_chain(&y_chain, through);
    let mut fsharp = Vec::with_capacity(through + 1);
    for q in 0..=through {
        // Chain map C_q(x) -> C_q(y) is the injection; its transpose is the
        // cochain restriction.
        let mut m = F2Matrix::zeros(x_chain.dim_at(q), y_chain.dim_at(q));
        if q < inc.map.len() {
            for (s, &t) in inc.map[q].iter().enumerate() {
                m.set(s, t as usize, true);
            }
        }
        fsharp.push(m);
    }
    Ok(LevelMaps {
        x,
        y,
        x_chain,
        y_chain,
        fsharp,
        through,
    })
}

/// Checks the Steenrod range: for 1 <= n < n_max and q < n, the inclusion
/// induces an isomorphism from level n+1 cohomology down to level n.
pub fn stability_check(k: &C2SimplicialSet, n_max: usize) -> Result<StabilityReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..n_max {
        let maps = level_maps(k, n, n_max)?;
        for q in 0..n {
            if q > maps.through {
                // Both groups vanish: trivially an isomorphism.
                continue;
            }
            let induced = maps.y.push_classes(q, &maps.x, &maps.fsharp[q]);
            let iso = maps.x.betti[q] == maps.y.betti[q] && induced.rank() == maps.x.betti[q];
            if !iso {
                failures.push(StabilityFailure { n, q });
            }
        }
    }
    Ok(StabilityReport {
        n_max,
        ok: failures.is_empty(),
        failures,
        millis: start.elapsed().as_millis(),
    })
}

/// Checks that every restriction map in the tower admits an equivariant
/// section, degreewise over the trustworthy range.
pub fn splitting_check(k: &C2SimplicialSet, n_max: usize) -> Result<SplittingReport> {
    let mut levels = Vec::new();
    for n in 1..n_max {
        let start = Instant::now();
        let maps = level_maps(k, n, n_max)?;
        let module_x = cohomology_with_action_of_chain(&maps.x_chain, maps.through);
        let module_y = cohomology_with_action_of_chain(&maps.y_chain, maps.through);
        // The module bases must agree with the bases the induced map is
        // written in, so recompute sigma* within the same analyses.
        let sigma_x: Vec<F2Matrix> = (0..=maps.through)
            .map(|q| {
                maps.x
                    .push_classes(q, &maps.x, &maps.x_chain.sigma_cochain(q))
            })
            .collect();
        let sigma_y: Vec<F2Matrix> = (0..=maps.through)
            .map(|q| {
                maps.y
                    .push_classes(q, &maps.y, &maps.y_chain.sigma_cochain(q))
            })
            .collect();
        let mut source = module_y;
        let mut target = module_x;
        for q in 0..=maps.through {
            source.degrees[q].sigma = sigma_y[q].clone();
            target.degrees[q].sigma = sigma_x[q].clone();
        }
        let mats: Vec<F2Matrix> = (0..=maps.through)
            .map(|q| maps.y.push_classes(q, &maps.x, &maps.fsharp[q]))
            .collect();
        let f = GradedMap {
            source,
            target,
            mats,
        };
        let split_ok = equivariant_section_exists(&f)?;
        levels.push(SplitLevel {
            n,
            split_ok,
            millis: start.elapsed().as_millis(),
        });
    }
    Ok(SplittingReport {
        n_max,
        ok: levels.iter().all(|l| l.split_ok),
        levels,
    })
}

/// Classifies `sp(K, n)` for 1 <= n <= n_max along the Borel route (with
/// the degeneration route as the cross-check), after refusing inputs that
/// are not maximal.
pub fn verify_main_theorem(k: &C2SimplicialSet, n_max: usize) -> Result<TowerReport> {
    let input = if k.is_fixed_faithful() {
        classify(k, Method::All)?
    } else {
        classify(k, Method::Borel)?
    };
    if input.verdict == Verdict::Neither {
        let detail = match budgets(k) {
            Ok(b) => format!(
                "budgets: fixed={}, hk={}, st={}",
                b.fixed_sum, b.hk_sum, b.st_sum
            ),
            Err(_) => "budgets unavailable".to_string(),
        };
        return Err(Error::Contract(format!(
            "input must be Maximal or Galois-Maximal; got Neither ({detail})"
        )));
    }
    let results: Vec<Result<TowerLevel>> = par::map_range(n_max, |i| {
        let n = i + 1;
        let start = Instant::now();
        let sp = symmetric_product(k, n, None)?;
        let report = classify(&sp, Method::All)?;
        Ok(TowerLevel {
            n,
            verdict: report.verdict,
            barcode: report.barcode.expect("Borel route always runs here"),
            trivial_action: report.trivial_action,
            millis: start.elapsed().as_millis(),
        })
    });
    let mut levels = Vec::with_capacity(n_max);
    for r in results {
        levels.push(r?);
    }
    let ok = levels.iter().all(|l| {
        l.verdict != Verdict::Neither
            && (input.verdict != Verdict::Maximal || l.verdict == Verdict::Maximal)
    });
    Ok(TowerReport {
        input_verdict: input.verdict,
        levels,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::C2Complex;
    use crate::sset::build::{additive_induction, to_simplicial_set, wedge};

    fn sset(k: &C2Complex) -> C2SimplicialSet {
        to_simplicial_set(k).unwrap()
    }

    #[test]
    fn stability_for_trivial_circle_and_sphere() {
        let report = stability_check(&sset(&C2Complex::circle()), 3).unwrap();
        assert!(report.ok, "{:?}", report.failures);
        let report = stability_check(&sset(&C2Complex::s2()), 3).unwrap();
        assert!(report.ok, "{:?}", report.failures);
    }

    #[test]
    fn stability_level_one_checks_connectivity_only() {
        let report = stability_check(&sset(&C2Complex::circle()), 2).unwrap();
        assert!(report.ok);
    }

    #[test]
    fn splitting_for_reflected_circle_and_additive_induction() {
        let report = splitting_check(&sset(&C2Complex::rep_sphere(1, 1).unwrap()), 3).unwrap();
        assert!(report.ok, "{:?}", report.levels);
        let l = additive_induction(&sset(&C2Complex::circle())).unwrap();
        let report = splitting_check(&l, 3).unwrap();
        assert!(report.ok, "{:?}", report.levels);
    }

    #[test]
    fn splitting_for_trivial_circle() {
        let report = splitting_check(&sset(&C2Complex::circle()), 3).unwrap();
        assert!(report.ok);
    }

    #[test]
    fn tower_over_reflected_circle_is_maximal() {
        let report = verify_main_theorem(&sset(&C2Complex::rep_sphere(1, 1).unwrap()), 3).unwrap();
        assert_eq!(report.input_verdict, Verdict::Maximal);
        assert!(report.ok);
        for level in &report.levels {
            assert_eq!(level.verdict, Verdict::Maximal, "level {}", level.n);
        }
    }

    #[test]
    fn tower_over_gm_wedge_is_gm() {
        let w = wedge(
            &additive_induction(&sset(&C2Complex::circle())).unwrap(),
            &sset(&C2Complex::rep_sphere(1, 1).unwrap()),
        )
        .unwrap();
        let report = verify_main_theorem(&w, 2).unwrap();
        assert_eq!(report.input_verdict, Verdict::GaloisMaximalOnly);
        assert!(report.ok);
        for level in &report.levels {
            assert_ne!(level.verdict, Verdict::Neither);
        }
    }

    #[test]
    fn tower_refuses_non_maximal_input() {
        let a1 = sset(&C2Complex::antipodal_sphere(1));
        assert!(verify_main_theorem(&a1, 2).is_err());
    }

    #[test]
    fn steenrod_consistency_with_top_level() {
        // Where stability holds for all levels above n, the stable value
        // equals the top level computed directly.
        let k = sset(&C2Complex::s2());
        let n_max = 3;
        assert!(stability_check(&k, n_max).unwrap().ok);
        let top = symmetric_product(&k, n_max, Some(n_max)).unwrap();
        let top_chain = ChainData::from_sset(&top);
        let top_betti = crate::cohomology::betti_of_chain(&top_chain, n_max - 1);
        for n in 1..n_max {
            let level = symmetric_product(&k, n, Some(n_max)).unwrap();
            let chain = ChainData::from_sset(&level);
            let b = crate::cohomology::betti_of_chain(&chain, n_max - 1);
            for q in 0..n {
                assert_eq!(b[q], top_betti[q], "n={n}, q={q}");
            }
        }
    }

    #[test]
    fn h2_of_sphere_tower_is_already_stable_between_levels_two_and_three() {
        // Outside the guaranteed range, but true here: both second
        // cohomology groups are one-dimensional and the induced map is
        // nonzero.
        let maps = level_maps(&sset(&C2Complex::s2()), 2, 4).unwrap();
        assert_eq!(maps.x.betti[2], 1);
        assert_eq!(maps.y.betti[2], 1);
        let induced = maps.y.push_classes(2, &maps.x, &maps.fsharp[2]);
        assert_eq!(induced.rank(), 1);
    }

    #[test]
    fn gm_corpus_towers_never_report_neither() {
        let circle = sset(&C2Complex::circle());
        let s2_model = sset(&C2Complex::s2());
        for (name, set) in [
            ("lind(circle)", additive_induction(&circle).unwrap()),
            ("lind(s2)", additive_induction(&s2_model).unwrap()),
            (
                "nind(circle)",
                crate::sset::build::multiplicative_induction(&circle).unwrap(),
            ),
        ] {
            let report = verify_main_theorem(&set, 2).unwrap();
            assert_eq!(report.input_verdict, Verdict::GaloisMaximalOnly, "{name}");
            for level in &report.levels {
                assert_ne!(level.verdict, Verdict::Neither, "{name} level {}", level.n);
            }
        }
    }
}
