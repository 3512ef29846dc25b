//! Acceptance suite: one test per criterion, printing a pass line each.
//! Everything here is exact over F2; the only tolerances are wall-clock
//! budgets on the two timed criteria.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use c2max::borel::{borel_module, spectral_pages, torsion_order, BarLength};
use c2max::classify::{budgets, classify, corpus, Method, Verdict};
use c2max::cohomology::{
    betti, equivariant_section_exists, DegreeModule, GradedC2Module, GradedMap,
};
use c2max::complex::C2Complex;
use c2max::f2::{F2Matrix, F2Vector};
use c2max::sset::build::{additive_induction, multiplicative_induction, to_simplicial_set, wedge};
use c2max::sset::sp::symmetric_product;
use c2max::sset::C2SimplicialSet;
use c2max::tower::{splitting_check, stability_check, verify_main_theorem};

fn sset(k: &C2Complex) -> C2SimplicialSet {
    to_simplicial_set(k).unwrap()
}

fn sphere(p: usize, q: usize) -> C2SimplicialSet {
    sset(&C2Complex::rep_sphere(p, q).unwrap())
}

#[test]
fn criterion_1_golden_classifications() {
    let start = Instant::now();
    for p in 0..=2 {
        for q in 0..=p {
            let r = classify(&sphere(p, q), Method::All).unwrap();
            assert_eq!(r.verdict, Verdict::Maximal, "sphere({p},{q})");
        }
    }
    let circle = sset(&C2Complex::circle());
    let s2 = sset(&C2Complex::s2());
    for (name, set) in [
        ("lind(circle)", additive_induction(&circle).unwrap()),
        ("lind(s2)", additive_induction(&s2).unwrap()),
        ("nind(circle)", multiplicative_induction(&circle).unwrap()),
    ] {
        let r = classify(&set, Method::All).unwrap();
        assert_eq!(r.verdict, Verdict::GaloisMaximalOnly, "{name}");
    }
    for n in [1, 2] {
        let r = classify(&sset(&C2Complex::antipodal_sphere(n)), Method::All).unwrap();
        assert_eq!(r.verdict, Verdict::Neither, "antipodal({n})");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "budget exceeded: {elapsed:?}");
    println!("[PASS] criterion 1: golden classifications ({elapsed:?})");
}

#[test]
fn criterion_2_route_agreement_on_corpus() {
    let spaces = corpus();
    assert!(spaces.len() >= 12, "corpus must have at least 12 spaces");
    for (name, set) in &spaces {
        assert!(set.is_fixed_faithful(), "{name} must be fixed-faithful");
        let r = classify(set, Method::All).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.agreement, "{name}");
        assert_eq!(r.routes_used.len(), 3, "{name} must run all three routes");
    }
    println!(
        "[PASS] criterion 2: definition, Borel and degeneration verdicts agree on {} corpus spaces",
        spaces.len()
    );
}

#[test]
fn criterion_3_harnack_krasnov_chain() {
    let mut spaces = corpus();
    spaces.push(("antipodal(1)".into(), sset(&C2Complex::antipodal_sphere(1))));
    spaces.push(("antipodal(2)".into(), sset(&C2Complex::antipodal_sphere(2))));
    let count = spaces.len();
    for (name, set) in spaces {
        let b = budgets(&set).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            b.fixed_sum <= b.hk_sum && b.hk_sum <= b.st_sum,
            "{name}: fixed={} hk={} st={}",
            b.fixed_sum,
            b.hk_sum,
            b.st_sum
        );
    }
    println!("[PASS] criterion 3: fixed <= hk <= st on {count} spaces");
}

#[test]
fn criterion_4_torsion_proposition() {
    let start = Instant::now();
    let mut spaces = corpus();
    spaces.push(("antipodal(1)".into(), sset(&C2Complex::antipodal_sphere(1))));
    spaces.push(("antipodal(2)".into(), sset(&C2Complex::antipodal_sphere(2))));
    for (name, set) in &spaces {
        let (degenerates, _) = c2max::borel::degenerates_at_e2(set).unwrap();
        if !degenerates {
            let m = borel_module(set, set.dim() + 2).unwrap();
            assert!(torsion_order(&m) >= 2, "{name}");
        }
    }
    // Concrete witnesses with their first nonzero differentials.
    let a1 = sset(&C2Complex::antipodal_sphere(1));
    let m1 = borel_module(&a1, 4).unwrap();
    assert_eq!(torsion_order(&m1), 2);
    assert_eq!(
        spectral_pages(&a1, 3).unwrap().first_nonzero_differential(),
        Some(2)
    );
    let a2 = sset(&C2Complex::antipodal_sphere(2));
    let m2 = borel_module(&a2, 5).unwrap();
    assert_eq!(torsion_order(&m2), 3);
    assert_eq!(
        spectral_pages(&a2, 4).unwrap().first_nonzero_differential(),
        Some(3)
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "budget exceeded: {elapsed:?}");
    println!("[PASS] criterion 4: non-degeneration forces torsion order >= 2 ({elapsed:?})");
}

#[test]
fn criterion_5_main_theorem_at_desk_scale() {
    let start = Instant::now();
    let circle = sset(&C2Complex::circle());

    let w = wedge(&additive_induction(&circle).unwrap(), &sphere(1, 1)).unwrap();
    let report = verify_main_theorem(&w, 2).unwrap();
    assert_eq!(report.input_verdict, Verdict::GaloisMaximalOnly);
    for level in &report.levels {
        assert_ne!(level.verdict, Verdict::Neither, "W level {}", level.n);
    }

    let nind = multiplicative_induction(&circle).unwrap();
    let report = verify_main_theorem(&nind, 2).unwrap();
    assert_eq!(report.input_verdict, Verdict::GaloisMaximalOnly);
    for level in &report.levels {
        assert_ne!(level.verdict, Verdict::Neither, "nind level {}", level.n);
    }

    for (p, q) in [(1, 1), (2, 1)] {
        let report = verify_main_theorem(&sphere(p, q), 3).unwrap();
        assert_eq!(report.input_verdict, Verdict::Maximal);
        for level in &report.levels {
            assert_eq!(
                level.verdict,
                Verdict::Maximal,
                "sphere({p},{q}) level {}",
                level.n
            );
            assert!(level.trivial_action, "sphere({p},{q}) level {}", level.n);
        }
        assert!(report.ok);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() <= 600, "budget exceeded: {elapsed:?}");
    println!("[PASS] criterion 5: symmetric-product towers verified ({elapsed:?})");
}

#[test]
fn criterion_6_steenrod_stability_range() {
    let circle = sset(&C2Complex::circle());
    let s2 = sset(&C2Complex::s2());
    for (name, set) in [("circle", &circle), ("s2", &s2)] {
        let report = stability_check(set, 3).unwrap();
        assert!(report.ok, "{name}: {:?}", report.failures);
    }
    let sp2 = symmetric_product(&s2, 2, None).unwrap();
    assert_eq!(betti(&sp2).unwrap(), vec![1, 0, 1, 0, 1]);
    // The next level matches in degrees below 2.
    let sp3 = symmetric_product(&s2, 3, Some(3)).unwrap();
    let b3 = betti(&sp3).unwrap();
    assert_eq!(&b3[..2], &[1, 0]);
    println!("[PASS] criterion 6: Steenrod range stability and the projective-plane tower value");
}

#[test]
fn criterion_7_nakaoka_equivariant_splitting() {
    let circle = sset(&C2Complex::circle());
    for (name, set) in [
        ("sphere(1,1)", sphere(1, 1)),
        ("lind(circle)", additive_induction(&circle).unwrap()),
    ] {
        let report = splitting_check(&set, 3).unwrap();
        assert!(report.ok, "{name}: {:?}", report.levels);
        assert_eq!(report.levels.len(), 2);
    }
    // Negative control: the augmentation of the regular representation has
    // no equivariant section.
    let swap = F2Matrix::from_fn(2, 2, |i, j| i != j);
    let f = GradedMap {
        source: GradedC2Module {
            degrees: vec![DegreeModule {
                dim: 2,
                sigma: swap,
            }],
        },
        target: GradedC2Module {
            degrees: vec![DegreeModule {
                dim: 1,
                sigma: F2Matrix::identity(1),
            }],
        },
        mats: vec![F2Matrix::from_fn(1, 2, |_, _| true)],
    };
    assert!(!equivariant_section_exists(&f).unwrap());
    println!(
        "[PASS] criterion 7: equivariant splitting holds in the tower, fails for the augmentation"
    );
}

// Independent oracles for criterion 8.

/// Naive elimination on bool matrices.
fn naive_rank(m: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = m.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        if let Some(p) = (rank..rows).find(|&r| m[r][col]) {
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && m[r][col] {
                    for c in 0..cols {
                        m[r][c] ^= m[rank][c];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Unnormalized-chain Betti oracle: monotone vertex tuples supported on
/// simplices, plain alternating face sum mod 2, naive ranks. Independent of
/// the normal-form machinery and of the bit-packed elimination.
fn oracle_betti(k: &C2Complex, through: usize) -> Vec<usize> {
    use std::collections::HashMap;
    let mut tuples: Vec<Vec<Vec<u32>>> = Vec::new();
    for m in 0..=through + 1 {
        let mut level = Vec::new();
        for s in k.simplices() {
            grow_tuples(s, m + 1, &mut Vec::new(), &mut level);
        }
        level.sort();
        level.dedup();
        tuples.push(level);
    }
    let index: Vec<HashMap<&[u32], usize>> = tuples
        .iter()
        .map(|l| {
            l.iter()
                .enumerate()
                .map(|(i, t)| (t.as_slice(), i))
                .collect()
        })
        .collect();
    let mut ranks = vec![0usize; through + 2];
    for m in 1..=through + 1 {
        let rows = tuples[m - 1].len();
        let cols = tuples[m].len();
        let mut mat = vec![vec![false; cols]; rows];
        for (j, t) in tuples[m].iter().enumerate() {
            for i in 0..t.len() {
                let mut f = t.clone();
                f.remove(i);
                let r = index[m - 1][f.as_slice()];
                mat[r][j] ^= true;
            }
        }
        ranks[m] = naive_rank(&mat);
    }
    (0..=through)
        .map(|q| tuples[q].len() - ranks[q] - ranks[q + 1])
        .collect()
}

fn grow_tuples(simplex: &[u32], len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == len {
        // Keep tuples whose support is the full simplex; smaller supports
        // come from the faces, which are also in the complex.
        let mut support: Vec<u32> = prefix.clone();
        support.dedup();
        if support.len() == simplex.len() {
            out.push(prefix.clone());
        }
        return;
    }
    let min = prefix.last().copied();
    for &v in simplex {
        if min.is_none_or(|m| v >= m) {
            prefix.push(v);
            grow_tuples(simplex, len, prefix, out);
            prefix.pop();
        }
    }
}

fn random_regular_complex(rng: &mut impl Rng) -> C2Complex {
    // Mirror construction: triangles on one side, reflected to the other.
    let swapped = rng.gen_range(2..=4usize);
    let fixed = rng.gen_range(1..=3usize);
    let mut vertices: Vec<String> = Vec::new();
    for i in 0..swapped {
        vertices.push(format!("a{i}"));
        vertices.push(format!("b{i}"));
    }
    for i in 0..fixed {
        vertices.push(format!("c{i}"));
    }
    let side: Vec<String> = (0..swapped)
        .map(|i| format!("a{i}"))
        .chain((0..fixed).map(|i| format!("c{i}")))
        .collect();
    let mirror = |v: &str| -> String {
        if let Some(rest) = v.strip_prefix('a') {
            format!("b{rest}")
        } else {
            v.to_string()
        }
    };
    let mut simplices: Vec<Vec<String>> = Vec::new();
    let triangles = rng.gen_range(3..=7usize);
    for _ in 0..triangles {
        let mut tri = Vec::new();
        while tri.len() < 3 {
            let v = side[rng.gen_range(0..side.len())].clone();
            if !tri.contains(&v) {
                tri.push(v);
            }
        }
        simplices.push(tri.iter().map(|v| mirror(v)).collect());
        simplices.push(tri);
    }
    for v in &vertices {
        simplices.push(vec![v.clone()]);
    }
    let vrefs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let srefs: Vec<Vec<&str>> = simplices
        .iter()
        .map(|s| s.iter().map(|x| x.as_str()).collect())
        .collect();
    let srefs2: Vec<&[&str]> = srefs.iter().map(|s| s.as_slice()).collect();
    let swaps: Vec<(String, String)> = (0..swapped)
        .map(|i| (format!("a{i}"), format!("b{i}")))
        .collect();
    let swaps_ref: Vec<(&str, &str)> = swaps
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    C2Complex::build(&vrefs, &srefs2, &swaps_ref, None).unwrap()
}

#[test]
fn criterion_8_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let rows = rng.gen_range(1..=40);
        let cols = rng.gen_range(1..=60);
        let density = rng.gen_range(0.1..0.6);
        let m = F2Matrix::from_fn(rows, cols, |_, _| rng.gen_bool(density));
        let naive: Vec<Vec<bool>> = (0..rows)
            .map(|i| (0..cols).map(|j| m.get(i, j)).collect())
            .collect();
        let rank = naive_rank(&naive);
        assert_eq!(m.rank(), rank);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), cols - rank);
        for v in &kernel {
            assert!(m.apply(v).is_zero());
        }
        // Independence of the returned basis.
        let km = F2Matrix::from_columns(cols, &kernel);
        assert_eq!(km.rank(), kernel.len());
        let _ = F2Vector::zeros(1);
    }

    for trial in 0..5 {
        let k = random_regular_complex(&mut rng);
        assert!(k.validate().all_ok(), "trial {trial} must be regular");
        let engine = betti(&sset(&k)).unwrap();
        let oracle = oracle_betti(&k, 2);
        for q in 0..=2 {
            let e = engine.get(q).copied().unwrap_or(0);
            assert_eq!(e, oracle[q], "trial {trial}, degree {q}");
        }
    }
    println!("[PASS] criterion 8: bit-packed ranks and normalized chains match the naive oracles");
}

#[test]
fn criterion_5_witness_barcode_detail() {
    // Supporting detail for the flagship case: the third symmetric power of
    // the reflected 2-sphere is free on generators in degrees 0, 2, 4, 6.
    let sp3 = symmetric_product(&sphere(2, 1), 3, None).unwrap();
    let m = borel_module(&sp3, sp3.dim() + 2).unwrap();
    assert_eq!(m.h, vec![1, 1, 2, 2, 3, 3, 4, 4, 4]);
    let code = c2max::borel::barcode(&m);
    assert!(code.all_infinite());
    let births: Vec<usize> = code.bars.iter().map(|b| b.birth).collect();
    assert_eq!(births, vec![0, 2, 4, 6]);
    assert!(code.bars.iter().all(|b| b.length == BarLength::Infinite));
    println!("[PASS] criterion 5 detail: flagship barcode is free on degrees 0, 2, 4, 6");
}
