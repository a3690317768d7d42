//! One line per acceptance criterion. All checks are exact; a criterion with a
//! time limit also fails when the limit is exceeded.

use std::time::{Duration, Instant};

use compalg::algebra::matrix_algebra;
use compalg::dynkin::{catalog, classify, gram_matrix, gram_rank, is_admissible, is_psd, solve_adm, Family};
use compalg::matrix_ops::{extract_m_tensors, s_operator, standard_product, verify_theorem21};
use compalg::mstructure::{
    check_k_central, classify_comma, comma_build, comma_conditions, cyclic_representation, example_cyclic,
    random_comma_solution, CommAClass,
};
use compalg::pencil::{
    check_compatibility, deform_by_r, example_1_1, example_1_2, example_1_2_operator, example_1_3,
    extend_polynomial, extension_decompose_check, extension_family_compatible, yang_rr_residual, yang_rs_residual,
};
use compalg::pmstructure::{
    a2k1_build, block_matrix_algebra, example_3_1, pm_check_k_central, pm_second_product,
    random_element, A2k1, PMPresentation, UAlgebra,
};
use compalg::poisson::{build_bracket, jacobi_residual, poisson_compatibility};
use compalg::random::Rng;
use compalg::{Cyclotomic, Field, Matrix, Pencil};

type Q = Cyclotomic;

fn q(x: i64) -> Q {
    Q::from_i64(x)
}

fn qs(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn criterion(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Line) -> bool {
    let start = Instant::now();
    let r = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let ok = r.ok && in_time;
    let limit = limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
    println!(
        "criterion {n} [{name}]: {} ({}; {:.2}s, limit {limit})",
        if ok { "PASS" } else { "FAIL" },
        r.detail,
        elapsed.as_secs_f64()
    );
    ok
}

fn compatibility_suite() -> Line {
    let mut rng = Rng::seeded(1);
    let star = matrix_algebra::<Q>(2);
    let mut failures = 0;
    for _ in 0..20 {
        let a: Matrix<Q> = rng.matrix(2, 5);
        let b: Matrix<Q> = rng.matrix(2, 5);
        for circle in [example_1_1(&a), example_1_2(&a, &b)] {
            if !check_compatibility(&Pencil::new(star.clone(), circle).unwrap()).passed() {
                failures += 1;
            }
        }
    }
    line(failures == 0, format!("20 seeded (a, b), both deformation families: {failures} nonzero reports"))
}

fn yang_rr_gate() -> Line {
    let mut rng = Rng::seeded(2);
    let star = matrix_algebra::<Q>(2);
    let mut singular_zero = 0;
    for _ in 0..10 {
        let (x, y, z, w) = (rng.small_rational::<Q>(4), rng.small_rational::<Q>(4), rng.small_rational::<Q>(4), rng.small_rational::<Q>(4));
        let a = Matrix::from_fn(2, 2, |i, j| [x.clone(), y.clone()][i].clone() * [z.clone(), w.clone()][j].clone());
        let b: Matrix<Q> = rng.matrix(2, 5);
        if yang_rr_residual(&example_1_2_operator(&a, &b), &star).unwrap().is_zero() {
            singular_zero += 1;
        }
    }
    let mut generic_nonzero = 0;
    let mut generic = 0;
    while generic < 10 {
        let a: Matrix<Q> = rng.matrix(2, 5);
        if a.det().unwrap().is_zero() {
            continue;
        }
        generic += 1;
        let b: Matrix<Q> = rng.matrix(2, 5);
        if !yang_rr_residual(&example_1_2_operator(&a, &b), &star).unwrap().is_zero() {
            generic_nonzero += 1;
        }
    }
    line(
        singular_zero == 10 && generic_nonzero >= 9,
        format!("det a = 0: {singular_zero}/10 zero; det a ≠ 0: {generic_nonzero}/10 nonzero (need ≥ 9)"),
    )
}

fn tensor_round_trip() -> Line {
    let rep = cyclic_representation::<Q>(2, &q(2)).unwrap();
    let Ok(ext) = extract_m_tensors(&rep) else {
        return line(false, "extraction failed");
    };
    let identities = verify_theorem21(&ext.tensors).passed() && ext.report.passed();
    let pencil = Pencil::new(standard_product(rep.n), rep.second_product()).unwrap();
    let compatible = check_compatibility(&pencil).passed();
    let s = s_operator(&ext.pres, &ext.tensors).unwrap();
    let yang = yang_rs_residual(&ext.pres.operator(), &s, &pencil.star).unwrap().is_zero();
    line(
        identities && compatible && yang,
        format!("identities {identities}, second product compatible {compatible}, yangRS zero {yang}"),
    )
}

fn random_triples<F: Field>(pm: &PMPresentation<F>, rng: &mut Rng, n: usize) -> usize {
    let ua = UAlgebra::new(pm).unwrap();
    let mut bad = 0;
    for _ in 0..n {
        let x = random_element(pm, rng, 3, 3);
        let y = random_element(pm, rng, 3, 3);
        let z = random_element(pm, rng, 3, 3);
        if ua.mul(&ua.mul(&x, &y), &z) != ua.mul(&x, &ua.mul(&y, &z)) {
            bad += 1;
        }
    }
    bad
}

fn k_centrality() -> Line {
    let mut rng = Rng::seeded(4);
    let mut issues = Vec::new();
    for p in 1..=4 {
        let m = example_cyclic::<Q>(p).unwrap();
        if !check_k_central(&m).is_zero() {
            issues.push(format!("cyclic p={p} not central"));
        }
        let bad = random_triples(m.as_pm(), &mut rng, 100);
        if bad > 0 {
            issues.push(format!("cyclic p={p}: {bad} non-associative triples"));
        }
    }
    let us = qs(&[1, 2, 4]);
    let ts = qs(&[1, -1, 3]);
    let mut structures = Vec::new();
    for m in 1..=3 {
        structures.push((format!("three-block m={m}"), example_3_1(&us[..m], &ts[..m]).unwrap()));
    }
    for k in 1..=3 {
        for m in 1..=2 {
            let lam = qs(&[1, 2]);
            let t = qs(&[1, 3]);
            structures.push((format!("Ã k={k} m={m}"), a2k1_build(k, m, &lam[..m], &t[..m]).unwrap()));
        }
    }
    for (name, pm) in &structures {
        if !pm_check_k_central(pm).is_zero() {
            issues.push(format!("{name} not central"));
        }
        let bad = random_triples(pm, &mut rng, 100);
        if bad > 0 {
            issues.push(format!("{name}: {bad} non-associative triples"));
        }
    }
    let total = 4 + structures.len();
    line(
        issues.is_empty(),
        if issues.is_empty() {
            format!("{total} structures central, 100 triples each associative at K-degree ≤ 3")
        } else {
            issues.join("; ")
        },
    )
}

fn dynkin_table() -> Line {
    let mut rng = Rng::seeded(5);
    let mut checked = 0;
    let mut issues = Vec::new();
    for family in Family::ALL {
        let ks: Vec<Option<usize>> = match family.min_k() {
            Some(lo) => (lo..=6).map(Some).collect(),
            None => vec![None],
        };
        for k in ks {
            let e = catalog(family, k).unwrap();
            let name = e.id.name();
            let a = &e.matrix;
            let mut ok = is_admissible(a)
                && solve_adm(a) == Some((e.m.clone(), e.n.clone()))
                && classify(a) == Some(e.id)
                && is_psd(&gram_matrix(a))
                && gram_rank(a) == a.r() + a.s() - 1;
            for _ in 0..5 {
                let p = a.permute(&rng.permutation(a.r()), &rng.permutation(a.s()));
                for b in [p.clone(), p.transpose()] {
                    ok &= classify(&b).is_some_and(|id| (id.family, id.k) == (family, k));
                }
            }
            if !ok {
                issues.push(name);
            }
            checked += 1;
        }
    }
    line(issues.is_empty(), format!("{checked} catalog entries, failures: {issues:?}"))
}

fn a2k1_end_to_end() -> Line {
    let s = q(5);
    let lam = qs(&[1, 2]);
    let fam = A2k1::new(2, lam.clone(), qs(&[1, 3])).unwrap();
    let rep = fam.representation(&s).unwrap();
    let star = block_matrix_algebra::<Q>(&[2, 2]);
    let circle = pm_second_product(&rep).unwrap();
    let compatible = check_compatibility(&Pencil::new(star.clone(), circle.clone()).unwrap()).passed();
    let via_r = deform_by_r(&star, &fam.r_operator(&s).unwrap()).unwrap() == circle;
    let mut products = vec![star.clone()];
    for a in 0..2 {
        let mut t = vec![q(0); 2];
        t[a] = q(1);
        let r = A2k1 { k: 2, lambda: lam.clone(), t }.r_operator(&s).unwrap();
        products.push(deform_by_r(&star, &r).unwrap());
    }
    let mut pairwise = true;
    for i in 0..products.len() {
        for j in i + 1..products.len() {
            pairwise &= check_compatibility(&Pencil::new(products[i].clone(), products[j].clone()).unwrap()).passed();
        }
    }
    line(
        compatible && via_r && pairwise,
        format!("compatible on Mat₂⊕Mat₂ {compatible}, R reproduces it {via_r}, m+1 products pairwise {pairwise}"),
    )
}

fn comma_classification() -> Line {
    let regular = (qs(&[1, 2, 5]), qs(&[12, 15, 24]), vec![qs(&[4, 4, 4]), qs(&[5, 5, 5]), qs(&[8, 8, 8])]);
    let example_2_2 = (qs(&[0, 0, 0]), qs(&[1, 1, 1]), vec![qs(&[0, -1, -1]), qs(&[1, 0, -1]), qs(&[1, 1, 0])]);
    let example_2_4 = (qs(&[10, 9, 5]), qs(&[-21, -14, -6]), vec![qs(&[0, 3, 7]), qs(&[2, 0, 7]), qs(&[2, 3, 0])]);
    let mut tags = Vec::new();
    let mut ok = true;
    for ((u, v, qq), want) in [(regular, "regular"), (example_2_2, "commutative"), (example_2_4, "Mat2")] {
        ok &= comma_conditions(&u, &v, &qq).unwrap().passed();
        let tag = classify_comma(&u, &v, &qq).map(|c| c.tag()).unwrap_or("error");
        ok &= tag == want;
        tags.push(tag);
        if want == "Mat2" {
            let b = comma_build(&u, &v, &qq).unwrap().b_algebra;
            ok &= b.dim() == 4 && b.is_semisimple().unwrap() && b.center_dimension() == 1;
        }
    }
    let mut rng = Rng::seeded(2024);
    let mut regular_count = 0;
    for _ in 0..50 {
        let (u, v, qq) = random_comma_solution::<Q>(&mut rng, 4, 3, 100_000).expect("solution");
        if matches!(classify_comma(&u, &v, &qq).unwrap(), CommAClass::Regular { .. }) {
            regular_count += 1;
        }
    }
    ok &= regular_count == 50;
    line(ok, format!("classes {tags:?}, Mat2 certificate checked, random p=4: {regular_count}/50 regular"))
}

fn polynomial_extension() -> Line {
    let scalar_pair = Pencil::new(matrix_algebra::<Q>(1), compalg::algebra::StructureConstants::zero(1)).unwrap();
    let ex = example_1_3(&qs(&[1, 2]), &qs(&[3, -1]), &q(2)).unwrap();
    let mut ok = true;
    for base in [&scalar_pair, &ex] {
        for m in 1..=3 {
            let qc: Vec<Q> = (0..=m).map(|j| q(2 * j as i64 - 1)).collect();
            ok &= extend_polynomial(base, &qc).unwrap().is_associative();
        }
        ok &= extension_family_compatible(base, 2).unwrap();
        ok &= extension_decompose_check(base, &qs(&[1, -2, 3])).unwrap();
    }
    line(ok, "two base pairs, m ≤ 3 associative, family compatible, decomposition at roots 1, −2, 3")
}

fn poisson() -> Line {
    let p = example_1_3(&qs(&[1, 2]), &qs(&[3, -1]), &q(5)).unwrap();
    let b1 = build_bracket(&p.star, 2);
    let b2 = build_bracket(&p.circle, 2);
    let j1 = jacobi_residual(&b1).unwrap().is_zero();
    let j2 = jacobi_residual(&b2).unwrap().is_zero();
    let c = poisson_compatibility(&b1, &b2).unwrap().is_zero();
    line(j1 && j2 && c, format!("D = {}: Jacobi {j1}/{j2}, compatibility {c}", b1.dim()))
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "compatibility suite", Some(s(5)), compatibility_suite),
        criterion(2, "yangRR gate", None, yang_rr_gate),
        criterion(3, "M-tensor round trip", Some(s(10)), tensor_round_trip),
        criterion(4, "K-centrality", None, k_centrality),
        criterion(5, "Dynkin golden table", Some(s(5)), dynkin_table),
        criterion(6, "Ã_{2k−1} end-to-end", Some(s(30)), a2k1_end_to_end),
        criterion(7, "commutative classification", None, comma_classification),
        criterion(8, "polynomial extension", None, polynomial_extension),
        criterion(9, "Poisson", Some(s(10)), poisson),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    assert!(results.iter().all(|&r| r));
}
