use compalg::algebra::{matn_lift_sc, matrix_algebra, StructureConstants};
use compalg::pencil::{example_1_1, example_1_3, idempotent_algebra};
use compalg::poisson::{
    antisymmetry_residual, build_bracket, jacobi_residual, poisson_compatibility, poisson_report,
    LinearPoissonBracket,
};
use compalg::{Cyclotomic, Error, Field, Matrix};

type Q = Cyclotomic;

fn q(x: i64) -> Q {
    Q::from_i64(x)
}

fn commutator(sc: &StructureConstants<Q>) -> StructureConstants<Q> {
    sc.lincomb(&q(1), &sc.opposite(), &q(-1)).unwrap()
}

#[test]
fn commutative_n1_is_zero() {
    let b = build_bracket(&idempotent_algebra::<Q>(3), 1);
    assert!(b.tensor().is_zero());
    assert!(jacobi_residual(&b).unwrap().is_zero());
}

#[test]
fn n1_is_the_commutator() {
    let mat2 = matrix_algebra::<Q>(2);
    let b = build_bracket(&mat2, 1);
    assert_eq!(b.tensor(), &commutator(&mat2));
    assert!(jacobi_residual(&b).unwrap().is_zero());
}

#[test]
fn lifted_bracket_is_commutator_of_lift() {
    let star = idempotent_algebra::<Q>(2);
    for n in 1..=3 {
        let b = build_bracket(&star, n);
        assert_eq!(b.tensor(), &commutator(&matn_lift_sc(&star, n)));
        assert!(antisymmetry_residual(&b).is_zero());
    }
    // commutative V, nontrivial bracket once n > 1
    assert!(!build_bracket(&star, 2).tensor().is_zero());
}

#[test]
fn diagonal_pencil_brackets() {
    let p = example_1_3(&[q(1), q(2)], &[q(3), q(-1)], &q(5)).unwrap();
    for n in 1..=2 {
        let report = poisson_report(&p.star, &p.circle, n).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn matrix_pencil_brackets() {
    let a = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(0), q(-1)]]).unwrap();
    let report = poisson_report(&matrix_algebra(2), &example_1_1(&a), 1).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn self_compatible() {
    let b = build_bracket(&matrix_algebra::<Q>(2), 1);
    assert!(poisson_compatibility(&b, &b).unwrap().is_zero());
}

#[test]
fn perturbed_entry_breaks_jacobi() {
    let mut b = build_bracket(&matrix_algebra::<Q>(2), 1);
    let v = b.get(1, 0, 3).clone() + q(1);
    b.set(1, 0, 3, v.clone());
    b.set(1, 3, 0, -v);
    let r = jacobi_residual(&b).unwrap();
    assert!(!r.is_zero());
    assert_eq!(r.witness.unwrap().indices.len(), 3);
}

#[test]
fn incompatible_products_detected() {
    let p = example_1_3(&[q(1), q(2)], &[q(3), q(-1)], &q(5)).unwrap();
    let mut circle = p.circle.clone();
    circle.set(0, 0, 1, q(7));
    let b1 = build_bracket(&p.star, 2);
    let b2 = build_bracket(&circle, 2);
    assert!(!poisson_compatibility(&b1, &b2).unwrap().is_zero());
}

#[test]
fn zero_bracket() {
    let b = LinearPoissonBracket::from_tensor(StructureConstants::<Q>::zero(4));
    assert!(jacobi_residual(&b).unwrap().is_zero());
}

#[test]
fn size_guard() {
    let b = build_bracket(&idempotent_algebra::<Q>(3), 4);
    assert_eq!(b.dim(), 48);
    assert!(matches!(jacobi_residual(&b), Err(Error::TooLarge(_))));
}
