use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use compalg::algebra::matrix_algebra;
use compalg::dynkin::{catalog, classify, Family};
use compalg::pencil::{check_compatibility, example_1_3};
use compalg::poisson::{build_bracket, jacobi_residual};
use compalg::{Cyclotomic, Field, Pencil};

type Q = Cyclotomic;

fn qs(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| Q::from_i64(x)).collect()
}

fn pencil() -> Pencil<Q> {
    example_1_3(&qs(&[1, 2, 4]), &qs(&[3, -1, 2]), &Q::from_i64(5)).unwrap()
}

fn compatibility(c: &mut Criterion) {
    let p = pencil();
    c.bench_function("check_compatibility dim 3", |b| b.iter(|| check_compatibility(black_box(&p))));
    let mat = Pencil::new(matrix_algebra::<Q>(3), matrix_algebra::<Q>(3)).unwrap();
    c.bench_function("check_compatibility Mat3", |b| b.iter(|| check_compatibility(black_box(&mat))));
}

fn dynkin(c: &mut Criterion) {
    let e8 = catalog(Family::E8, None).unwrap().matrix;
    c.bench_function("classify E8", |b| b.iter(|| classify(black_box(&e8))));
    let d = catalog(Family::D2k, Some(6)).unwrap().matrix.transpose();
    c.bench_function("classify D2k k=6 transposed", |b| b.iter(|| classify(black_box(&d))));
}

fn poisson(c: &mut Criterion) {
    let p = pencil();
    let bracket = build_bracket(&p.star, 2);
    c.bench_function("jacobi dim 12", |b| b.iter(|| jacobi_residual(black_box(&bracket))));
}

criterion_group!(benches, compatibility, dynkin, poisson);
criterion_main!(benches);
