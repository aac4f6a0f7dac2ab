use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use subranks_core::bridge::{point_poly, strength};
use subranks_core::equations::{build_pullback_matrix, BudgetVector};
use subranks_core::rank::{prank, slice_rank, SearchOptions};
use subranks_core::{ExactMatrix, Field, Tensor};

fn elimination(c: &mut Criterion) {
    let f = Field::Prime(5);
    let t = Tensor::random(&[12, 12], f, 1, 0.8).unwrap();
    let rows = (0..12).map(|i| (0..12).map(|j| t.get(&[i, j]).clone()).collect()).collect();
    let m = ExactMatrix::from_rows(f, rows).unwrap();
    c.bench_function("rref 12x12 GF(5)", |b| b.iter(|| black_box(&m).rref()));
    let q = Tensor::random(&[8, 8], Field::Rational, 1, 0.8).unwrap();
    let rows = (0..8).map(|i| (0..8).map(|j| q.get(&[i, j]).clone()).collect()).collect();
    let mq = ExactMatrix::from_rows(Field::Rational, rows).unwrap();
    c.bench_function("rref 8x8 rational", |b| b.iter(|| black_box(&mq).rref()));
}

fn ranks(c: &mut Criterion) {
    let opts = SearchOptions::default();
    let f = Field::Prime(2);
    let small = Tensor::random(&[2, 2, 2], f, 3, 0.5).unwrap();
    c.bench_function("prank 2x2x2 GF(2)", |b| b.iter(|| prank(black_box(&small), &opts).unwrap()));
    let cube = Tensor::random(&[3, 3, 3], f, 3, 0.5).unwrap();
    c.bench_function("prank 3x3x3 GF(2)", |b| b.iter(|| prank(black_box(&cube), &opts).unwrap()));
    c.bench_function("slice rank 3x3x3 GF(2)", |b| b.iter(|| slice_rank(black_box(&cube), &opts).unwrap()));
}

fn pullback(c: &mut Criterion) {
    let budget = &BudgetVector::tight_all(3, 1)[0];
    c.bench_function("pullback d=3 n=2 r=1 m=4", |b| {
        b.iter(|| build_pullback_matrix(3, 2, 4, Field::Rational, black_box(budget), u128::MAX).unwrap())
    });
}

fn strengths(c: &mut Criterion) {
    let opts = SearchOptions::default();
    let f = Field::Prime(7);
    let p = point_poly(3, f, &[(&[0, 1, 2], 1), (&[0, 0, 0], 2), (&[1, 1, 2], 3)]).unwrap();
    c.bench_function("strength cubic n=3 GF(7)", |b| b.iter(|| strength(black_box(&p), &opts).unwrap()));
}

criterion_group!(benches, elimination, ranks, pullback, strengths);
criterion_main!(benches);
