use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cubical_bench::{enriched_ordinal, long_word, torus};
use cubical_core::chain::{chain_realization, homology, Ring};
use cubical_core::cube::hom_count;
use cubical_core::cubical::{boundary, day_tensor, representable};
use cubical_core::enriched::hc_nerve;
use cubical_core::Flavor;

fn cube(c: &mut Criterion) {
    let w = long_word();
    c.bench_function("normalize long word", |b| {
        b.iter(|| black_box(&w).normalize().unwrap())
    });
    c.bench_function("hom_c(3,3)", |b| {
        b.iter(|| hom_count(Flavor::Connections, black_box(3), 3).unwrap())
    });
}

fn cubical(c: &mut Criterion) {
    let circle = boundary(Flavor::Connections, 2, 2).unwrap().0;
    c.bench_function("circle tensor circle", |b| {
        b.iter(|| day_tensor(black_box(&circle), &circle).unwrap())
    });
    let (b2, b1) = (
        representable(Flavor::Connections, 2, 3).unwrap(),
        representable(Flavor::Connections, 1, 3).unwrap(),
    );
    c.bench_function("box 2 tensor box 1", |b| {
        b.iter(|| day_tensor(black_box(&b2), &b1).unwrap())
    });
}

fn chains(c: &mut Criterion) {
    let t = torus(Flavor::Reduced);
    c.bench_function("torus homology", |b| {
        b.iter(|| homology(&chain_realization(black_box(&t), Ring::Integers).unwrap()).unwrap())
    });
}

fn nerve(c: &mut Criterion) {
    let cat = enriched_ordinal(3);
    c.bench_function("coherent nerve of [3]", |b| {
        b.iter(|| hc_nerve(black_box(&cat), 3).unwrap())
    });
}

criterion_group!(benches, cube, cubical, chains, nerve);
criterion_main!(benches);
