use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hypercover_core::catalog::enumerate_patterns;
use hypercover_core::constructions::{cover_minus_four, hamming_sphere_cover};
use hypercover_core::solver::min_exact_cover;
use hypercover_core::{Dim, PointSet};

fn set(n: usize, bits: &[&str]) -> PointSet {
    PointSet::parse_strs(Some(Dim::new(n).unwrap()), bits).unwrap()
}

fn solver(c: &mut Criterion) {
    let s4 = set(4, &["0000", "1100", "1010", "0111"]);
    c.bench_function("min_exact_cover n=4 k=4", |b| b.iter(|| min_exact_cover(black_box(&s4)).unwrap()));
    let s5 = set(5, &["00000", "11000", "10100", "01110", "11111"]);
    c.bench_function("min_exact_cover n=5 k=5", |b| b.iter(|| min_exact_cover(black_box(&s5)).unwrap()));
}

fn catalog(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog");
    g.sample_size(10);
    g.bench_function("enumerate_patterns n=4", |b| b.iter(|| enumerate_patterns(black_box(Dim::new(4).unwrap())).unwrap()));
    g.finish();
}

fn constructions(c: &mut Criterion) {
    let s = set(12, &["000000000000", "111100000000", "110011110000", "101010101111"]);
    c.bench_function("cover_minus_four n=12", |b| b.iter(|| cover_minus_four(black_box(&s)).unwrap()));
    let h = set(10, &["0000000000", "1111111111", "1010101010", "0101010101", "1110001110"]);
    c.bench_function("hamming_sphere_cover n=10", |b| b.iter(|| hamming_sphere_cover(black_box(&h)).unwrap()));
}

criterion_group!(benches, solver, catalog, constructions);
criterion_main!(benches);
