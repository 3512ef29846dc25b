//! Benchmarks for the parallel-vs-sequential comparison.
//!
//! The parallel backend is a compile-time feature, so each mode is one
//! build: run `cargo bench` for the rayon path and
//! `cargo bench --no-default-features` for the sequential fallback. Group
//! names carry the active mode so the two reports line up side by side.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use c2max::borel::{barcode, borel_module};
use c2max::cohomology::betti;
use c2max::complex::C2Complex;
use c2max::par::parallel_enabled;
use c2max::reduce::reduced_chain_data;
use c2max::sset::build::{multiplicative_induction, to_simplicial_set};
use c2max::sset::sp::symmetric_product;

fn mode() -> &'static str {
    if parallel_enabled() {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_sp_enumeration(c: &mut Criterion) {
    let s2 = to_simplicial_set(&C2Complex::s2()).unwrap();
    let mut g = c.benchmark_group(format!("sp_enumeration/{}", mode()));
    g.sample_size(10);
    g.bench_function("sp2_s2", |b| {
        b.iter(|| symmetric_product(black_box(&s2), 2, None).unwrap())
    });
    g.bench_function("sp3_s2_truncated4", |b| {
        b.iter(|| symmetric_product(black_box(&s2), 3, Some(4)).unwrap())
    });
    g.finish();
}

fn bench_betti_pipeline(c: &mut Criterion) {
    let circle = to_simplicial_set(&C2Complex::circle()).unwrap();
    let torus = multiplicative_induction(&circle).unwrap();
    let sp2 = symmetric_product(&torus, 2, None).unwrap();
    let mut g = c.benchmark_group(format!("betti/{}", mode()));
    g.sample_size(10);
    g.bench_function("sp2_of_torus", |b| {
        b.iter(|| betti(black_box(&sp2)).unwrap())
    });
    g.finish();
}

fn bench_reduction_and_borel(c: &mut Criterion) {
    let oct = to_simplicial_set(&C2Complex::rep_sphere(2, 1).unwrap()).unwrap();
    let sp2 = symmetric_product(&oct, 2, None).unwrap();
    let mut g = c.benchmark_group(format!("borel/{}", mode()));
    g.sample_size(10);
    g.bench_function("reduce_sp2_octahedron", |b| {
        b.iter(|| reduced_chain_data(black_box(&sp2)))
    });
    g.bench_function("barcode_sp2_octahedron", |b| {
        b.iter(|| {
            let m = borel_module(black_box(&sp2), sp2.dim() + 2).unwrap();
            barcode(&m)
        })
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_sp_enumeration,
    bench_betti_pipeline,
    bench_reduction_and_borel
);
criterion_main!(benches);
