use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use starclean::ideal::all_ideals;
use starclean::ring::validate_ring;
use starclean::{classify, Corpus, SuiteConfig};
use starclean_bench::{raw, ring, FIXTURES};

fn validation(c: &mut Criterion) {
    let mut g = c.benchmark_group("validate");
    for &expr in FIXTURES {
        let t = raw(&ring(expr));
        g.bench_with_input(BenchmarkId::from_parameter(expr), &t, |b, t| {
            b.iter(|| validate_ring(black_box(t)).unwrap())
        });
    }
    g.finish();
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    for &expr in FIXTURES {
        let s = ring(expr);
        g.bench_with_input(BenchmarkId::from_parameter(expr), &s, |b, s| b.iter(|| classify(black_box(s))));
    }
    g.finish();
}

fn ideals(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_ideals");
    for &expr in FIXTURES.iter().take(5) {
        let s = ring(expr);
        g.bench_with_input(BenchmarkId::from_parameter(expr), &s, |b, s| {
            b.iter(|| all_ideals(black_box(s), 64).unwrap())
        });
    }
    g.finish();
}

fn suite(c: &mut Criterion) {
    let corpus = Corpus::from_recipes(
        &FIXTURES.iter().map(|e| e.parse().unwrap()).collect::<Vec<_>>()[..4],
        4096,
    )
    .unwrap();
    let cfg = SuiteConfig {
        extension_base_max_order: 4,
        ..SuiteConfig::default()
    };
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    g.bench_function("four-rings", |b| b.iter(|| starclean::run_suite(black_box(&corpus), &cfg)));
    g.finish();
}

criterion_group!(benches, validation, classification, ideals, suite);
criterion_main!(benches);
