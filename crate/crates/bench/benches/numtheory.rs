use std::hint::black_box;

use abelmax_core::numtheory::{asymptotic_ratio, f_of, g_of, large_prime_count_exceptions};
use criterion::{criterion_group, criterion_main, Criterion};

fn numtheory(c: &mut Criterion) {
    c.bench_function("g_of(10^4)", |b| b.iter(|| g_of(black_box(10_000))));
    c.bench_function("f_of(10^5)", |b| {
        b.iter(|| f_of(black_box(100_000)).unwrap())
    });
    c.bench_function("ratio(10^6)", |b| {
        b.iter(|| asymptotic_ratio(black_box(1_000_000)).unwrap().ratio)
    });
    c.bench_function("exceptions(10^6)", |b| {
        b.iter(|| large_prime_count_exceptions(black_box(1_000_000)))
    });
}

criterion_group!(benches, numtheory);
criterion_main!(benches);
