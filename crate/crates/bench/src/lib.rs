//! Criterion benchmarks for the numerical kernels of `zprime-core`.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use zprime_core::critical::{critical_points, critical_points_oracle};
use zprime_core::haar::{sample_eigenphases, sample_haar_unitary};
use zprime_core::linalg::eigenphases;
use zprime_core::spacing::{gap_series, gap_series_sigma_form};
use zprime_core::szego::{szego_limit_error, szego_limit_error_direct};
use zprime_core::{Symbol, SzegoParameters};

const SIZES: [usize; 3] = [50, 100, 200];

pub fn haar(c: &mut Criterion) {
    let mut group = c.benchmark_group("haar");
    for n in SIZES {
        group.bench_with_input(BenchmarkId::new("sample_unitary", n), &n, |b, &n| {
            b.iter(|| sample_haar_unitary(n, black_box(11)))
        });
        let u = sample_haar_unitary(n, 11);
        group.bench_with_input(BenchmarkId::new("eigenphases", n), &u, |b, u| {
            b.iter(|| eigenphases(black_box(u)))
        });
    }
    group.finish();
}

pub fn critical(c: &mut Criterion) {
    let mut group = c.benchmark_group("critical_points");
    for n in SIZES {
        let spectrum = sample_eigenphases(n, 12).expect("spectrum");
        group.bench_with_input(BenchmarkId::new("aberth", n), &spectrum, |b, s| {
            b.iter(|| critical_points(black_box(s)))
        });
    }
    let small = sample_eigenphases(50, 12).expect("spectrum");
    group.bench_function("oracle/50", |b| {
        b.iter(|| critical_points_oracle(black_box(&small)))
    });
    group.finish();
}

pub fn spacing(c: &mut Criterion) {
    let mut group = c.benchmark_group("gap_series");
    group.sample_size(10);
    for order in [16, 24] {
        group.bench_with_input(BenchmarkId::new("fredholm", order), &order, |b, &o| {
            b.iter(|| gap_series(o))
        });
        group.bench_with_input(BenchmarkId::new("sigma", order), &order, |b, &o| {
            b.iter(|| gap_series_sigma_form(o))
        });
    }
    group.finish();
}

pub fn szego(c: &mut Criterion) {
    let params = SzegoParameters::new(
        zprime_core::Complex64::new(1.0, 0.0),
        0.0,
        zprime_core::Complex64::new(0.5, 0.0),
    )
    .expect("parameters");
    let mut group = c.benchmark_group("szego");
    for n in [16, 64] {
        group.bench_with_input(BenchmarkId::new("borodin_okounkov", n), &n, |b, &n| {
            b.iter(|| szego_limit_error(&params, Symbol::G, n))
        });
        group.bench_with_input(BenchmarkId::new("direct", n), &n, |b, &n| {
            b.iter(|| szego_limit_error_direct(&params, Symbol::G, n))
        });
    }
    group.finish();
}
