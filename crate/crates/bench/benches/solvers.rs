use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dqeig::power::DEFLATE_TOL;
use dqeig::{adcam_pm, dcam_pm, dcama_pm, eddcam_ea, random_unit_vector, EddcamOptions};
use dqeig_bench::{dominant_config, hermitian, laplacian, spectrum_config, SIZES};

fn full_spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("laplacian_spectrum");
    for n in SIZES {
        let l = laplacian(n);
        g.bench_with_input(BenchmarkId::new("eddcam", n), &l, |b, l| {
            b.iter(|| eddcam_ea(black_box(l), EddcamOptions::default()).unwrap())
        });
        let cfg = spectrum_config();
        g.bench_with_input(BenchmarkId::new("dcama", n), &l, |b, l| {
            b.iter(|| dcama_pm(black_box(l), &cfg, DEFLATE_TOL).unwrap())
        });
    }
    g.finish();
}

fn dominant_pair(c: &mut Criterion) {
    let mut g = c.benchmark_group("dominant_pair");
    let cfg = dominant_config();
    for n in SIZES {
        let q = hermitian(n);
        let v0 = random_unit_vector(n, 1);
        g.bench_with_input(BenchmarkId::new("dcam", n), &q, |b, q| {
            b.iter(|| dcam_pm(black_box(q), &v0, &cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("adcam", n), &q, |b, q| {
            b.iter(|| adcam_pm(black_box(q), &v0, &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, full_spectrum, dominant_pair);
criterion_main!(benches);
