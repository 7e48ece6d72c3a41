use charp_bench::small_weights;
use charp_core::{GroupConfig, Pipeline, Weight};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn restricted_rows(c: &mut Criterion) {
    let cfg = GroupConfig::a5_p3();
    let mut g = c.benchmark_group("restricted row");
    g.sample_size(10);
    for lambda in small_weights() {
        g.bench_with_input(BenchmarkId::new("memo", &lambda), &lambda, |b, l| {
            b.iter(|| black_box(Pipeline::new(cfg).restricted_row(l).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("naive", &lambda), &lambda, |b, l| {
            b.iter(|| black_box(Pipeline::new(cfg).without_memo().restricted_row(l).unwrap()))
        });
    }
    g.finish();
}

fn single_rank(c: &mut Criterion) {
    let cfg = GroupConfig::a5_p3();
    let lambda = Weight::new(vec![1, 1, 0, 1, 1]);
    let nu = Weight::new(vec![0, 0, 0, 0, 0]);
    let mut g = c.benchmark_group("weight space");
    g.sample_size(10);
    g.bench_function("dim L(11011) at 0", |b| {
        b.iter(|| black_box(Pipeline::new(cfg).weight_space_dim(&lambda, &nu).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, restricted_rows, single_rank);
criterion_main!(benches);
