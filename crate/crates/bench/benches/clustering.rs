use std::hint::black_box;

use callclust_core::rng::{stream_rng, Stream};
use callclust_core::{
    characteristic_path_length, clustering_coefficient, full_report, generate_random_graph,
    greedy_clustering, monte_carlo_clustering, run_ga, GaConfig, Graph,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

/// Graph sizes of the three reference datasets (vertices, edges).
const SIZES: [(usize, usize); 3] = [(14, 31), (61, 372), (166, 450)];

fn graph(n: usize, m: usize) -> Graph {
    generate_random_graph(n, m, &mut stream_rng(1, Stream::GraphGeneration)).unwrap()
}

fn metrics(c: &mut Criterion) {
    let mut group = c.benchmark_group("metrics");
    for (n, m) in SIZES {
        let g = graph(n, m);
        let seed = greedy_clustering(&g);
        group.bench_with_input(BenchmarkId::new("cc", n), &g, |b, g| {
            b.iter(|| clustering_coefficient(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("cpl", n), &g, |b, g| {
            b.iter(|| characteristic_path_length(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("full_report", n), &g, |b, g| {
            b.iter(|| full_report(black_box(g), &seed).unwrap())
        });
    }
    group.finish();
}

fn seeding(c: &mut Criterion) {
    let mut group = c.benchmark_group("seeding");
    for (n, m) in SIZES {
        let g = graph(n, m);
        group.bench_with_input(BenchmarkId::new("greedy", n), &g, |b, g| {
            b.iter(|| greedy_clustering(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("monte_carlo_100", n), &g, |b, g| {
            b.iter(|| monte_carlo_clustering(black_box(g), 100, &mut stream_rng(0, Stream::MonteCarlo)))
        });
    }
    group.finish();
}

fn genetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("ga");
    for (n, m) in SIZES {
        let g = graph(n, m);
        let config = GaConfig {
            patience: 50,
            ..GaConfig::with_seed(3)
        };
        group.bench_with_input(BenchmarkId::new("run_ga_patience_50", n), &g, |b, g| {
            b.iter(|| run_ga(black_box(g), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, metrics, seeding, genetic);
criterion_main!(benches);
