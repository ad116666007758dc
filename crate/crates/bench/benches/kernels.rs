use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtough_core::extremal::{thm11_extremal, Theorem};
use qtough_core::io::{parse_graph6, to_graph6};
use qtough_core::random::{gnp, sample_rng};
use qtough_core::spectral::{q_index, DEFAULT_TOL};
use qtough_core::toughness::{l_toughness, l_toughness_naive};
use qtough_core::verify::monte_carlo_search;
use qtough_core::{Graph, SampleModel};

fn random_graph(n: usize, p: f64, index: u64) -> Graph {
    gnp(n, p, &mut sample_rng(17, index)).unwrap()
}

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("q_index");
    for n in [10, 26, 64] {
        let g = random_graph(n, 0.5, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| q_index(black_box(g), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn toughness(c: &mut Criterion) {
    let mut group = c.benchmark_group("l_toughness");
    group.sample_size(20);
    for n in [10, 14, 18] {
        let g = random_graph(n, 0.6, 100 + n as u64);
        group.bench_with_input(BenchmarkId::new("pruned", n), &g, |b, g| {
            b.iter(|| l_toughness(black_box(g), 3).unwrap())
        });
    }
    let g = random_graph(12, 0.6, 7);
    group.bench_function("naive/12", |b| b.iter(|| l_toughness_naive(black_box(&g), 3).unwrap()));
    let ext = thm11_extremal(1, 3, 21).unwrap().graph().unwrap();
    group.bench_function("extremal/21", |b| b.iter(|| l_toughness(black_box(&ext), 3).unwrap()));
    group.finish();
}

fn graph_ops(c: &mut Criterion) {
    let g = random_graph(40, 0.5, 3);
    let text = to_graph6(&g);
    c.bench_function("graph6/encode/40", |b| b.iter(|| to_graph6(black_box(&g))));
    c.bench_function("graph6/decode/40", |b| b.iter(|| parse_graph6(black_box(&text)).unwrap()));
    c.bench_function("canonical_relabel/40", |b| b.iter(|| black_box(&g).canonical_relabel()));
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    group.bench_function("thm11/1-2-11/1000", |b| {
        b.iter(|| {
            monte_carlo_search(Theorem::Thm11, 1, 2, 11, SampleModel::NearComplete(6), 1000, 7, 1e-8).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, eigensolver, toughness, graph_ops, search);
criterion_main!(benches);
