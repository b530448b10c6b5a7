use std::hint::black_box;

use cliquecap::counting::{clique_vector, independent_vector};
use cliquecap::enumerate::generate_forms;
use cliquecap::graph::canonical_form;
use cliquecap::Graph;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("clique_vector");
    for n in [16, 32, 64] {
        let g = random_graph(n, 0.5, n as u64);
        group.bench_with_input(BenchmarkId::new("gnp-0.5", n), &g, |b, g| b.iter(|| clique_vector(black_box(g))));
    }
    let petersen = Graph::petersen();
    group.bench_function("petersen-independent", |b| b.iter(|| independent_vector(black_box(&petersen))));
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    for n in [10, 20, 40] {
        let g = random_graph(n, 0.3, 7 + n as u64);
        group.bench_with_input(BenchmarkId::new("gnp-0.3", n), &g, |b, g| b.iter(|| canonical_form(black_box(g))));
    }
    let cube = Graph::from_edges(8, &[(0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6), (6, 4), (0, 4), (1, 5), (2, 6), (3, 7)]).unwrap();
    group.bench_function("cube", |b| b.iter(|| canonical_form(black_box(&cube))));
    group.bench_function("petersen", |b| b.iter(|| canonical_form(black_box(&Graph::petersen()))));
    group.finish();
}

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    group.sample_size(10);
    for (n, r) in [(7, 3), (8, 3), (7, 6)] {
        group.bench_function(format!("n={n} r={r}"), |b| b.iter(|| generate_forms(black_box(n), black_box(r)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, counting, canonical, generation);
criterion_main!(benches);
