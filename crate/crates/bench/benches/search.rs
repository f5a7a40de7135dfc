use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use grstar_core::canon::canonical_key;
use grstar_core::constructions::{build_c4_critical, build_star_critical, StarInner};
use grstar_core::gallai::{find_gallai_partition, random_gallai_coloring};
use grstar_core::search::{arrows, gallai_ramsey_number, Method};
use grstar_core::{
    find_monochromatic, find_rainbow_triangle, HostGraph, SearchConfig, SearchProblem, TargetGraph,
    TargetSet,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn detectors(c: &mut Criterion) {
    let g = build_c4_critical(10).unwrap().coloring;
    let c4 = TargetGraph::cycle(4);
    c.bench_function("rainbow triangle K13", |b| {
        b.iter(|| find_rainbow_triangle(black_box(&g)))
    });
    c.bench_function("monochromatic C4 K13", |b| {
        b.iter(|| find_monochromatic(black_box(&g), &c4, 1))
    });
    let small = build_c4_critical(5).unwrap().coloring;
    c.bench_function("canonical key K8", |b| {
        b.iter(|| canonical_key(black_box(&small)).unwrap())
    });
}

fn partitions(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(7);
    let gs: Vec<_> = (0..32)
        .map(|_| random_gallai_coloring(&mut rng, 24, 4).unwrap())
        .collect();
    c.bench_function("gallai partition n=24", |b| {
        b.iter(|| {
            gs.iter()
                .map(|g| find_gallai_partition(g).unwrap().blocks.len())
                .sum::<usize>()
        })
    });
}

fn constructions(c: &mut Criterion) {
    c.bench_function("star critical m=13 k=8", |b| {
        b.iter(|| build_star_critical(black_box(13), 8, &StarInner::Default).unwrap())
    });
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let cfg = SearchConfig::default();
    let c4 = TargetSet::from(TargetGraph::cycle(4));
    let problem = SearchProblem::symmetric(HostGraph::Complete(7), 3, c4.clone(), true).unwrap();
    group.bench_function("K7 arrows C4 in 3 colors", |b| {
        b.iter(|| arrows(&problem, &cfg).unwrap())
    });
    let p4 = vec![TargetSet::from(TargetGraph::path(4)); 4];
    group.bench_function("gr_4(P4)", |b| {
        b.iter(|| gallai_ramsey_number(&p4, 10, Method::Dfs, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, detectors, partitions, constructions, searches);
criterion_main!(benches);
