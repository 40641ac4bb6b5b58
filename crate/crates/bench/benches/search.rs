use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gridknot::convert::{braid_to_grid, random_diagram, random_unknot, torus_grid};
use gridknot::simplify::{census, exchange_orbit, monotonic_simplify, SearchConfig};

fn canonical_keys(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_key");
    for n in [8usize, 16, 32] {
        let d = random_diagram(n, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| black_box(d).canonical_key())
        });
    }
    group.finish();
}

fn orbits(c: &mut Criterion) {
    let d = random_diagram(7, 3).unwrap();
    let mut group = c.benchmark_group("exchange_orbit");
    for jobs in [1usize, 4] {
        let cfg = SearchConfig::default().with_parallelism(jobs);
        group.bench_with_input(BenchmarkId::new("n7", jobs), &cfg, |b, cfg| {
            b.iter(|| exchange_orbit(black_box(&d), cfg))
        });
    }
    group.finish();
}

fn simplify(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("monotonic_simplify");
    let trefoil = torus_grid(2, 3).unwrap();
    group.bench_function("trefoil", |b| {
        b.iter(|| monotonic_simplify(black_box(&trefoil), &cfg))
    });
    let f8 = braid_to_grid(&"3: s1 s-2 s1 s-2".parse().unwrap()).unwrap();
    group.bench_function("figure_eight", |b| {
        b.iter(|| monotonic_simplify(black_box(&f8), &cfg))
    });
    let (unknot, _) = random_unknot(9, 3).unwrap();
    group.bench_function("unknot_n9", |b| {
        b.iter(|| monotonic_simplify(black_box(&unknot), &cfg))
    });
    group.finish();
}

fn censuses(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    c.bench_function("census_5", |b| {
        b.iter(|| census(black_box(5), 5, &cfg).unwrap())
    });
}

criterion_group!(benches, canonical_keys, orbits, simplify, censuses);
criterion_main!(benches);
