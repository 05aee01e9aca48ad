//! Parallel vs sequential throughput: the oracle's assignment sweep and
//! batch orientation of a random corpus.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use rayon::prelude::*;

use mixorient::driver::strong_orientation;
use mixorient::family::lower_bound_family;
use mixorient::graph::MixedMultigraph;
use mixorient::oracle::{oriented_radius_exact, oriented_radius_exact_sequential};
use mixorient::random::random_strongly_orientable;

fn undirected_cycle(n: usize) -> MixedMultigraph {
    let mut g = MixedMultigraph::new(n);
    for v in 0..n {
        g.add_undirected(v, (v + 1) % n);
    }
    g
}

/// Nothing forces on an undirected cycle, so C_n sweeps 2^n assignments.
fn oracle_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle-sweep");
    for n in [14usize, 17] {
        let g = undirected_cycle(n);
        group.bench_function(format!("parallel/c{n}"), |b| {
            b.iter(|| oriented_radius_exact(&g, 20).unwrap().oriented_radius)
        });
        group.bench_function(format!("sequential/c{n}"), |b| {
            b.iter(|| {
                oriented_radius_exact_sequential(&g, 20)
                    .unwrap()
                    .oriented_radius
            })
        });
    }
    group.finish();
}

fn corpus_orientation(c: &mut Criterion) {
    let corpus: Vec<MixedMultigraph> = (0..64u64)
        .map(|i| random_strongly_orientable(1 + (i as usize % 12), 0.6, 9_000 + i))
        .collect();
    let mut group = c.benchmark_group("corpus-orient");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            corpus
                .par_iter()
                .map(|g| strong_orientation(g).unwrap().1.radius_after)
                .sum::<usize>()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            corpus
                .iter()
                .map(|g| strong_orientation(g).unwrap().1.radius_after)
                .sum::<usize>()
        })
    });
    group.finish();
}

fn family_orientation(c: &mut Criterion) {
    let fam = lower_bound_family(4);
    c.bench_function("driver/family-r4", |b| {
        b.iter(|| strong_orientation(&fam.graph).unwrap().1.radius_after)
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(3))
        .warm_up_time(Duration::from_secs(1));
    targets = oracle_sweep, corpus_orientation, family_orientation
}
criterion_main!(benches);
