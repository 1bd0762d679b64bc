//! Compares the data-parallel drivers against sequential loops over the
//! same per-item operations. Build with the default `parallel` feature to
//! measure rayon; the sequential baselines call the public per-item
//! functions directly and are identical to what the crate does when built
//! with `--no-default-features`.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use locclone::{crosscheck, crosscheck_points, negativity, sweep, sweep_row, CloneCase};

fn sample_points(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            (
                0.05 + 0.9 * rng.random::<f64>(),
                0.05 + 0.9 * rng.random::<f64>(),
            )
        })
        .collect()
}

fn bench_crosscheck(c: &mut Criterion) {
    let mut group = c.benchmark_group("crosscheck_case1_64pts");
    group.sample_size(10);
    group.bench_function("parallel_driver", |b| {
        b.iter(|| crosscheck(CloneCase::I, 64, 7).unwrap())
    });
    let points = sample_points(64, 7);
    group.bench_function("sequential_loop", |b| {
        b.iter_batched(
            || points.clone(),
            |pts| {
                let mut worst = 0.0f64;
                for p in pts {
                    worst = worst.max(crosscheck_points(CloneCase::I, &[p]).unwrap());
                }
                worst
            },
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_case1_200");
    group.sample_size(10);
    group.bench_function("parallel_driver", |b| {
        b.iter(|| sweep(CloneCase::I, 0.1, 0.99, 200).unwrap())
    });
    group.bench_function("sequential_loop", |b| {
        b.iter(|| {
            (0..200)
                .map(|i| {
                    let a = 0.1 + (0.99 - 0.1) * i as f64 / 199.0;
                    sweep_row(CloneCase::I, a).unwrap()
                })
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

fn bench_negativity_64(c: &mut Criterion) {
    let io = locclone::build_three_bell_pair(&locclone::bell(0, 0)).unwrap();
    c.bench_function("negativity_64x64", |b| b.iter(|| negativity(&io.rho_out)));
}

criterion_group!(benches, bench_crosscheck, bench_sweep, bench_negativity_64);
criterion_main!(benches);
