use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use royal_gamma::gamma::{extract_royal_data, generate_h_nu};
use royal_gamma::par::Exec;
use royal_gamma::pick::BlaschkeData;
use royal_gamma::pipeline::{self, SolveOptions};
use royal_gamma::{Complex64, TolerancePolicy};

fn one_boundary_node() -> BlaschkeData {
    BlaschkeData::new(
        vec![Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 1.0)],
        vec![1.0],
    )
    .unwrap()
}

fn options(grid: usize, exec: Exec) -> SolveOptions {
    SolveOptions { omega_grid: grid, exec, ..SolveOptions::default() }
}

/// Sweeping a family over the ω grid: one construction and verification per
/// grid point.
fn family_sweep(c: &mut Criterion) {
    let data = one_boundary_node();
    let mut group = c.benchmark_group("family_sweep");
    group.sample_size(20);
    for grid in [256, 2048] {
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, grid), &grid, |b, &grid| {
                b.iter(|| pipeline::solve(black_box(&data), &options(grid, exec)).unwrap())
            });
        }
    }
    group.finish();
}

/// Recovering `h_ν` from its own royal data, including the family search.
fn h_nu_roundtrip(c: &mut Criterion) {
    let h = generate_h_nu(1, 0.5).unwrap();
    let data = extract_royal_data(&h, &TolerancePolicy::default()).unwrap();
    let mut group = c.benchmark_group("h_nu_roundtrip");
    group.sample_size(20);
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        let opts = options(1024, exec);
        group.bench_function(label, |b| {
            b.iter(|| {
                let out = pipeline::solve(black_box(&data), &opts).unwrap();
                pipeline::find_in_solutions(&out, &h, &opts)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, family_sweep, h_nu_roundtrip);
criterion_main!(benches);
