use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nearfield_core::ftir::{field_real_space, FtirConfig};
use nearfield_core::interactions::{nonresonant_potential, AtomModel, Decomposition};
use nearfield_core::numerics::QuadratureSpec;
use nearfield_core::parallel::{map_points, Execution};

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn ftir_map(c: &mut Criterion) {
    let cfg = FtirConfig::new(1.5, 1.0, 1.05, 1.0, 1.0, 1.0).unwrap();
    let spec = QuadratureSpec::default();
    let pts: Vec<(f64, f64)> = (0..16)
        .flat_map(|i| (0..16).map(move |j| (0.05 * i as f64, 0.05 * j as f64)))
        .collect();
    let mut g = c.benchmark_group("ftir_field_map_16x16");
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                map_points(exec, &pts, |&(x, z)| {
                    field_real_space(&cfg, 0.0, x, 0.0, z, &spec).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn vdw_sweep(c: &mut Criterion) {
    let a = AtomModel::new(1.0, 0.01, 1.0).unwrap();
    let spec = QuadratureSpec::default();
    let radii: Vec<f64> = (0..64).map(|i| 1e-3 * 10f64.powf(i as f64 / 63.0)).collect();
    let mut g = c.benchmark_group("vdw_radius_sweep_64");
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                map_points(exec, black_box(&radii), |&r| {
                    nonresonant_potential(&a, &a, r, Decomposition::NearOnly, &spec).unwrap().value
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, ftir_map, vdw_sweep);
criterion_main!(benches);
