use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use landau::ladder::{self, LadderDirection};
use landau::quadrature::{default_order, QuadratureRule};
use landau::states::{FieldConfig, LandauState, QuantumNumbers};
use landau::velocity::{self, CartesianGrid};
use landau::Execution;

fn modes() -> Vec<(&'static str, Execution)> {
    let mut out = vec![("sequential", Execution::Sequential)];
    if cfg!(feature = "parallel") {
        out.push(("parallel", Execution::default()));
    }
    out
}

fn grid_stencils(c: &mut Criterion) {
    let field = FieldConfig::new(1.0).unwrap();
    let state = LandauState::new(QuantumNumbers::new(1, 2), field);
    let grid = CartesianGrid::new(10.0, 257).unwrap();
    let psi = velocity::sample_state(&state, grid, Execution::Sequential);
    let mut group = c.benchmark_group("grid_257");
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new("sample_state", name), &exec, |b, &exec| {
            b.iter(|| velocity::sample_state(&state, grid, exec))
        });
        group.bench_with_input(BenchmarkId::new("eigen_residual", name), &exec, |b, &exec| {
            b.iter(|| velocity::eigen_residual(field, black_box(&psi), 3.5, exec))
        });
        group.bench_with_input(BenchmarkId::new("commutator_residual", name), &exec, |b, &exec| {
            b.iter(|| velocity::commutator_residual(field, black_box(&psi), exec))
        });
    }
    group.finish();
}

fn ladder_sweep(c: &mut Criterion) {
    let field = FieldConfig::new(1.0).unwrap();
    let rule = QuadratureRule::new(0.0, default_order(9, 9)).unwrap();
    let cases: Vec<(QuantumNumbers, LadderDirection)> = (0..=8u32)
        .flat_map(|n| (1..=8i32).map(move |m| QuantumNumbers::new(n, m)))
        .flat_map(|qn| [(qn, LadderDirection::Raise), (qn, LadderDirection::Lower)])
        .collect();
    let mut group = c.benchmark_group("ladder_sweep");
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                exec.map(&cases, |&(qn, dir)| ladder::verify_ladder(qn, field, dir, &rule).unwrap().max_deviation())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, grid_stencils, ladder_sweep);
criterion_main!(benches);
