use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kinetic_spectra::eigenbasis::{build_quadrature, eigenfunction_value, expand_with, modes_in_grid, ModeIndex};
use kinetic_spectra::spectra::{eigenvalue_table_with, Tolerance};
use kinetic_spectra::{CrossSectionModel, Execution};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn eigenvalue_table(c: &mut Criterion) {
    let kernel = CrossSectionModel::normalized(0.5).unwrap();
    let mut group = c.benchmark_group("eigenvalue_table");
    group.sample_size(10);
    for level in [16u32, 32] {
        let modes = modes_in_grid(level / 2, level, Some(level));
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, level), &modes, |b, modes| {
                b.iter(|| eigenvalue_table_with(exec, modes, &kernel, Tolerance::default()).unwrap())
            });
        }
    }
    group.finish();
}

fn expansion(c: &mut Criterion) {
    let target = ModeIndex::new(2, 3, -1).unwrap();
    let f = move |v: [f64; 3]| eigenfunction_value(target, v) + (-0.3 * (v[0] * v[0] + v[1] * v[1])).exp();
    let mut group = c.benchmark_group("expand");
    group.sample_size(10);
    for level in [8u32, 16] {
        let grid = build_quadrature(2 * level as usize, level).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, level), &grid, |b, grid| {
                b.iter(|| expand_with(exec, f, grid, level))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, eigenvalue_table, expansion);
criterion_main!(benches);
