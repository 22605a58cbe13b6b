use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use palg::exec::Mode;
use palg::fixtures;
use palg::random::Bounds;
use palg::structure::{center_slice, check_axioms};

fn modes() -> Vec<(&'static str, Mode)> {
    let mut v = vec![("sequential", Mode::Sequential)];
    if Mode::default().is_parallel() {
        v.push(("parallel", Mode::default()));
    }
    v
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms");
    group.sample_size(10);
    let bounds = Bounds::default();
    for (name, inst) in [("FIX-C", fixtures::fix_c()), ("FIX-G", fixtures::fix_g())] {
        for (label, mode) in modes() {
            group.bench_with_input(BenchmarkId::new(label, name), &inst, |b, inst| {
                b.iter(|| check_axioms(inst, 64, 1, &bounds, mode))
            });
        }
    }
    group.finish();
}

fn center(c: &mut Criterion) {
    let mut group = c.benchmark_group("center");
    group.sample_size(10);
    let inst = fixtures::fix_f();
    for (label, mode) in modes() {
        group.bench_function(label, |b| b.iter(|| center_slice(&inst, 2, mode)));
    }
    group.finish();
}

criterion_group!(benches, axioms, center);
criterion_main!(benches);
