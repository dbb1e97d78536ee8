//! Benchmarks comparing the data-parallel check runner against the
//! sequential fallback on the heavier law-suite workloads.
//!
//! Build with `--no-default-features` to measure the build without the
//! thread pool at all; within a default build, the `seq` entries force
//! single-threaded execution through the same code path.

use criterion::{criterion_group, criterion_main, Criterion};
use effectus::exec::RunCfg;
use effectus::laws;
use effectus::prob::Prob;
use effectus::quantum::{QObject, Quantum};

fn cfg(parallel: bool) -> RunCfg {
    RunCfg {
        seed: 1,
        eps: 1e-9,
        max_size: 256,
        parallel,
    }
}

fn bench_quantum_oml(c: &mut Criterion) {
    let quantum = Quantum::new(1e-9);
    let objects = [QObject::simple(2), QObject::simple(3)];
    let mut group = c.benchmark_group("oml-quantum");
    group.sample_size(10);
    group.bench_function("par", |b| {
        b.iter(|| laws::oml_suite(&quantum, &objects, &cfg(true), 120))
    });
    group.bench_function("seq", |b| {
        b.iter(|| laws::oml_suite(&quantum, &objects, &cfg(false), 120))
    });
    group.finish();
}

fn bench_effectus_suite(c: &mut Criterion) {
    let prob = Prob;
    let mut group = c.benchmark_group("effectus-prob");
    group.sample_size(10);
    group.bench_function("par", |b| {
        b.iter(|| laws::effectus_suite(&prob, &cfg(true)))
    });
    group.bench_function("seq", |b| {
        b.iter(|| laws::effectus_suite(&prob, &cfg(false)))
    });
    group.finish();
}

criterion_group!(benches, bench_quantum_oml, bench_effectus_suite);
criterion_main!(benches);
