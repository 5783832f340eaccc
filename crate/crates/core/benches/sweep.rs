use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use prm_hull::sweep::{self, Execution, Mode};

fn sweeps(c: &mut Criterion) {
    let cases: [(Mode, &[u32], u32); 3] =
        [(Mode::Hull, &[4, 5], 2), (Mode::Dim, &[7, 8], 2), (Mode::Recursion, &[7, 8], 3)];
    for (mode, qs, m) in cases {
        let mut group = c.benchmark_group(format!("sweep_{mode}"));
        group.sample_size(10);
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel { jobs: None })] {
            group.bench_with_input(BenchmarkId::new(label, m), &exec, |b, &exec| {
                b.iter(|| black_box(sweep::run(mode, qs, m, exec).unwrap()))
            });
        }
        group.finish();
    }
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
