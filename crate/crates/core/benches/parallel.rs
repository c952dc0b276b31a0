use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twoweight::{classify_parameters, enumerate_candidates, ClassifyOptions, Exec, Geometry};

const PATHS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn candidates(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_candidates");
    for k in [8, 10] {
        for (name, exec) in PATHS {
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| {
                b.iter(|| enumerate_candidates(k, 2, true, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let geo = Arc::new(Geometry::new(2, 4).unwrap());
    let mut group = c.benchmark_group("classify_pg3_2");
    group.sample_size(20);
    for (name, exec) in PATHS {
        let opts = ClassifyOptions { exec, ..Default::default() };
        group.bench_function(name, |b| b.iter(|| classify_parameters(&geo, None, &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, candidates, classification);
criterion_main!(benches);
