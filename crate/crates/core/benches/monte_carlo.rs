use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use treeaut::experiment::collect_samples;
use treeaut::{Execution, ExperimentConfig, Family};

fn sequential_vs_parallel(c: &mut Criterion) {
    for family in [Family::LabeledRooted, Family::PolyaRooted] {
        let mut group = c.benchmark_group(format!("clt/{family}"));
        group.sample_size(10);
        for (name, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            let mut config = ExperimentConfig::new(family.clone(), vec![500, 1000], 200, 7);
            config.execution = execution;
            group.bench_function(name, |b| b.iter(|| black_box(collect_samples(&config).unwrap())));
        }
        group.finish();
    }
}

criterion_group!(benches, sequential_vs_parallel);
criterion_main!(benches);
