use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use schubert_core::combinatorics::SchubertData;
use schubert_core::harness::{Experiment, ExperimentConfig};
use schubert_core::model::Instance;
use schubert_core::solver::{solve_instance, SolveOptions};

/// One instance per necklace for `rounds` rounds of a problem.
fn batch(ft: &str, sd: &str, degree: usize, range: u64, rounds: u64) -> (Vec<Instance>, usize) {
    let sd = SchubertData::parse(ft.parse().unwrap(), sd).unwrap();
    let mut cfg = ExperimentConfig::new(sd.flag_type(), &sd.counts(), degree);
    cfg.sampling_range = range;
    cfg.iterations = rounds;
    let exp = Experiment::new(cfg).unwrap();
    let mut out = Vec::new();
    for r in 0..rounds {
        let pts = exp.round_points(r).unwrap();
        for nk in exp.necklaces() {
            out.push(schubert_core::harness::assign_by_necklace(nk, exp.data(), &pts).unwrap());
        }
    }
    (out, degree)
}

fn solve_all(batch: &[Instance], degree: usize) -> usize {
    batch
        .iter()
        .map(|inst| {
            solve_instance(inst, Some(degree), &SolveOptions::default())
                .unwrap()
                .real_count
                .unwrap_or(0)
        })
        .sum()
}

#[cfg(feature = "parallel")]
fn solve_all_par(batch: &[Instance], degree: usize) -> usize {
    batch
        .par_iter()
        .map(|inst| {
            solve_instance(inst, Some(degree), &SolveOptions::default())
                .unwrap()
                .real_count
                .unwrap_or(0)
        })
        .sum()
}

fn bench_batches(c: &mut Criterion) {
    let batches = [
        ("fl234", batch("2,3;4", "1324^3 1243^2", 2, 1 << 16, 32)),
        ("fl246", batch("2,4;6", "142536^4", 6, 1 << 10, 8)),
        ("fl235", batch("2,3;5", "13245^4 12435^4", 12, 64, 1)),
    ];
    let mut group = c.benchmark_group("batch_solve");
    group.sample_size(10);
    for (name, (instances, degree)) in &batches {
        group.bench_with_input(
            BenchmarkId::new("sequential", name),
            instances,
            |b, inst| b.iter(|| solve_all(inst, *degree)),
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", name), instances, |b, inst| {
            b.iter(|| solve_all_par(inst, *degree))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_batches);
criterion_main!(benches);
