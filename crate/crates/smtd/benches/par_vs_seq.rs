//! Parallel vs sequential: the same search and the same property suite with
//! the worker pool on and off. Without the `parallel` feature both arms run
//! sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use smtd::reductions::{gen_from_independent_set, gen_from_not1in3, Graph, QFormula};
use smtd::solvers::{solve_bruteforce, solve_few_students, solve_xp_small_capacity, SolveMode, SolveOptions};
use smtd::suite::{oracle_suite, SuiteConfig};

fn arms() -> [(&'static str, SolveOptions); 2] {
    [
        ("parallel", SolveOptions { parallel: true, ..SolveOptions::default() }),
        ("sequential", SolveOptions::sequential()),
    ]
}

fn solvers(c: &mut Criterion) {
    // no stable matching: every search runs to exhaustion
    let q = QFormula { r: 1, clauses: vec![] };
    let not1in3 = gen_from_not1in3(&q).unwrap();
    let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let indset = gen_from_independent_set(&g, 2).unwrap();

    let mut group = c.benchmark_group("solvers");
    group.sample_size(10);
    for (arm, opts) in arms() {
        group.bench_with_input(BenchmarkId::new("brute/not1in3", arm), &opts, |b, o| {
            b.iter(|| black_box(solve_bruteforce(&not1in3, SolveMode::Stable, o).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("few-students/not1in3", arm), &opts, |b, o| {
            b.iter(|| black_box(solve_few_students(&not1in3, o).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("xp-mq/indset", arm), &opts, |b, o| {
            b.iter(|| black_box(solve_xp_small_capacity(&indset, SolveMode::Stable, o).unwrap()))
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_suite");
    group.sample_size(10);
    for (arm, parallel) in [("parallel", true), ("sequential", false)] {
        let cfg = SuiteConfig { count: 100, parallel, ..SuiteConfig::default() };
        group.bench_with_input(BenchmarkId::from_parameter(arm), &cfg, |b, cfg| b.iter(|| black_box(oracle_suite(cfg))));
    }
    group.finish();
}

criterion_group!(benches, solvers, suites);
criterion_main!(benches);
