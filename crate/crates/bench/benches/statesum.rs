use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use knotamp::models::{bracket_model, swap_fg_model, virtual_model};
use knotamp::skein::skein_bracket;
use knotamp::statesum::{evaluate, evaluate_batch};
use knotamp::yangbaxter::check_model;
use knotamp::{parse_braid, MorseDiagram};

fn closure(s: &str) -> MorseDiagram {
    parse_braid(s).unwrap().to_morse(true)
}

fn twist(strands: usize, reps: usize) -> MorseDiagram {
    let word: String = (0..reps).flat_map(|_| (1..strands).map(|i| format!(" s{i}"))).collect();
    closure(&format!("{strands}:{word}"))
}

fn engine_vs_oracle(c: &mut Criterion) {
    let m = bracket_model();
    let mut g = c.benchmark_group("bracket");
    for crossings in [4usize, 8, 12] {
        let d = twist(3, crossings / 2);
        g.bench_with_input(BenchmarkId::new("transfer", crossings), &d, |b, d| b.iter(|| evaluate(black_box(d), &m).unwrap()));
        g.bench_with_input(BenchmarkId::new("skein", crossings), &d, |b, d| b.iter(|| skein_bracket(black_box(d)).unwrap()));
    }
    g.finish();
}

fn width(c: &mut Criterion) {
    let m = bracket_model();
    let mut g = c.benchmark_group("width");
    for strands in [2usize, 3, 4, 5, 6] {
        let d = twist(strands, 3);
        g.bench_with_input(BenchmarkId::from_parameter(strands), &d, |b, d| b.iter(|| evaluate(black_box(d), &m).unwrap()));
    }
    g.finish();
}

fn models(c: &mut Criterion) {
    let d = closure("3: s1 s2^-1 s1 s2^-1 s1 s2^-1");
    let (sw, vi) = (swap_fg_model(), virtual_model());
    c.bench_function("swapfg/borromean", |b| b.iter(|| evaluate(black_box(&d), &sw).unwrap()));
    c.bench_function("virtual/borromean", |b| b.iter(|| evaluate(black_box(&d), &vi).unwrap()));
    c.bench_function("check_model/bracket", |b| b.iter(|| check_model(black_box(&bracket_model()))));
}

fn batch(c: &mut Criterion) {
    let m = bracket_model();
    let ds: Vec<MorseDiagram> = (2..=4).flat_map(|n| (1..=8).map(move |r| twist(n, r))).collect();
    let mut g = c.benchmark_group("batch");
    for jobs in [1usize, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(jobs), &jobs, |b, &j| b.iter(|| evaluate_batch(black_box(&ds), &m, j)));
    }
    g.finish();
}

criterion_group!(benches, engine_vs_oracle, width, models, batch);
criterion_main!(benches);
