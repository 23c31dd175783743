use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rwlogic_core::{
    cut_rank, evaluate, exact_rankwidth, generate, graph_state_tableau, greedy_decomposition,
    named_formula, Basis, Gf2Matrix, GraphKind, PauliOperator,
};

fn gf2_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank2");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [64, 256, 1024] {
        let m = Gf2Matrix::from_fn(n, n, |_, _| rng.gen());
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m).rank())
        });
    }
    group.finish();
}

fn cut_ranks(c: &mut Criterion) {
    let g = generate(GraphKind::Grid, 32).unwrap();
    let half: Vec<usize> = (0..g.n() / 2).collect();
    c.bench_function("cut_rank grid 32 half", |b| {
        b.iter(|| cut_rank(black_box(&g), black_box(&half)).unwrap())
    });
}

fn rank_width(c: &mut Criterion) {
    let mut group = c.benchmark_group("rankwidth");
    group.sample_size(10);
    for (kind, size) in [
        (GraphKind::Grid, 3),
        (GraphKind::Cycle, 10),
        (GraphKind::Triangular, 3),
    ] {
        let g = generate(kind, size).unwrap();
        group.bench_function(format!("exact {kind} {size}"), |b| {
            b.iter(|| exact_rankwidth(black_box(&g)).unwrap())
        });
    }
    let big = generate(GraphKind::Grid, 12).unwrap();
    group.bench_function("greedy grid 12", |b| {
        b.iter(|| greedy_decomposition(black_box(&big)).unwrap())
    });
    group.finish();
}

fn stabilizer(c: &mut Criterion) {
    let g = generate(GraphKind::Grid, 8).unwrap();
    let n = g.n();
    c.bench_function("measure X on every qubit of grid 8", |b| {
        b.iter_batched(
            || (graph_state_tableau(&g), ChaCha8Rng::seed_from_u64(3)),
            |(mut t, mut rng)| {
                for q in 0..n {
                    let p = PauliOperator::single(n, q, Basis::X);
                    t.measure_pauli(&p, None, &mut rng).unwrap();
                }
                t
            },
            criterion::BatchSize::SmallInput,
        )
    });
}

fn model_checking(c: &mut Criterion) {
    let f = named_formula("two_colorable").unwrap();
    let mut group = c.benchmark_group("two_colorable");
    group.sample_size(10);
    for n in [6, 8] {
        let g = generate(GraphKind::Cycle, n).unwrap();
        group.bench_with_input(BenchmarkId::new("cycle", n), &g, |b, g| {
            b.iter(|| evaluate(black_box(g), &f).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    gf2_rank,
    cut_ranks,
    rank_width,
    stabilizer,
    model_checking
);
criterion_main!(benches);
