use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqdelib::population::sample_population;
use seqdelib::{
    nash_bargain, nearest_alternative, optimal_alternative, run_deliberation, Agent, BargainScheme,
    DecisionSpace, PopulationSpec,
};

fn bench_bargain(c: &mut Criterion) {
    let line = DecisionSpace::line(50).unwrap();
    let (u, v) = (Agent::at(0, 0.23), Agent::at(1, 0.71));
    let threat = nearest_alternative(&line, 0.9).unwrap();
    c.bench_function("nash_bargain line/50", |b| {
        b.iter(|| nash_bargain(black_box(&line), black_box(&u), black_box(&v), threat))
    });
}

fn bench_deliberation(c: &mut Criterion) {
    let line = DecisionSpace::line(50).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let population = sample_population(&PopulationSpec::default(), &mut rng).unwrap();
    for scheme in [
        BargainScheme::Nash,
        BargainScheme::Selfish,
        BargainScheme::unselfish(),
    ] {
        c.bench_function(&format!("deliberation {} T=10", scheme.name()), |b| {
            b.iter(|| {
                run_deliberation(&line, black_box(&population), &scheme, 10, &mut rng).unwrap()
            })
        });
    }
    c.bench_function("optimal_alternative 300 agents", |b| {
        b.iter(|| optimal_alternative(&line, black_box(&population)))
    });
}

criterion_group!(benches, bench_bargain, bench_deliberation);
criterion_main!(benches);
