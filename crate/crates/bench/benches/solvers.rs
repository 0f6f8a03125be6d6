use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssr_core::rational::ratio;
use ssr_core::{approximate, generate, solve_anchored, IntegerInstance};

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_anchored");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [8usize, 16, 32, 64] {
        let mut w = generate::random_u64(&mut rng, 2 * n, 100);
        w[0] = 50;
        let inst = IntegerInstance::from_u64(&w, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| solve_anchored(inst).unwrap())
        });
    }
    group.finish();
}

fn fptas(c: &mut Criterion) {
    let mut group = c.benchmark_group("fptas");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [4usize, 8, 16] {
        let inst = generate::random_two_set(&mut rng, n, 50);
        for (p, q) in [(1, 2), (1, 4)] {
            let eps = ratio(p, q);
            group.bench_with_input(
                BenchmarkId::new(format!("eps={p}/{q}"), n),
                &inst,
                |b, inst| b.iter(|| approximate(inst, &eps).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, exact, fptas);
criterion_main!(benches);
