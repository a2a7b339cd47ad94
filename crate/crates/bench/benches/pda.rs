use coded_caching::analysis::{brute_force_min_f, table_vi, DEFAULT_SEARCH_BUDGET};
use coded_caching::constructions::{construction_a, construction_b, maddah_ali_niesen};
use coded_caching::{CachingInstance, DemandVector, Detail, VerifyMode};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for (q, m) in [(2u64, 4u32), (3, 3), (4, 3)] {
        group.bench_with_input(
            BenchmarkId::new("a", format!("{q},{m}")),
            &(q, m),
            |b, &(q, m)| b.iter(|| construction_a(black_box(q), black_box(m)).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("b", format!("{q},{m}")),
            &(q, m),
            |b, &(q, m)| b.iter(|| construction_b(black_box(q), black_box(m)).unwrap()),
        );
    }
    for (k, t) in [(10usize, 5usize), (14, 7)] {
        group.bench_with_input(
            BenchmarkId::new("an", format!("{k},{t}")),
            &(k, t),
            |b, &(k, t)| b.iter(|| maddah_ali_niesen(black_box(k), black_box(t)).unwrap()),
        );
    }
    group.finish();
}

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    let arrays = [
        ("a(3,3)", construction_a(3, 3).unwrap()),
        ("b(3,3)", construction_b(3, 3).unwrap()),
        ("an(12,6)", maddah_ali_niesen(12, 6).unwrap()),
    ];
    for (name, p) in &arrays {
        group.bench_function(*name, |b| b.iter(|| black_box(p).validate()));
    }
    group.finish();
}

fn delivery(c: &mut Criterion) {
    let inst = CachingInstance::place(construction_a(3, 2).unwrap(), 9)
        .unwrap()
        .with_random_payloads(1024, 1);
    let demand = DemandVector((0..9).collect());
    c.bench_function("deliver_decode a(3,2) 1KiB", |b| {
        b.iter(|| inst.run_demand(black_box(&demand)).unwrap())
    });

    let small = CachingInstance::place(construction_a(2, 2).unwrap(), 6)
        .unwrap()
        .with_random_payloads(16, 1);
    c.bench_function("verify sample 1000 a(2,2)", |b| {
        b.iter(|| {
            small
                .verify_demands(
                    VerifyMode::Sample {
                        count: 1000,
                        seed: 5,
                    },
                    Detail::Summary,
                )
                .unwrap()
        })
    });
}

fn analysis(c: &mut Criterion) {
    c.bench_function("table_vi", |b| b.iter(table_vi));
    c.bench_function("search K=4 g=3", |b| {
        b.iter(|| brute_force_min_f(4, 3, 2, 8, DEFAULT_SEARCH_BUDGET).unwrap())
    });
}

criterion_group!(benches, constructions, validation, delivery, analysis);
criterion_main!(benches);
