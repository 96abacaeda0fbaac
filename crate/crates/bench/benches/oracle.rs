use criterion::{criterion_group, criterion_main, Criterion};
use mincomp::{oracle_minimality_status, OracleConfig, OracleSide};
use mincomp_bench::{order_sixteen, punctured};

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    for g in order_sixteen() {
        let subject = punctured(&g);
        for workers in [1, 8] {
            let cfg = OracleConfig::with_bound(16).with_workers(workers);
            group.bench_function(format!("{} punctured, {workers} workers", g.name()), |b| {
                b.iter(|| oracle_minimality_status(&subject, OracleSide::Both, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
