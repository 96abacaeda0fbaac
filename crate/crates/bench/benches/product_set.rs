use criterion::{criterion_group, criterion_main, Criterion};
use mincomp::{product_set, FiniteGroup, GroupSubset};
use mincomp_bench::scattered;

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("product_set");
    for n in [256, 1024, 4096] {
        let g = FiniteGroup::cyclic(n).unwrap();
        let (a, b) = (scattered(&g, 1), scattered(&g, 2));
        group.bench_function(format!("cyclic({n}) scattered"), |bench| bench.iter(|| product_set(&a, &b).unwrap()));
    }
    let g = FiniteGroup::cyclic(4096).unwrap();
    let full = GroupSubset::full(&g);
    group.bench_function("cyclic(4096) full", |bench| bench.iter(|| product_set(&full, &full).unwrap()));
    let d = FiniteGroup::dihedral(512).unwrap();
    let (a, b) = (scattered(&d, 3), scattered(&d, 4));
    group.bench_function("dihedral(512) scattered", |bench| bench.iter(|| product_set(&a, &b).unwrap()));
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
