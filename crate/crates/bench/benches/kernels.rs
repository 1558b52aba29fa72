use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orthotype_bench::{CORNERS, TRIVIAL};
use orthotype_core::operator::subgroup_smoothing_blocks;
use orthotype_core::orthotype::DEFAULT_EPSILON;
use orthotype_core::{build_irrep, orthotype_sweep, HighestWeight, KernelSpec, SubgroupEmbedding};
use std::hint::black_box;

fn irreps(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_irrep");
    for (p, q) in [(2, 2), (4, 4)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{p},{q}")), &(p, q), |b, &(p, q)| {
            b.iter(|| build_irrep(black_box(HighestWeight::su3(p, q))).unwrap())
        });
    }
    g.finish();
}

fn projections(c: &mut Criterion) {
    let rep = build_irrep(HighestWeight::su3(3, 3)).unwrap();
    let emb = SubgroupEmbedding::standard(&rep, CORNERS[0]).unwrap();
    c.bench_function("projection/spectral (3,3)", |b| b.iter(|| emb.isotypic_projection(TRIVIAL).unwrap()));
    c.bench_function("projection/character (3,3)", |b| {
        b.iter(|| emb.isotypic_projection_by_character_auto(TRIVIAL).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("corners degree 6", |b| {
        b.iter(|| orthotype_sweep(TRIVIAL, TRIVIAL, CORNERS[0], CORNERS[1], 6, DEFAULT_EPSILON, None).unwrap())
    });
    g.bench_function("smoothing blocks N=4", |b| {
        let k = KernelSpec::projection(CORNERS[0], TRIVIAL);
        b.iter(|| subgroup_smoothing_blocks(&k, 4, None).unwrap())
    });
    g.finish();
}

criterion_group!(benches, irreps, projections, sweeps);
criterion_main!(benches);
