use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fixedbitset::FixedBitSet;

use crossfam_bench::{fragment_instances, kneser_instances, search_instances};
use crossfam_core::bipartite::{
    h_polynomial, hypothesis_grid, min_imprimitive_deficiency, BipartiteDisjointness, Side,
};
use crossfam_core::cross::{search_max_sum, SearchLimits};
use crossfam_core::rank::{colex_subsets, rank_subset};
use crossfam_core::SolverLimits;

fn ranking(c: &mut Criterion) {
    let subsets = colex_subsets(20, 6).unwrap();
    c.bench_function("rank C(20,6)", |b| {
        b.iter(|| subsets.iter().map(|&m| rank_subset(m, 20, 6).unwrap()).sum::<u64>())
    });
}

fn neighborhoods(c: &mut Criterion) {
    let mut group = c.benchmark_group("neighborhood");
    for (name, g) in kneser_instances() {
        let d = g.disjointness().unwrap();
        let len = d.from_layer().len();
        let mut set = FixedBitSet::with_capacity(len);
        set.extend((0..len).step_by(3));
        group.bench_with_input(BenchmarkId::from_parameter(name), &set, |b, set| {
            b.iter(|| d.neighborhood(black_box(set)).count_ones(..))
        });
    }
    group.finish();
}

fn independence_number(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha_exact");
    for (name, g) in kneser_instances() {
        g.adjacency().unwrap();
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| g.alpha_exact(SolverLimits::default()).unwrap().solver)
        });
    }
    group.finish();
}

fn max_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_max_sum");
    group.sample_size(10);
    for (spec, m) in search_instances() {
        group.bench_function(BenchmarkId::from_parameter(format!("{spec} m={m}")), |b| {
            b.iter(|| search_max_sum(&spec, m, true, SearchLimits::default()).unwrap().optimum)
        });
    }
    group.finish();
}

fn closed_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("epsilon");
    group.sample_size(10);
    for g in fragment_instances() {
        g.disjointness(Side::X).unwrap();
        g.disjointness(Side::Y).unwrap();
        let name = format!("n={:?} t={:?} s={:?}", g.n(), g.t(), g.s());
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| g.epsilon(Side::X).unwrap().epsilon)
        });
    }
    group.finish();
}

fn formula_grid(c: &mut Criterion) {
    let cells: Vec<BipartiteDisjointness> = hypothesis_grid(2, 9)
        .into_iter()
        .map(|(n, t, s)| BipartiteDisjointness::new(&n, &t, &s).unwrap())
        .collect();
    let mut group = c.benchmark_group("grid p=2 n<=9");
    group.sample_size(10);
    group.bench_function("min imprimitive deficiency", |b| {
        b.iter(|| {
            cells
                .iter()
                .map(|g| min_imprimitive_deficiency(g, Side::X).map_or(0, |v| v.len()))
                .sum::<usize>()
        })
    });
    group.bench_function("H polynomial", |b| {
        b.iter(|| cells.iter().filter(|g| h_polynomial(g, 0).unwrap().strict).count())
    });
    group.finish();
}

criterion_group!(
    benches,
    ranking,
    neighborhoods,
    independence_number,
    max_sum,
    closed_pairs,
    formula_grid
);
criterion_main!(benches);
