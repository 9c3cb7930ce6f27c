use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use closure_lattice::{closed_form_char_poly, mlb_closure, ElementSet, JoinAlgorithm, LcLattice, DEFAULT_SIZE_LIMIT};
use closure_lattice_bench::sample_poset;

const SIZES: [usize; 4] = [6, 9, 12, 15];

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for size in SIZES {
        let p = sample_poset(size, 7);
        group.bench_with_input(BenchmarkId::from_parameter(size), &p, |b, p| {
            b.iter(|| LcLattice::build(black_box(p), DEFAULT_SIZE_LIMIT).unwrap())
        });
    }
    group.finish();
}

fn closure_of_subsets(c: &mut Criterion) {
    let mut group = c.benchmark_group("mlb_closure");
    for size in SIZES {
        let p = sample_poset(size, 7);
        let subsets: Vec<ElementSet> = (0..64u64).map(|i| ElementSet::from_bits(i.wrapping_mul(0x9e37_79b9) & p.all().bits())).collect();
        group.bench_with_input(BenchmarkId::from_parameter(size), &p, |b, p| {
            b.iter(|| subsets.iter().map(|&s| mlb_closure(p, s).len()).sum::<usize>())
        });
    }
    group.finish();
}

fn joins(c: &mut Criterion) {
    let mut group = c.benchmark_group("join");
    let p = sample_poset(9, 7);
    let closures = LcLattice::build(&p, DEFAULT_SIZE_LIMIT).unwrap().closures();
    for (name, algorithm) in [("intersection", JoinAlgorithm::ClosedSetIntersection), ("partition", JoinAlgorithm::PartitionJoin)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                for h in closures.iter().take(16) {
                    for k in closures.iter().rev().take(16) {
                        black_box(h.join_with(k, algorithm).unwrap());
                    }
                }
            })
        });
    }
    group.finish();
}

fn characteristic_polynomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("charpoly");
    let p = sample_poset(12, 7);
    let lattice = LcLattice::build(&p, DEFAULT_SIZE_LIMIT).unwrap();
    group.bench_function("mobius", |b| b.iter(|| black_box(&lattice).characteristic_polynomial()));
    group.bench_function("closed_form", |b| b.iter(|| closed_form_char_poly(black_box(&p)).unwrap()));
    group.finish();
}

criterion_group!(benches, build, closure_of_subsets, joins, characteristic_polynomial);
criterion_main!(benches);
