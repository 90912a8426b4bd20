use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pgroup_bench::{elements, group};

fn multiply(c: &mut Criterion) {
    let mut grp = c.benchmark_group("multiply");
    for spec in [
        "dihedral:1024",
        "blackburn_metacyclic:2,4,4,2",
        "unitriangular4:3",
        "wreath_cyclic:3",
    ] {
        let g = group(spec);
        let xs = elements(&g, 64);
        grp.bench_with_input(BenchmarkId::from_parameter(spec), &xs, |b, xs| {
            b.iter(|| {
                let mut acc = g.identity();
                for x in xs {
                    acc = g.multiply(&acc, black_box(x)).unwrap();
                }
                acc
            })
        });
    }
    grp.finish();
}

fn close(c: &mut Criterion) {
    let mut grp = c.benchmark_group("close");
    for spec in [
        "dihedral:512",
        "unitriangular4:3",
        "quaternion:16*dihedral:16",
    ] {
        let g = group(spec);
        let gens = elements(&g, 3);
        grp.bench_with_input(BenchmarkId::from_parameter(spec), &gens, |b, gens| {
            b.iter(|| g.close(black_box(gens)).unwrap())
        });
    }
    grp.finish();
}

fn witness_exhaustive(c: &mut Criterion) {
    let mut grp = c.benchmark_group("witness_exhaustive");
    grp.sample_size(10);
    for spec in [
        "dihedral:256",
        "heisenberg:5",
        "wreath_cyclic:3",
        "dihedral:16*dihedral:8",
    ] {
        let g = group(spec);
        grp.bench_function(BenchmarkId::from_parameter(spec), |b| {
            b.iter(|| g.witness_exhaustive().unwrap())
        });
    }
    grp.finish();
}

criterion_group!(benches, multiply, close, witness_exhaustive);
criterion_main!(benches);
