//! Benchmarks along the main computation paths: reduced simplicial
//! cohomology, fan construction and validation, and the full local
//! cohomology table with both computation routes on one multidegree.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use facering::cech::cech_cohomology;
use facering::toric::{embed, local_cohomology_dims, LocalCohomologyTable};
use facering::Field;
use facering_bench::{surface_complex, surface_fan};

fn reduced_cohomology(c: &mut Criterion) {
    let sc = surface_complex();
    for field in [Field::Rationals, Field::Prime(2)] {
        let name = format!("reduced_cohomology/{field}");
        c.bench_function(&name, |b| {
            b.iter(|| black_box(&sc).reduced_cohomology(&field).unwrap())
        });
    }
}

fn fan_validation(c: &mut Criterion) {
    let sc = surface_complex();
    c.bench_function("fan_of_complex/projective_plane", |b| {
        b.iter(|| facering::Fan::fan_of_complex(black_box(&sc)).unwrap())
    });
}

fn local_cohomology(c: &mut Criterion) {
    let sc = surface_complex();
    let fan = surface_fan();
    let q = Field::Rationals;
    c.bench_function("local_cohomology_table/projective_plane", |b| {
        b.iter(|| LocalCohomologyTable::new(black_box(fan.clone()), &q).unwrap())
    });
    let a = [-1i64, 0, 0, -1, 0, 0];
    c.bench_function("decomposition_route/one_degree", |b| {
        b.iter(|| local_cohomology_dims(black_box(&fan), &q, &embed(&a)).unwrap())
    });
    c.bench_function("cech_route/one_degree", |b| {
        b.iter(|| cech_cohomology(black_box(&sc), &a, &q).unwrap())
    });
}

criterion_group!(benches, reduced_cohomology, fan_validation, local_cohomology);
criterion_main!(benches);
