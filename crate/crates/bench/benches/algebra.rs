use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qprofile::counting::{partitions_of, sigma_poly, whittaker_coefficient};
use qprofile::ffield::field_of_order;
use qprofile::fqpoly::{char_poly, invariant_factors, smallest_irreducible};
use qprofile::oracle::{random_operator, random_simple_partial_map};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra(c: &mut Criterion) {
    let f = field_of_order(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = random_operator(&f, 8, &mut rng);
    c.bench_function("char_poly 8x8 over F_3", |b| b.iter(|| char_poly(black_box(&t)).unwrap()));
    c.bench_function("rank 8x8 over F_3", |b| b.iter(|| black_box(&t).rank()));

    let pm = random_simple_partial_map(&f, 6, 3, &mut rng).unwrap();
    c.bench_function("invariant factors 6x3 pencil", |b| b.iter(|| invariant_factors(black_box(&pm)).unwrap()));
    c.bench_function("defect chain 6x3", |b| b.iter(|| black_box(&pm).defect_dimensions().unwrap()));

    let f16 = field_of_order(16).unwrap();
    c.bench_function("smallest irreducible deg 4 over F_16", |b| b.iter(|| smallest_irreducible(&f16, 4).unwrap()));

    c.bench_function("sigma_poly over all partitions of 12", |b| {
        b.iter(|| partitions_of(12).iter().map(|mu| sigma_poly(mu).unwrap()).collect::<Vec<_>>())
    });
    c.bench_function("whittaker over all partitions of 12", |b| {
        b.iter(|| partitions_of(12).iter().map(|mu| whittaker_coefficient(mu).unwrap()).collect::<Vec<_>>())
    });
}

criterion_group!(benches, algebra);
criterion_main!(benches);
