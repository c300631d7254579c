//! Powering benchmarks: Redei strategies and point powers.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use num_rational::BigRational;

use conics_core::point_power::fg_pair;
use conics_core::{ConicParams, ConicPoint, Fp, PrimeModulus, RedeiContext, Strategy};

/// `(h, d, z) = (0, 2, 1)`, whose pairs solve `N^2 - 2D^2 = (-1)^n`.
pub fn pell_context() -> RedeiContext<BigRational> {
    RedeiContext::new(rational(0), rational(2), rational(1)).expect("rational")
}

pub fn prime_context() -> RedeiContext<Fp> {
    let m = PrimeModulus::new(2_305_843_009_213_693_951).expect("Mersenne prime");
    RedeiContext::new(Fp::new(3, m), Fp::new(5, m), Fp::new(7, m)).expect("same modulus")
}

/// `(4, 1)` on `E(-13/4, 2)`.
pub fn hyperbola_point() -> ConicPoint<BigRational> {
    let e = ConicParams::new(BigRational::new((-13).into(), 4.into()), rational(2)).expect("rational");
    ConicPoint::new(rational(4), rational(1), &e).expect("on the conic")
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn fold<F: conics_core::Field>(p: &ConicPoint<F>, n: u64) -> ConicPoint<F> {
    (0..n).fold(ConicPoint::identity(p.params()), |acc, _| acc.mul(p).expect("same params"))
}

pub fn redei_strategies(c: &mut Criterion) {
    let ctx = pell_context();
    let mut group = c.benchmark_group("redei/rational");
    for n in [16u64, 128, 1024] {
        for strategy in [Strategy::Matrix, Strategy::Recurrence, Strategy::Naive] {
            group.bench_with_input(BenchmarkId::new(strategy.to_string(), n), &n, |b, &n| {
                b.iter(|| ctx.pair(black_box(n), strategy))
            });
        }
    }
    group.finish();

    let ctx = prime_context();
    let mut group = c.benchmark_group("redei/fp");
    for n in [1u64 << 10, 1 << 20, 1 << 40] {
        group.bench_with_input(BenchmarkId::new("matrix", n), &n, |b, &n| b.iter(|| ctx.pair(black_box(n), Strategy::Matrix)));
        if n <= 1 << 20 {
            group.bench_with_input(BenchmarkId::new("recurrence", n), &n, |b, &n| {
                b.iter(|| ctx.pair(black_box(n), Strategy::Recurrence))
            });
        }
    }
    group.finish();
}

pub fn point_powers(c: &mut Criterion) {
    let p = hyperbola_point();
    let mut group = c.benchmark_group("power/rational");
    for n in [16u64, 128, 512] {
        group.bench_with_input(BenchmarkId::new("pow", n), &n, |b, &n| b.iter(|| p.pow(black_box(n as i64))));
        group.bench_with_input(BenchmarkId::new("fg_pair", n), &n, |b, &n| b.iter(|| fg_pair(&p, black_box(n))));
        group.bench_with_input(BenchmarkId::new("fold", n), &n, |b, &n| b.iter(|| fold(&p, black_box(n))));
    }
    group.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    redei_strategies(c);
    point_powers(c);
}
