//! Seeded generators for the property suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use conics_core::field::{Field, Fp, PrimeModulus};
use conics_core::{ConicParams, ConicPoint, ParamValue};

/// Numerator in `-num..=num`, denominator in `1..=den`.
pub fn rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-num..=num)), BigInt::from(rng.gen_range(1..=den)))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    loop {
        let v = rational(rng, num, den);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Positive rational with numerator in `1..=num`.
pub fn positive_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(1..=num)), BigInt::from(rng.gen_range(1..=den)))
}

pub fn fp(rng: &mut ChaCha8Rng, m: PrimeModulus) -> Fp {
    Fp::new(rng.gen_range(0..m.get()) as i64, m)
}

pub fn modulus(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("odd prime")
}

/// `(h, d)` over F_p with `h^2 + 4d` a non-residue.
pub fn irreducible_fp_params(rng: &mut ChaCha8Rng, m: PrimeModulus) -> ConicParams<Fp> {
    loop {
        let (h, d) = (fp(rng, m), fp(rng, m));
        let delta = h * h + Fp::new(4, m) * d;
        if delta.legendre() == -1 {
            return ConicParams::new(h, d).expect("same modulus");
        }
    }
}

fn is_rational_square(q: &BigRational) -> bool {
    let square = |n: &BigInt| n.sqrt().pow(2) == *n;
    !q.is_negative() && square(q.numer()) && square(q.denom())
}

/// `(h, d)` over the rationals with `h^2 + 4d` not a square, so that the
/// parametrization has no poles.
pub fn irreducible_rational_params(rng: &mut ChaCha8Rng) -> ConicParams<BigRational> {
    loop {
        let (h, d) = (rational(rng, 6, 3), rational(rng, 6, 3));
        let delta = &h * &h + BigRational::from_integer(4.into()) * &d;
        if !is_rational_square(&delta) {
            return ConicParams::new(h, d).expect("rational");
        }
    }
}

/// Every affine point of the conic, by exhaustive search.
pub fn all_points(params: &ConicParams<Fp>) -> Vec<ConicPoint<Fp>> {
    let m = params.h().modulus();
    let mut out = Vec::new();
    for x in m.elements() {
        for y in m.elements() {
            if let Ok(p) = ConicPoint::new(x, y, params) {
                out.push(p);
            }
        }
    }
    out
}

pub fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items.choose(rng).expect("nonempty").clone()
}

/// A rational point `((m^2 + d) / den, (2m + h) / den)` validated against
/// the conic equation, or the identity one time in eight.
pub fn rational_point(rng: &mut ChaCha8Rng, params: &ConicParams<BigRational>) -> ConicPoint<BigRational> {
    if rng.gen_range(0..8) == 0 {
        return ConicPoint::identity(params);
    }
    loop {
        let m = rational(rng, 9, 4);
        let (h, d) = (params.h(), params.d());
        let den = &m * &m + h * &m - d;
        if den.is_zero() {
            continue;
        }
        let x = (&m * &m + d) / &den;
        let y = (BigRational::from_integer(2.into()) * &m + h) / &den;
        return ConicPoint::new(x, y, params).expect("parametrized point lies on the conic");
    }
}

pub fn fp_param(rng: &mut ChaCha8Rng, m: PrimeModulus) -> ParamValue<Fp> {
    if rng.gen_range(0..=m.get()) == 0 {
        ParamValue::Alpha
    } else {
        ParamValue::Finite(fp(rng, m))
    }
}

pub fn rational_param(rng: &mut ChaCha8Rng) -> ParamValue<BigRational> {
    if rng.gen_range(0..8) == 0 {
        ParamValue::Alpha
    } else {
        ParamValue::Finite(rational(rng, 9, 4))
    }
}

/// Coefficient generator for a field, used by the generic suites.
pub trait Draw: Field {
    fn draw(rng: &mut ChaCha8Rng, ctx: &Self::Ctx) -> Self;
}

impl Draw for Fp {
    fn draw(rng: &mut ChaCha8Rng, ctx: &PrimeModulus) -> Self {
        fp(rng, *ctx)
    }
}

impl Draw for BigRational {
    fn draw(rng: &mut ChaCha8Rng, _: &()) -> Self {
        rational(rng, 9, 4)
    }
}
