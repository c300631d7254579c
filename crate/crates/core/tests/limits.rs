use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use conics_core::approx::{point_ratio_limit, recurrence_ratio_limit, RecurrenceLimitSpec};
use conics_core::{ConicParams, ConicPoint};

fn q(s: &str) -> BigRational {
    s.parse().unwrap()
}

fn pow10(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), k)
}

/// Integer-root bounds `lo <= sqrt(n) <= hi` with `hi - lo = 10^-digits`.
fn sqrt_bounds(n: u32, digits: usize) -> (BigRational, BigRational) {
    let scale = pow10(digits);
    let r = (BigInt::from(n) * &scale * &scale).sqrt();
    (BigRational::new(r.clone(), scale.clone()), BigRational::new(r + 1, scale))
}

/// `t_N` of `t_(k+1) = r t_k - k t_(k-1)`, stepped one term at a time.
fn iterate(t0: BigRational, t1: BigRational, r: &BigRational, k: &BigRational, n: usize) -> BigRational {
    let (mut prev, mut cur) = (t0, t1);
    for _ in 1..n {
        let next = r * &cur - k * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn recurrence_limit_sqrt2_over_2_plus_sqrt2() {
    let spec = RecurrenceLimitSpec { a0: q("1"), a1: q("1"), b0: q("1"), b1: q("3"), w: q("1"), c: q("2") };
    let lim = recurrence_ratio_limit(&spec).unwrap();

    // sqrt2/(2 + sqrt2) = sqrt2 - 1
    let (lo, hi) = sqrt_bounds(2, 50);
    let (lo, hi) = (lo - BigRational::one(), hi - BigRational::one());
    let (llo, lhi) = lim.bounds(50).unwrap();
    assert!(llo <= hi && lhi >= lo, "{lim} is not sqrt2 - 1");

    // characteristic t^2 - 2t - 1
    let (r, k) = (q("2"), q("-1"));
    let ratio = iterate(q("1"), q("1"), &r, &k, 200) / iterate(q("1"), q("3"), &r, &k, 200);
    let tol = BigRational::new(BigInt::one(), pow10(20));
    assert!(ratio > &lo - &tol && ratio < &hi + &tol);
}

#[test]
fn pell_point_limit_is_one_over_sqrt2() {
    let e = ConicParams::new(q("0"), q("2")).unwrap();
    let p = ConicPoint::new(q("3"), q("2"), &e).unwrap();
    let lim = point_ratio_limit(&p).unwrap();

    // (x, y) * (3, 2) on x^2 - 2y^2 = 1
    let (mut x, mut y) = (BigInt::one(), BigInt::from(0));
    for _ in 0..40 {
        (x, y) = (&x * 3 + &y * 4, &y * 3 + &x * 2);
    }
    assert_eq!(&x * &x - BigInt::from(2) * &y * &y, BigInt::one());
    let ratio = BigRational::new(y, x);

    // 1/sqrt2 = sqrt2/2
    let (lo, hi) = sqrt_bounds(2, 40);
    let half = q("1/2");
    let (lo, hi) = (lo * &half, hi * &half);
    let tol = BigRational::new(BigInt::one(), pow10(30));
    assert!(ratio > &lo - &tol && ratio < &hi + &tol);
    let (llo, lhi) = lim.bounds(40).unwrap();
    assert!((&llo - &ratio).abs() < tol && (&lhi - &ratio).abs() < tol);
    assert_eq!(p.pow(40).y() / p.pow(40).x(), ratio);
}

#[test]
fn limit_decimal_renders_at_the_requested_places() {
    let e = ConicParams::new(q("0"), q("2")).unwrap();
    let p = ConicPoint::new(q("3"), q("2"), &e).unwrap();
    assert_eq!(point_ratio_limit(&p).unwrap().to_decimal(10), "0.7071067812");
}
