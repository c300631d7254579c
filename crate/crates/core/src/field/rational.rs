use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{mat2_pow_by, Field, FieldSpec};
use crate::decimal;
use crate::error::{Error, Result};

/// Normalizes the typographic minus sign and surrounding whitespace.
pub(crate) fn normalize_scalar(s: &str) -> String {
    s.trim().replace('\u{2212}', "-")
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = normalize_scalar(s);
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    decimal::parse(&s).ok_or_else(bad)
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl Field for BigRational {
    type Ctx = ();

    const EXACT: bool = true;

    fn context(&self) -> Self::Ctx {}

    fn spec(_: &Self::Ctx) -> FieldSpec {
        FieldSpec::Rational
    }

    fn from_i64(v: i64, _: &Self::Ctx) -> Self {
        BigRational::from_integer(v.into())
    }

    fn from_rational(v: &BigRational, _: &Self::Ctx) -> Result<Self> {
        Ok(v.clone())
    }

    fn parse(s: &str, _: &Self::Ctx) -> Result<Self> {
        parse_rational(s)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn is_square(&self) -> Result<bool> {
        // BigRational is always reduced with a positive denominator.
        Ok(is_perfect_square(self.numer()) && is_perfect_square(self.denom()))
    }

    fn sign(&self) -> Option<Ordering> {
        Some(self.cmp(&<BigRational as Zero>::zero()))
    }

    fn to_decimal(&self, places: usize) -> Option<String> {
        Some(decimal::round(self, places))
    }

    // Powers the integer matrix L*m and divides by L^n once, avoiding a gcd
    // after every product.
    fn mat2_pow(m: &[[Self; 2]; 2], n: u64) -> [[Self; 2]; 2] {
        let l = m.iter().flatten().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scaled = m.clone().map(|row| row.map(|v| (v * BigRational::from_integer(l.clone())).to_integer()));
        let power = mat2_pow_by(&scaled, n, BigInt::one(), BigInt::zero());
        let ln = num_traits::pow(l.clone(), usize::try_from(n).expect("exponent fits in memory"));
        power.map(|row| row.map(|v| over_power(v, &l, &ln)))
    }
}

/// `v / l^n` in lowest terms, given `ln = l^n > 0`. Every common factor of
/// `v` and `l^n` divides `l`, so only gcds against `l` are needed.
fn over_power(v: BigInt, l: &BigInt, ln: &BigInt) -> BigRational {
    if v.is_zero() {
        return <BigRational as Zero>::zero();
    }
    let (mut num, mut den) = (v, ln.clone());
    loop {
        let c = (&num % l).gcd(l);
        if c.is_one() {
            break;
        }
        let c = (&den % &c).gcd(&c);
        if c.is_one() {
            break;
        }
        num /= &c;
        den /= &c;
    }
    BigRational::new_raw(num, den)
}
