use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Field, FieldSpec};
use crate::decimal;
use crate::error::{Error, Result};
use crate::expr::RealExpr;

/// Extra decimal digits stored beyond the working precision.
pub const GUARD_DIGITS: u32 = 8;
/// Smallest accepted working precision.
pub const MIN_DIGITS: u32 = 16;

/// Working precision of a real field, in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision(u32);

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidField(format!(
                "real precision must be at least {MIN_DIGITS} digits, got {digits}"
            )));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    fn scale(self) -> BigInt {
        num_traits::pow(BigInt::from(10u32), (self.0 + GUARD_DIGITS) as usize)
    }

    /// Equality tolerance `10^(GUARD_DIGITS - digits)` in mantissa units.
    fn tolerance_units() -> BigInt {
        num_traits::pow(BigInt::from(10u32), 2 * GUARD_DIGITS as usize)
    }

    pub fn tolerance(self) -> BigRational {
        BigRational::new(Self::tolerance_units(), self.scale())
    }
}

/// A real number held in decimal fixed point with `digits + GUARD_DIGITS`
/// fractional digits.
///
/// Every operation rounds to nearest, so results carry an absolute error of a
/// few units in the last stored place. Comparisons use the tolerance of
/// [`Precision::tolerance`].
#[derive(Debug, Clone)]
pub struct Real {
    mantissa: BigInt,
    prec: Precision,
}

fn div_round(num: BigInt, den: &BigInt) -> BigInt {
    // Round half away from zero; `den` may be negative.
    let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den.clone()) };
    let neg = num.is_negative();
    let (q, r) = num.abs().div_rem(&den);
    let q = if r * 2 >= den { q + 1 } else { q };
    if neg {
        -q
    } else {
        q
    }
}

impl Real {
    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn from_expr(expr: &RealExpr, prec: Precision) -> Result<Self> {
        let (lo, hi) = expr.bounds(prec.digits() + GUARD_DIGITS + 2)?;
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        Ok(Self::round_rational(&mid, prec))
    }

    fn round_rational(v: &BigRational, prec: Precision) -> Self {
        let scaled = v * BigRational::from_integer(prec.scale());
        Real { mantissa: div_round(scaled.numer().clone(), scaled.denom()), prec }
    }

    /// The stored value as an exact rational.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), self.prec.scale())
    }

    pub fn sqrt(&self) -> Option<Self> {
        match self.sign_exact() {
            Ordering::Less => None,
            _ => Some(Real { mantissa: (&self.mantissa * self.prec.scale()).sqrt(), prec: self.prec }),
        }
    }

    fn sign_exact(&self) -> Ordering {
        self.mantissa.cmp(&BigInt::zero())
    }

    fn check(&self, rhs: &Real) {
        assert_eq!(self.prec, rhs.prec, "mixing reals of different precision");
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.check(other);
        (&self.mantissa - &other.mantissa).abs() <= Precision::tolerance_units()
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&decimal::round(&self.to_rational(), self.prec.digits() as usize))
    }
}

impl Add for Real {
    type Output = Real;

    fn add(self, rhs: Real) -> Real {
        self.check(&rhs);
        Real { mantissa: self.mantissa + rhs.mantissa, prec: self.prec }
    }
}

impl Sub for Real {
    type Output = Real;

    fn sub(self, rhs: Real) -> Real {
        self.check(&rhs);
        Real { mantissa: self.mantissa - rhs.mantissa, prec: self.prec }
    }
}

impl Mul for Real {
    type Output = Real;

    fn mul(self, rhs: Real) -> Real {
        self.check(&rhs);
        Real { mantissa: div_round(self.mantissa * rhs.mantissa, &self.prec.scale()), prec: self.prec }
    }
}

impl Neg for Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real { mantissa: -self.mantissa, prec: self.prec }
    }
}

impl Field for Real {
    type Ctx = Precision;

    const EXACT: bool = false;

    fn context(&self) -> Precision {
        self.prec
    }

    fn spec(ctx: &Precision) -> FieldSpec {
        FieldSpec::Real(ctx.digits())
    }

    fn from_i64(v: i64, ctx: &Precision) -> Self {
        Real { mantissa: BigInt::from(v) * ctx.scale(), prec: *ctx }
    }

    fn from_rational(v: &BigRational, ctx: &Precision) -> Result<Self> {
        Ok(Self::round_rational(v, *ctx))
    }

    /// Accepts decimals, `p/q`, the named constants `pi` and `sqrt:k`, and
    /// any expression understood by [`RealExpr`].
    fn parse(s: &str, ctx: &Precision) -> Result<Self> {
        let expr: RealExpr = s.parse()?;
        Self::from_expr(&expr, *ctx)
    }

    fn is_zero(&self) -> bool {
        self.mantissa.abs() <= Precision::tolerance_units()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let scale = self.prec.scale();
        Some(Real { mantissa: div_round(&scale * &scale, &self.mantissa), prec: self.prec })
    }

    fn is_square(&self) -> Result<bool> {
        Err(Error::AnalyticField)
    }

    fn sign(&self) -> Option<Ordering> {
        if self.is_zero() {
            Some(Ordering::Equal)
        } else {
            Some(self.sign_exact())
        }
    }

    fn to_decimal(&self, places: usize) -> Option<String> {
        Some(decimal::round(&self.to_rational(), places))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Real {
        Real::parse(s, &Precision::new(30).unwrap()).unwrap()
    }

    #[test]
    fn precision_bounds() {
        assert!(Precision::new(15).is_err());
        assert_eq!(Precision::new(16).unwrap().digits(), 16);
    }

    #[test]
    fn arithmetic_and_tolerance() {
        let two = r("2");
        let root = two.sqrt().unwrap();
        assert_eq!(root.clone() * root.clone(), two);
        assert_eq!(root.to_string(), "1.414213562373095048801688724210");
        assert_eq!((r("1/3") * r("3")), r("1"));
        assert!((r("1") - r("1")).is_zero());
        assert_eq!(r("4").inv().unwrap(), r("0.25"));
        assert!(r("0").inv().is_none());
        assert_eq!(r("-2").sign(), Some(Ordering::Less));
        assert!(r("-1").sqrt().is_none());
        assert_eq!(r("pi").to_decimal(10).unwrap(), "3.1415926536");
        assert_eq!(r("sqrt:2"), root);
    }

    #[test]
    fn tolerance_contract() {
        let prec = Precision::new(20).unwrap();
        let one = Real::from_i64(1, &prec);
        let tol = prec.tolerance();
        assert_eq!(tol, BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 12)));
        let close = Real::from_rational(&(BigRational::from_integer(1.into()) + &tol), &prec).unwrap();
        let far = Real::from_rational(&(BigRational::from_integer(1.into()) + &tol * BigRational::from_integer(2.into())), &prec).unwrap();
        assert_eq!(close, one);
        assert_ne!(far, one);
        assert!(Real::is_square(&one).is_err());
    }
}
