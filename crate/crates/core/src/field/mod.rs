//! Coefficient fields and the conic parameters built on them.
//!
//! Three kinds of field are supported: exact rationals ([`BigRational`]),
//! prime fields of odd characteristic ([`Fp`]), and fixed-precision reals
//! ([`Real`]). Every algorithm in the crate is generic over [`Field`]; the
//! runtime choice between kinds is a [`FieldSpec`].

mod params;
mod prime;
pub(crate) mod rational;
mod real;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};

pub use params::{conic_class, poly_irreducible, ConicClass, ConicParams};
pub use prime::{is_prime, Fp, PrimeModulus};
pub use real::{Precision, Real, GUARD_DIGITS, MIN_DIGITS};

/// The runtime name of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    /// F_p for an odd prime p.
    Prime(u64),
    /// Reals carried to the given number of decimal digits.
    Real(u32),
}

impl FieldSpec {
    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldSpec::Real(_))
    }

    /// Checks the invariants of the kind (odd prime, at least 16 digits).
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldSpec::Rational => Ok(self),
            FieldSpec::Prime(p) => PrimeModulus::new(p).map(|_| self),
            FieldSpec::Real(digits) => Precision::new(digits).map(|_| self),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
            FieldSpec::Real(d) => write!(f, "real:{d}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = if s == "rational" {
            FieldSpec::Rational
        } else if let Some(p) = s.strip_prefix("fp:") {
            FieldSpec::Prime(p.parse().map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?)
        } else if let Some(d) = s.strip_prefix("real:") {
            FieldSpec::Real(d.parse().map_err(|_| Error::Parse(format!("bad precision in {s:?}")))?)
        } else {
            return Err(Error::Parse(format!(
                "unknown field {s:?}; expected rational, fp:<p> or real:<digits>"
            )));
        };
        spec.validate()
    }
}

/// A field element together with the arithmetic the conic machinery needs.
///
/// Elements carry their own context (the modulus of `F_p`, the precision of a
/// real), so binary operations take owned values and never need a separate
/// ring object. Combining elements from different contexts is a programming
/// error and panics.
///
/// `PartialEq` is exact for the exact kinds. For [`Real`] it is the tolerance
/// comparison `|a - b| <= 10^(GUARD_DIGITS - digits)`.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    /// Whether equality is exact.
    const EXACT: bool;

    fn context(&self) -> Self::Ctx;
    fn spec(ctx: &Self::Ctx) -> FieldSpec;
    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self;
    fn from_rational(v: &BigRational, ctx: &Self::Ctx) -> Result<Self>;
    /// Parses the textual scalar syntax of this kind.
    fn parse(s: &str, ctx: &Self::Ctx) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// Whether the element is a square in the field. Reals answer
    /// [`Error::AnalyticField`]: squareness there is a sign test.
    fn is_square(&self) -> Result<bool>;
    /// Sign for ordered fields, `None` for `F_p`.
    fn sign(&self) -> Option<Ordering>;
    /// Decimal rendering, `None` where the field has no embedding in R.
    fn to_decimal(&self, places: usize) -> Option<String>;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_i64(0, ctx)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(1, ctx)
    }

    fn int_like(&self, v: i64) -> Self {
        Self::from_i64(v, &self.context())
    }

    fn zero_like(&self) -> Self {
        self.int_like(0)
    }

    fn one_like(&self) -> Self {
        self.int_like(1)
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    /// Whether `self` and `other` may be combined by the arithmetic operators.
    fn same_context(&self, other: &Self) -> bool {
        self.context() == other.context()
    }

    /// `m^n` for a 2x2 matrix. Fields whose arithmetic normalizes on every
    /// operation may override this with something cheaper.
    fn mat2_pow(m: &[[Self; 2]; 2], n: u64) -> [[Self; 2]; 2] {
        let (one, zero) = (m[0][0].one_like(), m[0][0].zero_like());
        mat2_pow_by(m, n, one, zero)
    }
}

/// Binary powering of a 2x2 matrix over any ring-like `T`.
pub(crate) fn mat2_pow_by<T>(m: &[[T; 2]; 2], mut n: u64, one: T, zero: T) -> [[T; 2]; 2]
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    let mul = |a: &[[T; 2]; 2], b: &[[T; 2]; 2]| {
        let cell = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
    };
    let mut acc = [[one.clone(), zero.clone()], [zero, one]];
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(&acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}
