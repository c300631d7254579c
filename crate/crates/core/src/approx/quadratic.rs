//! Exact quadratic irrationals `r + s*sqrt(t)` and their continued fractions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::decimal;
use crate::error::{Error, Result};
use crate::expr::RealExpr;

/// `r + s*sqrt(t)` with `s != 0` and `t > 1` squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    rational: BigRational,
    coeff: BigRational,
    radicand: BigInt,
}

/// A limit or target value that is either rational or quadratic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    Rational(BigRational),
    Quadratic(QuadraticIrrational),
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits `t = k^2 * rest`. Square factors with a prime above `TRIAL_LIMIT`
/// survive unless the remainder is itself a perfect square.
fn split_square(t: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut rest = t.clone();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pp = BigInt::from(p * p);
        if pp > rest {
            break;
        }
        while rest.is_multiple_of(&pp) {
            rest /= &pp;
            k *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        k *= root;
        rest = BigInt::one();
    }
    (k, rest)
}

impl ClosedForm {
    /// Builds `r + s*sqrt(t)` in canonical form. `t` must be positive.
    pub fn new(r: BigRational, s: BigRational, t: BigInt) -> Self {
        assert!(t.is_positive(), "radicand must be positive");
        let (k, t) = split_square(&t);
        let s = s * BigRational::from_integer(k);
        if s.is_zero() || t.is_one() {
            ClosedForm::Rational(r + s)
        } else {
            ClosedForm::Quadratic(QuadraticIrrational { rational: r, coeff: s, radicand: t })
        }
    }

    pub fn from_integer(v: i64) -> Self {
        ClosedForm::Rational(BigRational::from_integer(v.into()))
    }

    /// `sqrt(q)` for `q >= 0`.
    pub fn sqrt(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(ClosedForm::Rational(BigRational::zero()));
        }
        // sqrt(n/d) = sqrt(n*d) / d
        let coeff = BigRational::new(BigInt::one(), q.denom().clone());
        Some(Self::new(BigRational::zero(), coeff, q.numer() * q.denom()))
    }

    /// `(r, s, t)`; rationals report `s = 0, t = 1`.
    pub fn parts(&self) -> (BigRational, BigRational, BigInt) {
        match self {
            ClosedForm::Rational(r) => (r.clone(), BigRational::zero(), BigInt::one()),
            ClosedForm::Quadratic(q) => (q.rational.clone(), q.coeff.clone(), q.radicand.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ClosedForm::Rational(r) => Some(r),
            ClosedForm::Quadratic(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn radicands(&self, other: &Self) -> Option<BigInt> {
        let (_, _, t1) = self.parts();
        let (_, _, t2) = other.parts();
        if t1.is_one() {
            Some(t2)
        } else if t2.is_one() || t1 == t2 {
            Some(t1)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        let t = self.radicands(other)?;
        let (r1, s1, _) = self.parts();
        let (r2, s2, _) = other.parts();
        Some(Self::new(r1 + r2, s1 + s2, t))
    }

    pub fn neg(&self) -> Self {
        let (r, s, t) = self.parts();
        Self::new(-r, -s, t)
    }

    pub fn sub(&self, other: &Self) -> Option<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        let t = self.radicands(other)?;
        let (r1, s1, _) = self.parts();
        let (r2, s2, _) = other.parts();
        let tq = BigRational::from_integer(t.clone());
        Some(Self::new(&r1 * &r2 + &s1 * &s2 * tq, r1 * s2 + s1 * r2, t))
    }

    /// `r - s*sqrt(t)`.
    pub fn conjugate(&self) -> Self {
        let (r, s, t) = self.parts();
        Self::new(r, -s, t)
    }

    /// Field norm `r^2 - s^2 t`; zero only for the value zero.
    pub fn norm(&self) -> BigRational {
        let (r, s, t) = self.parts();
        &r * &r - &s * &s * BigRational::from_integer(t)
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero("reciprocal of zero".into()));
        }
        let (r, s, t) = self.conjugate().parts();
        Ok(Self::new(r / &n, s / &n, t))
    }

    pub fn div(&self, other: &Self) -> Option<Result<Self>> {
        self.radicands(other)?;
        Some(other.recip().map(|inv| self.mul(&inv).expect("radicands checked")))
    }

    /// The value as an expression for interval evaluation.
    pub fn to_expr(&self) -> RealExpr {
        let (r, s, t) = self.parts();
        if s.is_zero() {
            return RealExpr::Rational(r);
        }
        let root = RealExpr::Sqrt(Box::new(RealExpr::Rational(BigRational::from_integer(t))));
        RealExpr::Add(Box::new(RealExpr::Rational(r)), Box::new(RealExpr::Mul(Box::new(RealExpr::Rational(s)), Box::new(root))))
    }

    /// Lower and upper rational bounds at most `10^-digits` apart.
    pub fn bounds(&self, digits: u32) -> Result<(BigRational, BigRational)> {
        self.to_expr().bounds(digits)
    }

    pub fn to_decimal(&self, places: usize) -> String {
        match self {
            ClosedForm::Rational(r) => decimal::round(r, places),
            ClosedForm::Quadratic(_) => {
                let (lo, hi) = self.bounds(places as u32 + 10).expect("quadratic values are always enclosable");
                decimal::round(&((lo + hi) / BigRational::from_integer(2.into())), places)
            }
        }
    }

    /// Writes the value as `n / (a + b*sqrt(t))` with integers, reduced by
    /// their common divisor. `None` for zero.
    pub fn reciprocal_form(&self) -> Option<(BigInt, BigInt, BigInt, BigInt)> {
        let inv = self.recip().ok()?;
        let (u, v, t) = inv.parts();
        let l = u.denom().lcm(v.denom());
        let lq = BigRational::from_integer(l.clone());
        let a = (u * &lq).to_integer();
        let b = (v * &lq).to_integer();
        let g = l.gcd(&a).gcd(&b);
        Some((l / &g, a / &g, b / &g, t))
    }

    /// `n/(a+b*sqrt(t))`, the reciprocal form in plain text.
    pub fn render_reciprocal(&self) -> Option<String> {
        let (n, a, b, t) = self.reciprocal_form()?;
        if t.is_one() {
            return None;
        }
        let sign = if b.is_negative() { "-" } else { "+" };
        let mag = b.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
        Some(format!("{n}/({a}{sign}{coeff}sqrt({t}))"))
    }

    /// First `max_digits` partial quotients, computed exactly: Euclid for a
    /// rational, the integer (P, Q) recurrence for a quadratic irrational.
    pub fn cf_digits(&self, max_digits: usize) -> Vec<BigInt> {
        match self {
            ClosedForm::Rational(r) => rational_cf(r, max_digits),
            ClosedForm::Quadratic(q) => q.cf_digits(max_digits),
        }
    }
}

fn rational_cf(r: &BigRational, max_digits: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    while !d.is_zero() && out.len() < max_digits {
        let (a, rem) = n.div_mod_floor(&d);
        out.push(a);
        n = d;
        d = rem;
    }
    out
}

impl QuadraticIrrational {
    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// Partial quotients from the state `(P + sqrt(D)) / Q` with `Q | D - P^2`.
    pub fn cf_digits(&self, max_digits: usize) -> Vec<BigInt> {
        let (rn, rd) = (self.rational.numer(), self.rational.denom());
        let (sn, sd) = (self.coeff.numer(), self.coeff.denom());
        // value = (A + B sqrt(t)) / C
        let a = rn * sd;
        let b = sn * rd;
        let c = rd * sd;
        let disc = &b * &b * &self.radicand;
        let (mut p, mut q) = if b.is_positive() { (a, c) } else { (-a, -c) };
        let mut disc = disc;
        if !(&disc - &p * &p).is_multiple_of(&q) {
            let qa = q.abs();
            p *= &qa;
            disc *= &q * &q;
            q *= &qa;
        }
        let root = disc.sqrt();
        let mut out = Vec::with_capacity(max_digits);
        while out.len() < max_digits {
            // sqrt(D) lies strictly between root and root + 1.
            let digit = if q.is_positive() {
                (&p + &root).div_floor(&q)
            } else {
                (&p + &root + BigInt::one()).div_floor(&q)
            };
            let next_p = &digit * &q - &p;
            let next_q = (&disc - &next_p * &next_p) / &q;
            out.push(digit);
            p = next_p;
            q = next_q;
        }
        out
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Rational(r) => write!(f, "{r}"),
            ClosedForm::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mag = self.coeff.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
        if self.rational.is_zero() {
            let sign = if self.coeff.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coeff}sqrt({})", self.radicand)
        } else {
            let sign = if self.coeff.is_negative() { "-" } else { "+" };
            write!(f, "{} {sign} {coeff}sqrt({})", self.rational, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_extraction() {
        let v = ClosedForm::new(q(0, 1), q(1, 1), 297.into());
        assert_eq!(v.to_string(), "3*sqrt(33)");
        assert_eq!(ClosedForm::new(q(1, 2), q(3, 1), 4.into()), ClosedForm::Rational(q(13, 2)));
        assert_eq!(ClosedForm::sqrt(&q(297, 64)).unwrap().to_string(), "3/8*sqrt(33)");
        assert_eq!(ClosedForm::sqrt(&q(9, 4)).unwrap(), ClosedForm::Rational(q(3, 2)));
        assert!(ClosedForm::sqrt(&q(-1, 1)).is_none());
    }

    #[test]
    fn arithmetic() {
        let r33 = ClosedForm::sqrt(&q(33, 1)).unwrap();
        let den = ClosedForm::from_integer(13).add(&ClosedForm::from_integer(3).mul(&r33).unwrap()).unwrap();
        let v = ClosedForm::from_integer(8).div(&den).unwrap().unwrap();
        assert_eq!(v.to_string(), "-13/16 + 3/16*sqrt(33)");
        assert_eq!(v.render_reciprocal().unwrap(), "8/(13+3*sqrt(33))");
        assert_eq!(v.to_decimal(6), "0.264605");
        let r2 = ClosedForm::sqrt(&q(2, 1)).unwrap();
        assert!(r2.add(&r33).is_none());
        assert!(ClosedForm::from_integer(0).recip().is_err());
    }

    #[test]
    fn periodic_expansions() {
        let golden = ClosedForm::new(q(1, 2), q(1, 2), 5.into());
        assert!(golden.cf_digits(12).iter().all(|a| a.is_one()));
        let r2 = ClosedForm::sqrt(&q(2, 1)).unwrap();
        let digits: Vec<i64> = r2.cf_digits(6).iter().map(|a| a.to_i64().unwrap()).collect();
        assert_eq!(digits, [1, 2, 2, 2, 2, 2]);
        // -sqrt(2) = [-2; 1, 1, 2, 2, ...]
        let digits: Vec<i64> = r2.neg().cf_digits(5).iter().map(|a| a.to_i64().unwrap()).collect();
        assert_eq!(digits, [-2, 1, 1, 2, 2]);
        // (3 - sqrt(7)) / 5, negative coefficient with a non-dividing Q
        let v = ClosedForm::new(q(3, 5), q(-1, 5), 7.into());
        let digits: Vec<i64> = v.cf_digits(6).iter().map(|a| a.to_i64().unwrap()).collect();
        let f = 0.6 - 7f64.sqrt() / 5.0;
        assert_eq!(digits[0], f.floor() as i64);
        assert_eq!(digits[1], (1.0 / (f - f.floor())).floor() as i64);
        assert_eq!(ClosedForm::Rational(q(7, 3)).cf_digits(10), vec![BigInt::from(2), BigInt::from(3)]);
    }
}
