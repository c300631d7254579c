//! Continued-fraction expansion with guaranteed digits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::expr::RealExpr;

/// How the partial quotients were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfMethod {
    /// Euclid's algorithm on an exact rational.
    Euclid,
    /// Integer `(P, Q)` recurrence for a quadratic irrational.
    Periodic,
    /// Interval evaluation at a finite working precision.
    Interval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CfExpansion {
    pub digits: Vec<BigInt>,
    pub convergents: Vec<(BigInt, BigInt)>,
    /// Number of leading digits guaranteed correct.
    pub reliable_count: usize,
    pub method: CfMethod,
    /// The expansion of a rational ended before `max_digits`.
    pub terminated: bool,
    /// The working precision ran out before `max_digits` digits were certain.
    pub exhausted: bool,
}

/// `p_k / q_k` from `p_k = a_k p_(k-1) + p_(k-2)` with `(p_-1, p_-2) = (1, 0)`
/// and `(q_-1, q_-2) = (0, 1)`.
pub fn cf_convergents(digits: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    digits
        .iter()
        .map(|a| {
            let p = a * &p1 + &p2;
            let q = a * &q1 + &q2;
            p2 = std::mem::replace(&mut p1, p.clone());
            q2 = std::mem::replace(&mut q1, q.clone());
            (p, q)
        })
        .collect()
}

/// Expands `target` to at most `max_digits` partial quotients.
///
/// Rationals and quadratic irrationals are expanded exactly. Anything else is
/// enclosed to `precision` decimal digits and a quotient is emitted only while
/// both ends of the enclosure share the same floor.
pub fn cf_expand(target: &RealExpr, max_digits: usize, precision: u32) -> Result<CfExpansion> {
    let (digits, method) = match target.as_closed_form() {
        Some(exact) => {
            let method = if exact.is_rational() { CfMethod::Euclid } else { CfMethod::Periodic };
            (exact.cf_digits(max_digits), method)
        }
        None => {
            let (lo, hi) = target.bounds(precision)?;
            (interval_digits(lo, hi, max_digits), CfMethod::Interval)
        }
    };
    let short = digits.len() < max_digits;
    Ok(CfExpansion {
        convergents: cf_convergents(&digits),
        reliable_count: digits.len(),
        terminated: short && method == CfMethod::Euclid,
        exhausted: short && method == CfMethod::Interval,
        digits,
        method,
    })
}

fn interval_digits(mut lo: BigRational, mut hi: BigRational, max_digits: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    while out.len() < max_digits {
        let a = lo.floor();
        if a != hi.floor() {
            break;
        }
        out.push(a.to_integer());
        let (flo, fhi) = (lo - &a, hi - &a);
        if flo.is_zero() {
            // either the value is this integer or 1/frac is unbounded
            break;
        }
        lo = fhi.recip();
        hi = flo.recip();
    }
    out
}
