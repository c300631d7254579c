//! The quadratic algebra `A = F[x]/(x^2 - hx - d)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{ConicParams, Field};

/// The element `a + b*x` of `F[x]/(x^2 - hx - d)`.
///
/// Every pair `(a, b)` is a valid element, including when the polynomial is
/// reducible and the algebra has zero divisors; only [`inverse`] can fail.
///
/// [`inverse`]: AlgebraElement::inverse
#[derive(Debug, Clone)]
pub struct AlgebraElement<F: Field> {
    a: F,
    b: F,
    params: ConicParams<F>,
}

impl<F: Field> PartialEq for AlgebraElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.a == other.a && self.b == other.b
    }
}

impl<F: Field> AlgebraElement<F> {
    pub fn new(a: F, b: F, params: &ConicParams<F>) -> Self {
        AlgebraElement { a, b, params: params.clone() }
    }

    pub fn from_base(a: F, params: &ConicParams<F>) -> Self {
        let zero = a.zero_like();
        Self::new(a, zero, params)
    }

    pub fn one(params: &ConicParams<F>) -> Self {
        Self::from_base(params.h().one_like(), params)
    }

    /// Parses `a + b*x`, `a - b*x`, `a`, or `b*x` (also `b·x`).
    pub fn parse(s: &str, params: &ConicParams<F>) -> Result<Self> {
        let ctx = params.context();
        let s = s.trim().replace('\u{b7}', "*").replace('\u{2212}', "-");
        let bad = || Error::Parse(format!("invalid algebra element {s:?}; expected a + b*x"));
        let Some(body) = s.strip_suffix('x') else {
            return Ok(Self::from_base(F::parse(&s, &ctx)?, params));
        };
        let body = body.trim_end();
        let body = body.strip_suffix('*').unwrap_or(body).trim_end();
        // Split at the last top-level '+' or '-' that is not a leading sign.
        let split = body
            .char_indices()
            .filter(|&(i, c)| (c == '+' || c == '-') && i > 0 && !body[..i].trim_end().ends_with(['/', '*', 'e', '+', '-', '(']))
            .map(|(i, _)| i)
            .next_back();
        let (a, b) = match split {
            Some(i) => {
                let (a, rest) = body.split_at(i);
                let coeff = rest[1..].trim();
                let coeff = F::parse(if coeff.is_empty() { "1" } else { coeff }, &ctx)?;
                (F::parse(a, &ctx)?, if rest.starts_with('-') { -coeff } else { coeff })
            }
            None => {
                let coeff = match body.trim() {
                    "" | "+" => "1",
                    "-" => "-1",
                    c => c,
                };
                (F::zero(&ctx), F::parse(coeff, &ctx).map_err(|_| bad())?)
            }
        };
        Ok(Self::new(a, b, params))
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn params(&self) -> &ConicParams<F> {
        &self.params
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::ParamMismatch)
        }
    }

    /// `(a + bx)(u + vx) = (au + bvd) + (bu + av + bvh)x`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let (a, b) = (self.a.clone(), self.b.clone());
        let (u, v) = (other.a.clone(), other.b.clone());
        let h = self.params.h().clone();
        let d = self.params.d().clone();
        let bv = b.clone() * v.clone();
        AlgebraElement {
            a: a.clone() * u.clone() + bv.clone() * d,
            b: b * u + a * v + bv * h,
            params: self.params.clone(),
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        AlgebraElement { a: self.a.clone() * k.clone(), b: self.b.clone() * k.clone(), params: self.params.clone() }
    }

    /// `(a + hb) - bx`.
    pub fn conj(&self) -> Self {
        AlgebraElement {
            a: self.a.clone() + self.params.h().clone() * self.b.clone(),
            b: -self.b.clone(),
            params: self.params.clone(),
        }
    }

    /// `a^2 + hab - db^2`.
    pub fn norm(&self) -> F {
        self.params.quadratic_form(&self.a, &self.b)
    }

    /// `2a + hb`.
    pub fn trace(&self) -> F {
        self.a.int_like(2) * self.a.clone() + self.params.h().clone() * self.b.clone()
    }

    /// `conj(u) / N(u)`; fails on zero divisors.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm().inv().ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        Ok(self.conj().scale(&n))
    }

    pub fn is_unit_norm(&self) -> bool {
        self.norm().is_one()
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}\u{b7}x", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeModulus};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn params(h: &str, d: &str) -> ConicParams<BigRational> {
        ConicParams::parse(h, d, &()).unwrap()
    }

    fn el(s: &str, p: &ConicParams<BigRational>) -> AlgebraElement<BigRational> {
        AlgebraElement::parse(s, p).unwrap()
    }

    #[test]
    fn product_examples() {
        let p = params("1", "1");
        assert_eq!(el("1 + x", &p).mul(&el("1 + x", &p)).unwrap(), el("2 + 3x", &p));
        assert_eq!(el("1 + x", &p).mul(&el("2 - x", &p)).unwrap(), el("1", &p));
        let q = params("-13/4", "2");
        let u = el("3/4 - 5/2*x", &q);
        assert_eq!(AlgebraElement::one(&q).mul(&u).unwrap(), u);
        assert_eq!(u.mul(&el("1", &p)), Err(Error::ParamMismatch));
    }

    #[test]
    fn conjugate_norm_trace() {
        let p = params("1", "1");
        assert_eq!(el("1 + x", &p).conj(), el("2 - x", &p));
        assert_eq!(el("7", &p).conj(), el("7", &p));
        let q = params("0", "2");
        assert_eq!(el("3 + 5x", &q).conj(), el("3 - 5x", &q));
        let u = el("1 + x", &p);
        assert_eq!(u.norm().to_string(), "1");
        assert_eq!(u.trace().to_string(), "3");
        assert_eq!(AlgebraElement::one(&p).norm().to_string(), "1");
        assert_eq!(AlgebraElement::one(&p).trace().to_string(), "2");
        assert!(el("4 + x", &params("-13/4", "2")).is_unit_norm());
    }

    #[test]
    fn inverse_examples() {
        let p = params("1", "1");
        assert_eq!(el("1 + x", &p).inverse().unwrap(), el("2 - x", &p));
        assert_eq!(AlgebraElement::one(&p).inverse().unwrap(), AlgebraElement::one(&p));
        let reducible = params("0", "1");
        assert!(matches!(el("1 + x", &reducible).inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn parse_and_display() {
        let p = params("1", "1");
        assert_eq!(el("x", &p), el("0 + 1*x", &p));
        assert_eq!(el("-x", &p), el("0 - 1*x", &p));
        assert_eq!(el("-1/2 + -3/4\u{b7}x", &p), el("-1/2 - 3/4x", &p));
        assert_eq!(el("1/2 + 3*x", &p).to_string(), "1/2 + 3\u{b7}x");
        assert_eq!(el(&el("-5/3 + 2x", &p).to_string(), &p), el("-5/3 + 2x", &p));
        let f7 = ConicParams::new(Fp::new(1, PrimeModulus::new(7).unwrap()), Fp::new(3, PrimeModulus::new(7).unwrap())).unwrap();
        let u = AlgebraElement::parse("3 mod 7 + 5 mod 7\u{b7}x", &f7).unwrap();
        assert_eq!(u.b().value(), 5);
    }

    fn small() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_identities(h in small(), d in small(), a in small(), b in small(), u in small(), v in small(), s in small(), t in small()) {
            let p = ConicParams::new(h, d).unwrap();
            let x = AlgebraElement::new(a, b, &p);
            let y = AlgebraElement::new(u, v, &p);
            let z = AlgebraElement::new(s, t, &p);
            let xy = x.mul(&y).unwrap();
            prop_assert_eq!(xy.norm(), x.norm() * y.norm());
            prop_assert_eq!(&xy, &y.mul(&x).unwrap());
            prop_assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(x.mul(&x.conj()).unwrap(), AlgebraElement::from_base(x.norm(), &p));
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!(xy.conj(), x.conj().mul(&y.conj()).unwrap());
        }
    }
}
