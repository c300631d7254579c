//! The group of points on `x^2 + hxy - dy^2 = 1` and its parametric model.
//!
//! Points multiply as norm-one elements of the quadratic algebra. The
//! parameter line `P = F ∪ {alpha}` carries the isomorphic product
//! `a ⊙ b = (d + ab) / (h + a + b)` with `alpha` as identity; [`ConicParams::point_at`]
//! and [`ConicPoint::to_param`] move between the two models.

use std::fmt;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::field::{ConicParams, Field};

/// A point on the conic. The constructor checks the conic equation, so every
/// value of this type is a group element.
#[derive(Debug, Clone)]
pub struct ConicPoint<F: Field> {
    x: F,
    y: F,
    params: ConicParams<F>,
}

impl<F: Field> PartialEq for ConicPoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.x == other.x && self.y == other.y
    }
}

/// An element of `P = F ∪ {alpha}`.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue<F> {
    Finite(F),
    /// The point at infinity of the parameter line; identity of `⊙_P`.
    Alpha,
}

impl<F: Field> ParamValue<F> {
    pub fn is_alpha(&self) -> bool {
        matches!(self, ParamValue::Alpha)
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            ParamValue::Finite(m) => Some(m),
            ParamValue::Alpha => None,
        }
    }

    /// `alpha` (also `α`) or a scalar of the field.
    pub fn parse(s: &str, ctx: &F::Ctx) -> Result<Self> {
        match s.trim() {
            "alpha" | "\u{3b1}" => Ok(ParamValue::Alpha),
            other => F::parse(other, ctx).map(ParamValue::Finite),
        }
    }
}

impl<F: fmt::Display> fmt::Display for ParamValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Finite(m) => write!(f, "{m}"),
            ParamValue::Alpha => f.write_str("alpha"),
        }
    }
}

impl<F: Field> ConicPoint<F> {
    pub fn new(x: F, y: F, params: &ConicParams<F>) -> Result<Self> {
        if !x.same_context(params.h()) || !y.same_context(params.h()) {
            return Err(Error::FieldMismatch(format!("({x}, {y}) is not over the field of {params}")));
        }
        if !params.contains(&x, &y) {
            return Err(Error::NotOnConic { x: x.to_string(), y: y.to_string() });
        }
        Ok(ConicPoint { x, y, params: params.clone() })
    }

    /// For coordinates whose closure is already established algebraically.
    pub(crate) fn new_unchecked(x: F, y: F, params: &ConicParams<F>) -> Self {
        ConicPoint { x, y, params: params.clone() }
    }

    /// Parses `(x, y)`.
    pub fn parse(s: &str, params: &ConicParams<F>) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (x, y), got {s:?}")))?;
        let (x, y) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("expected (x, y), got {s:?}")))?;
        let ctx = params.context();
        Self::new(F::parse(x, &ctx)?, F::parse(y, &ctx)?, params)
    }

    /// The identity `(1, 0)`.
    pub fn identity(params: &ConicParams<F>) -> Self {
        let one = params.h().one_like();
        let zero = one.zero_like();
        ConicPoint { x: one, y: zero, params: params.clone() }
    }

    pub fn x(&self) -> &F {
        &self.x
    }

    pub fn y(&self) -> &F {
        &self.y
    }

    pub fn params(&self) -> &ConicParams<F> {
        &self.params
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    /// `2x + hy`, the trace of the corresponding algebra element.
    pub fn trace(&self) -> F {
        self.x.int_like(2) * self.x.clone() + self.params.h().clone() * self.y.clone()
    }

    pub fn as_algebra_element(&self) -> AlgebraElement<F> {
        AlgebraElement::new(self.x.clone(), self.y.clone(), &self.params)
    }

    /// `(x, y) ⊙ (u, v) = (xu + yvd, yu + xv + yvh)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::ParamMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let (x, y) = (self.x.clone(), self.y.clone());
        let (u, v) = (other.x.clone(), other.y.clone());
        let yv = y.clone() * v.clone();
        let rx = x.clone() * u.clone() + yv.clone() * self.params.d().clone();
        let ry = y * u + x * v + yv * self.params.h().clone();
        Self::new_unchecked(rx, ry, &self.params)
    }

    /// `(x + hy, -y)`.
    pub fn inverse(&self) -> Self {
        let x = self.x.clone() + self.params.h().clone() * self.y.clone();
        Self::new_unchecked(x, -self.y.clone(), &self.params)
    }

    /// `n`-th power by square-and-multiply on the matrix of multiplication by
    /// `x + yt`, whose first column is the point; negative `n` inverts first.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let (x, y) = (base.x, base.y);
        let (h, d) = (self.params.h().clone(), self.params.d().clone());
        let m = [[x.clone(), d * y.clone()], [y.clone(), x + h * y]];
        let [[px, _], [py, _]] = F::mat2_pow(&m, n.unsigned_abs());
        Self::new_unchecked(px, py, &self.params)
    }

    /// The parameter `(1 + x) / y`; `(1, 0) ↦ alpha` and `(-1, 0) ↦ -h/2`.
    pub fn to_param(&self) -> ParamValue<F> {
        match (self.x.clone() + self.x.one_like()).checked_div(&self.y) {
            Some(m) => ParamValue::Finite(m),
            None if self.x.is_one() => ParamValue::Alpha,
            None => {
                let h = self.params.h().clone();
                ParamValue::Finite(-(h.checked_div(&h.int_like(2)).expect("characteristic is not 2")))
            }
        }
    }
}

impl<F: Field> fmt::Display for ConicPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<F: Field> ConicParams<F> {
    /// The point with parameter `m`:
    /// `((m^2 + d) / (m^2 + hm - d), (2m + h) / (m^2 + hm - d))`, and `alpha ↦ (1, 0)`.
    ///
    /// The denominator can only vanish when `x^2 - hx - d` has a root in the
    /// field.
    pub fn point_at(&self, m: &ParamValue<F>) -> Result<ConicPoint<F>> {
        let m = match m {
            ParamValue::Alpha => return Ok(ConicPoint::identity(self)),
            ParamValue::Finite(m) => m.clone(),
        };
        if !m.same_context(self.h()) {
            return Err(Error::FieldMismatch(format!("{m} is not over the field of {self}")));
        }
        let (h, d) = (self.h().clone(), self.d().clone());
        let den = m.square() + h.clone() * m.clone() - d.clone();
        let inv = den.inv().ok_or_else(|| Error::ParametrizationPole(m.to_string()))?;
        let x = (m.square() + d) * inv.clone();
        let y = (m.int_like(2) * m + h) * inv;
        Ok(ConicPoint::new_unchecked(x, y, self))
    }

    /// `a ⊙ b = (d + ab) / (h + a + b)`, or `alpha` when `a + b = -h`.
    pub fn param_mul(&self, a: &ParamValue<F>, b: &ParamValue<F>) -> ParamValue<F> {
        let (a, b) = match (a, b) {
            (ParamValue::Alpha, other) | (other, ParamValue::Alpha) => return other.clone(),
            (ParamValue::Finite(a), ParamValue::Finite(b)) => (a.clone(), b.clone()),
        };
        let den = self.h().clone() + a.clone() + b.clone();
        match den.inv() {
            Some(inv) => ParamValue::Finite((self.d().clone() + a * b) * inv),
            None => ParamValue::Alpha,
        }
    }

    /// `-h - a`; `alpha` is its own inverse.
    pub fn param_inverse(&self, a: &ParamValue<F>) -> ParamValue<F> {
        match a {
            ParamValue::Alpha => ParamValue::Alpha,
            ParamValue::Finite(a) => ParamValue::Finite(-self.h().clone() - a.clone()),
        }
    }
}
