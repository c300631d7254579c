use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::Field;
use crate::error::{Error, Result};

#[derive(Debug)]
struct Inner<F> {
    h: F,
    d: F,
    delta: F,
}

/// The pair `(h, d)` fixing the conic `x^2 + hxy - dy^2 = 1` and the algebra
/// `F[x]/(x^2 - hx - d)`, with the discriminant `h^2 + 4d` cached.
///
/// Cloning is cheap: the parameters live behind an `Arc` and every point and
/// algebra element holds a handle.
#[derive(Debug)]
pub struct ConicParams<F: Field>(Arc<Inner<F>>);

impl<F: Field> Clone for ConicParams<F> {
    fn clone(&self) -> Self {
        ConicParams(Arc::clone(&self.0))
    }
}

impl<F: Field> PartialEq for ConicParams<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.h.same_context(&other.0.h) && self.0.h == other.0.h && self.0.d == other.0.d)
    }
}

impl<F: Field> ConicParams<F> {
    pub fn new(h: F, d: F) -> Result<Self> {
        if !h.same_context(&d) {
            return Err(Error::FieldMismatch(format!("h = {h} and d = {d} live in different fields")));
        }
        let delta = h.square() + d.int_like(4) * d.clone();
        Ok(ConicParams(Arc::new(Inner { h, d, delta })))
    }

    pub fn parse(h: &str, d: &str, ctx: &F::Ctx) -> Result<Self> {
        Self::new(F::parse(h, ctx)?, F::parse(d, ctx)?)
    }

    pub fn h(&self) -> &F {
        &self.0.h
    }

    pub fn d(&self) -> &F {
        &self.0.d
    }

    /// `h^2 + 4d`.
    pub fn delta(&self) -> &F {
        &self.0.delta
    }

    pub fn context(&self) -> F::Ctx {
        self.0.h.context()
    }

    /// Left-hand side `x^2 + hxy - dy^2` of the conic equation.
    pub fn quadratic_form(&self, x: &F, y: &F) -> F {
        x.square() + self.h().clone() * x.clone() * y.clone() - self.d().clone() * y.square()
    }

    pub fn contains(&self, x: &F, y: &F) -> bool {
        self.quadratic_form(x, y).is_one()
    }
}

impl<F: Field> fmt::Display for ConicParams<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({}, {})", self.h(), self.d())
    }
}

/// Affine type of the conic over an ordered field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConicClass::Ellipse => "ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
        })
    }
}

/// Whether `x^2 - hx - d` has no root in the field, i.e. whether the
/// discriminant `h^2 + 4d` is a non-square.
///
/// Over the reals this is a sign question; the call fails with
/// [`Error::AnalyticField`] and [`conic_class`] answers it instead.
pub fn poly_irreducible<F: Field>(params: &ConicParams<F>) -> Result<bool> {
    params.delta().is_square().map(|square| !square)
}

/// Hyperbola, parabola or ellipse according to the sign of `h^2 + 4d`.
pub fn conic_class<F: Field>(params: &ConicParams<F>) -> Result<ConicClass> {
    match params.delta().sign().ok_or(Error::UnorderedField)? {
        Ordering::Greater => Ok(ConicClass::Hyperbola),
        Ordering::Equal => Ok(ConicClass::Parabola),
        Ordering::Less => Ok(ConicClass::Ellipse),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Precision, PrimeModulus, Real};
    use num_rational::BigRational;

    fn rat(h: &str, d: &str) -> ConicParams<BigRational> {
        ConicParams::parse(h, d, &()).unwrap()
    }

    fn fp(h: i64, d: i64, p: u64) -> ConicParams<Fp> {
        let m = PrimeModulus::new(p).unwrap();
        ConicParams::new(Fp::new(h, m), Fp::new(d, m)).unwrap()
    }

    #[test]
    fn delta_is_cached_discriminant() {
        let e = rat("-13/4", "2");
        assert_eq!(e.delta().to_string(), "297/16");
        assert!(e.contains(&BigRational::from_integer(4.into()), &BigRational::from_integer(1.into())));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!poly_irreducible(&fp(0, 1, 5)).unwrap());
        assert!(poly_irreducible(&fp(0, -1, 3)).unwrap());
        assert!(poly_irreducible(&rat("-13/4", "2")).unwrap());
        assert!(!poly_irreducible(&rat("0", "1")).unwrap());
        let prec = Precision::new(20).unwrap();
        let real = ConicParams::<Real>::parse("0", "-1", &prec).unwrap();
        assert_eq!(poly_irreducible(&real), Err(Error::AnalyticField));
    }

    #[test]
    fn class_examples() {
        assert_eq!(conic_class(&rat("0", "-1")).unwrap(), ConicClass::Ellipse);
        assert_eq!(conic_class(&rat("2", "-1")).unwrap(), ConicClass::Parabola);
        assert_eq!(conic_class(&rat("-13/4", "2")).unwrap(), ConicClass::Hyperbola);
        assert_eq!(conic_class(&fp(0, -1, 3)), Err(Error::UnorderedField));
        let prec = Precision::new(20).unwrap();
        let real = ConicParams::<Real>::parse("sqrt:2", "-1/2", &prec).unwrap();
        assert_eq!(conic_class(&real).unwrap(), ConicClass::Parabola);
    }

    /// Root search over every field element against the Euler-criterion answer.
    #[test]
    fn irreducible_iff_no_root_for_all_small_primes() {
        for p in (3..=97u64).filter(|&p| crate::field::is_prime(p)) {
            let m = PrimeModulus::new(p).unwrap();
            for h in m.elements() {
                for d in m.elements() {
                    let params = ConicParams::new(h, d).unwrap();
                    let has_root = m.elements().any(|x| (x * x - h * x - d).is_zero());
                    assert_eq!(poly_irreducible(&params).unwrap(), !has_root, "p={p} h={h} d={d}");
                }
            }
        }
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Fp::new(1, PrimeModulus::new(5).unwrap());
        let b = Fp::new(1, PrimeModulus::new(7).unwrap());
        assert!(matches!(ConicParams::new(a, b), Err(Error::FieldMismatch(_))));
    }
}
