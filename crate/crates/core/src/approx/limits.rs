//! Closed-form limits of ratios of second-order recurrences.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::approx::ClosedForm;
use crate::conic::ConicPoint;
use crate::error::{Error, Result};
use crate::redei::RecurrenceSpec;

/// Two sequences `W(a0, a1, 2w, w^2 - c)` and `W(b0, b1, 2w, w^2 - c)` whose
/// characteristic roots are `w ± sqrt(c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceLimitSpec {
    pub a0: BigRational,
    pub a1: BigRational,
    pub b0: BigRational,
    pub b1: BigRational,
    pub w: BigRational,
    pub c: BigRational,
}

impl RecurrenceLimitSpec {
    fn sequence(&self, s0: &BigRational, s1: &BigRational) -> RecurrenceSpec<BigRational> {
        let r = &self.w + &self.w;
        let k = &self.w * &self.w - &self.c;
        RecurrenceSpec::new(s0.clone(), s1.clone(), r, k)
    }

    pub fn numerator_sequence(&self) -> RecurrenceSpec<BigRational> {
        self.sequence(&self.a0, &self.a1)
    }

    pub fn denominator_sequence(&self) -> RecurrenceSpec<BigRational> {
        self.sequence(&self.b0, &self.b1)
    }
}

/// `lim a_n / b_n`, taken along the dominant root `w + sign(w)*sqrt(c)`.
pub fn recurrence_ratio_limit(s: &RecurrenceLimitSpec) -> Result<ClosedForm> {
    if !s.c.is_positive() {
        return Err(Error::NoDominantRoot(format!("c = {} is not positive", s.c)));
    }
    if s.w.is_zero() {
        return Err(Error::NoDominantRoot("w = 0 gives roots of equal magnitude".into()));
    }
    let mut root = ClosedForm::sqrt(&s.c).expect("c > 0");
    if s.w.is_negative() {
        root = root.neg();
    }
    let lead = |v0: &BigRational, v1: &BigRational| {
        let scaled = root.mul(&ClosedForm::Rational(v0.clone())).expect("rational factor");
        scaled.add(&ClosedForm::Rational(v1 - v0 * &s.w)).expect("same radicand")
    };
    let num = lead(&s.a0, &s.a1);
    let den = lead(&s.b0, &s.b1);
    if den == ClosedForm::Rational(BigRational::zero()) {
        return Err(Error::DegenerateLimit);
    }
    num.div(&den).expect("same radicand")
}

/// The sequences behind `y_n / x_n` for powers of `p`: `y_n = W(0, y, 2w, 1)`,
/// `x_n = W(1, x, 2w, 1)` with `w = (2x + hy) / 2`.
pub fn point_limit_spec(p: &ConicPoint<BigRational>) -> RecurrenceLimitSpec {
    let w = p.trace() / BigRational::from_integer(2.into());
    RecurrenceLimitSpec {
        a0: BigRational::zero(),
        a1: p.y().clone(),
        b0: BigRational::from_integer(1.into()),
        b1: p.x().clone(),
        c: &w * &w - BigRational::from_integer(1.into()),
        w,
    }
}

/// `lim y_n / x_n` for the powers of a rational point with `|2x + hy| > 2`.
pub fn point_ratio_limit(p: &ConicPoint<BigRational>) -> Result<ClosedForm> {
    let trace = p.trace();
    if trace.abs() <= BigRational::from_integer(2.into()) {
        return Err(Error::NoConvergence(trace.abs().to_string()));
    }
    recurrence_ratio_limit(&point_limit_spec(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ConicParams;

    fn q(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    fn spec(a: [&str; 2], b: [&str; 2], w: &str, c: &str) -> RecurrenceLimitSpec {
        RecurrenceLimitSpec { a0: q(a[0]), a1: q(a[1]), b0: q(b[0]), b1: q(b[1]), w: q(w), c: q(c) }
    }

    fn iterated_ratio(s: &RecurrenceLimitSpec, n: u64) -> BigRational {
        s.numerator_sequence().term(n) / s.denominator_sequence().term(n)
    }

    #[test]
    fn example_limit() {
        let s = spec(["0", "1"], ["1", "4"], "19/8", "297/64");
        let lim = recurrence_ratio_limit(&s).unwrap();
        assert_eq!(lim.to_string(), "-13/16 + 3/16*sqrt(33)");
        assert_eq!(lim.render_reciprocal().unwrap(), "8/(13+3*sqrt(33))");
        assert_eq!(lim.to_decimal(6), "0.264605");
    }

    #[test]
    fn identical_seeds_give_one() {
        let s = spec(["2", "5"], ["2", "5"], "3", "2");
        assert_eq!(recurrence_ratio_limit(&s).unwrap(), ClosedForm::from_integer(1));
    }

    #[test]
    fn rejected_specs() {
        assert!(matches!(
            recurrence_ratio_limit(&spec(["0", "1"], ["1", "0"], "1", "-1")),
            Err(Error::NoDominantRoot(_))
        ));
        assert!(matches!(
            recurrence_ratio_limit(&spec(["0", "1"], ["1", "0"], "0", "4")),
            Err(Error::NoDominantRoot(_))
        ));
        // b1 - b0*w + b0*sqrt(c) = 0 - 3 + 3 = 0
        assert!(matches!(
            recurrence_ratio_limit(&spec(["0", "1"], ["1", "0"], "3", "9")),
            Err(Error::DegenerateLimit)
        ));
    }

    #[test]
    fn negative_w_follows_the_dominant_root() {
        let s = spec(["0", "1"], ["1", "-4"], "-19/8", "297/64");
        let lim = recurrence_ratio_limit(&s).unwrap();
        let approx = iterated_ratio(&s, 120);
        let (lo, hi) = lim.bounds(40).unwrap();
        let tol = q("1/1000000000000000000000000000000");
        assert!(approx > &lo - &tol && approx < &hi + &tol);
    }

    #[test]
    fn point_limit_matches_example() {
        let params = ConicParams::<BigRational>::parse("-13/4", "2", &()).unwrap();
        let p = ConicPoint::new(q("4"), q("1"), &params).unwrap();
        let lim = point_ratio_limit(&p).unwrap();
        assert_eq!(lim.render_reciprocal().unwrap(), "8/(13+3*sqrt(33))");
        assert_eq!(lim, recurrence_ratio_limit(&point_limit_spec(&p)).unwrap());
    }

    #[test]
    fn point_limit_negative_trace() {
        let params = ConicParams::<BigRational>::parse("-13/4", "2", &()).unwrap();
        let p = ConicPoint::new(q("-4"), q("-1"), &params).unwrap();
        let lim = point_ratio_limit(&p).unwrap();
        let p60 = p.pow(60);
        let ratio = p60.y().clone() / p60.x().clone();
        let (lo, hi) = lim.bounds(30).unwrap();
        let tol = q("1/1000000000000000");
        assert!(ratio > &lo - &tol && ratio < &hi + &tol);
    }

    #[test]
    fn bounded_orbits_are_rejected() {
        let circle = ConicParams::<BigRational>::parse("0", "-1", &()).unwrap();
        let p = ConicPoint::new(q("3/5"), q("4/5"), &circle).unwrap();
        assert!(matches!(point_ratio_limit(&p), Err(Error::NoConvergence(_))));
        let params = ConicParams::<BigRational>::parse("-13/4", "2", &()).unwrap();
        let one = ConicPoint::identity(&params);
        assert!(matches!(point_ratio_limit(&one), Err(Error::NoConvergence(_))));
    }
}
