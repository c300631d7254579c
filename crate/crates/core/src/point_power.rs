//! Powers of conic points through linear recurrences and Rédei pairs.

use crate::conic::{ConicPoint, ParamValue};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::redei::{RecurrenceSpec, RedeiContext, Strategy};

/// Coordinates `(F_n, G_n)` of the `n`-th power of a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointPowerPair<F: Field> {
    pub n: u64,
    pub f: F,
    pub g: F,
    base: ConicPoint<F>,
}

impl<F: Field> PointPowerPair<F> {
    pub fn base(&self) -> &ConicPoint<F> {
        &self.base
    }

    pub fn into_point(self) -> ConicPoint<F> {
        ConicPoint::new_unchecked(self.f, self.g, self.base.params())
    }
}

/// `W(1, x, 2x + hy, 1)` and `W(0, y, 2x + hy, 1)`.
pub fn coordinate_recurrences<F: Field>(p: &ConicPoint<F>) -> (RecurrenceSpec<F>, RecurrenceSpec<F>) {
    let (x, y) = (p.x().clone(), p.y().clone());
    let trace = p.trace();
    let one = x.one_like();
    (
        RecurrenceSpec::new(one.clone(), x.clone(), trace.clone(), one.clone()),
        RecurrenceSpec::new(x.zero_like(), y, trace, one),
    )
}

/// `(F_n, G_n)` from the coordinate recurrences, `O(log n)`.
pub fn fg_pair<F: Field>(p: &ConicPoint<F>, n: u64) -> PointPowerPair<F> {
    let (fs, gs) = coordinate_recurrences(p);
    let pair = PointPowerPair { n, f: fs.term(n), g: gs.term(n), base: p.clone() };
    if F::EXACT && cfg!(debug_assertions) {
        if let Ok(e) = i64::try_from(n) {
            let direct = p.pow(e);
            debug_assert!(direct.x() == &pair.f && direct.y() == &pair.g, "recurrence and group power disagree at n = {n}");
        }
    }
    pair
}

/// The Rédei context `(hy, x^2 + hxy - 1, x)` whose pairs give the powers of `p`.
pub fn power_context<F: Field>(p: &ConicPoint<F>) -> RedeiContext<F> {
    let (x, y) = (p.x().clone(), p.y().clone());
    let h = p.params().h().clone();
    let hy = h * y;
    let d = x.square() + hy.clone() * x.clone() - x.one_like();
    RedeiContext::new(hy, d, x).expect("coordinates share the field")
}

/// `q_n = (1 + N_n) / (y D_n)` with `N, D` taken at `(hy, x^2 + hxy - 1, x)`;
/// equals the parameter of `p^n`. `q_0 = alpha`.
pub fn q_param<F: Field>(p: &ConicPoint<F>, n: u64) -> Result<ParamValue<F>> {
    if p.y().is_zero() {
        return Err(Error::DivisionByZero(format!("base point {p} has y = 0")));
    }
    let pair = power_context(p).pair(n, Strategy::Matrix);
    let den = p.y().clone() * pair.den.clone();
    let num = pair.num.one_like() + pair.num.clone();
    Ok(match num.checked_div(&den) {
        Some(v) => ParamValue::Finite(v),
        // G_n = 0 puts p^n at (1, 0) or (-1, 0).
        None if pair.num.is_one() => ParamValue::Alpha,
        None => {
            let h = p.params().h().clone();
            ParamValue::Finite(-(h.checked_div(&h.int_like(2)).expect("characteristic is not 2")))
        }
    })
}

/// Whether `q_(2n) = F_n / G_n`.
pub fn q_halving_check<F: Field>(p: &ConicPoint<F>, n: u64) -> Result<bool> {
    let pair = fg_pair(p, n);
    let half = pair.f.checked_div(&pair.g).ok_or_else(|| Error::DegenerateDenominator(format!("G_{n} = 0")))?;
    Ok(q_param(p, 2 * n)? == ParamValue::Finite(half))
}
