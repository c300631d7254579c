//! Rational points on a conic whose coordinate ratios approach a target.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::approx::cf::{cf_expand, CfExpansion};
use crate::approx::ClosedForm;
use crate::conic::{ConicPoint, ParamValue};
use crate::error::{Error, Result};
use crate::expr::RealExpr;
use crate::field::ConicParams;

/// Extra partial quotients expanded beyond the requested step count, enough
/// to cover the at most two convergents that can be skipped.
const SPARE_DIGITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootChoice {
    #[default]
    Plus,
    Minus,
}

impl FromStr for RootChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(RootChoice::Plus),
            "minus" | "-" => Ok(RootChoice::Minus),
            _ => Err(Error::Parse(format!("root must be plus or minus, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryRoot {
    pub value: RealExpr,
    /// `None` when irrationality could not be decided.
    pub irrational: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryRoots {
    pub plus: AuxiliaryRoot,
    pub minus: AuxiliaryRoot,
}

impl AuxiliaryRoots {
    pub fn get(&self, choice: RootChoice) -> &AuxiliaryRoot {
        match choice {
            RootChoice::Plus => &self.plus,
            RootChoice::Minus => &self.minus,
        }
    }
}

fn sign_of(e: &RealExpr, digits: u32) -> Result<std::cmp::Ordering> {
    use std::cmp::Ordering;
    if let Some(v) = e.as_closed_form() {
        let (r, s, t) = v.parts();
        if s.is_zero() {
            return Ok(r.cmp(&BigRational::zero()));
        }
        // r + s*sqrt(t) vs 0, squared comparisons
        let rhs = &s * &s * BigRational::from_integer(t);
        let lhs = &r * &r;
        return Ok(match (r.is_negative(), s.is_negative()) {
            (false, false) => Ordering::Greater,
            (true, true) => Ordering::Less,
            (false, true) => lhs.cmp(&rhs),
            (true, false) => rhs.cmp(&lhs),
        });
    }
    let (lo, hi) = e.bounds(digits)?;
    if lo.is_positive() {
        Ok(Ordering::Greater)
    } else if hi.is_negative() {
        Ok(Ordering::Less)
    } else {
        Err(Error::PrecisionExhausted(format!("sign of {e} is not settled at {digits} digits")))
    }
}

fn scaled(e: RealExpr, k: &BigRational) -> RealExpr {
    if k.is_one() {
        e
    } else {
        RealExpr::rational(k.clone()) * e
    }
}

/// Solves `(2α + h) / (α^2 + d) = β`, i.e. `βα^2 - 2α + (βd - h) = 0`, giving
/// `α = (1 ± sqrt(1 + βh - β^2 d)) / β`.
pub fn solve_auxiliary(params: &ConicParams<BigRational>, beta: &RealExpr, digits: u32) -> Result<AuxiliaryRoots> {
    if sign_of(beta, digits)?.is_eq() {
        return Err(Error::Domain("beta must be nonzero".into()));
    }
    let (h, d) = (params.h(), params.d());
    let mut disc = RealExpr::integer(1);
    if !h.is_zero() {
        disc = if h.is_negative() {
            disc - scaled(beta.clone(), &h.abs())
        } else {
            disc + scaled(beta.clone(), h)
        };
    }
    if !d.is_zero() {
        let sq = scaled(beta.clone().pow(2), &d.abs());
        disc = if d.is_negative() { disc + sq } else { disc - sq };
    }
    if sign_of(&disc, digits)?.is_lt() {
        return Err(Error::NoRealSolution);
    }

    // a rational root forces β = (2α + h) / (α^2 + d) to be rational
    let irrational = match beta.is_irrational() {
        Some(true) => Some(true),
        Some(false) => {
            let disc = disc.as_rational().expect("rational data");
            if ClosedForm::sqrt(&disc).is_some_and(|v| v.is_rational()) {
                return Err(Error::RationalAuxiliary(format!(
                    "1 + βh - β^2 d = {disc} is a square, both roots are rational"
                )));
            }
            Some(true)
        }
        None => None,
    };
    let root = disc.sqrt();
    let make = |num: RealExpr| AuxiliaryRoot { value: num / beta.clone(), irrational };
    Ok(AuxiliaryRoots {
        plus: make(RealExpr::integer(1) + root.clone()),
        minus: make(RealExpr::integer(1) - root),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxStep {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub point: ConicPoint<BigRational>,
    pub ratio: BigRational,
    pub abs_error: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    /// `p/q` is a root of `m^2 + hm - d`.
    ParametrizationPole,
    /// The point has `x = 0`, so `y/x` is undefined.
    RatioPole,
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkipReason::ParametrizationPole => "parametrization pole",
            SkipReason::RatioPole => "x = 0, ratio undefined",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedStep {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRun {
    pub alpha: RealExpr,
    pub expansion: CfExpansion,
    pub steps: Vec<ApproxStep>,
    pub skipped: Vec<SkippedStep>,
    /// Fewer steps than requested because the precision ran out.
    pub exhausted: bool,
}

impl ApproxRun {
    /// Step indices whose error is larger than at the previous emitted step.
    pub fn error_increases(&self) -> Vec<usize> {
        self.steps.windows(2).filter(|w| w[1].abs_error > w[0].abs_error).map(|w| w[1].n).collect()
    }
}

/// Maps the convergents of the auxiliary root through the parametrization
/// and returns the first `steps` usable points.
pub fn approx_over_conic(
    params: &ConicParams<BigRational>,
    beta: &RealExpr,
    steps: usize,
    digits: u32,
    root: RootChoice,
) -> Result<ApproxRun> {
    let roots = solve_auxiliary(params, beta, digits)?;
    let alpha = roots.get(root).value.clone();
    let expansion = cf_expand(&alpha, steps + SPARE_DIGITS, digits)?;
    let (blo, bhi) = beta.bounds(2 * digits + 10)?;
    let beta_mid = (blo + bhi) / BigRational::from_integer(2.into());

    let mut run = ApproxRun { alpha, expansion, steps: Vec::new(), skipped: Vec::new(), exhausted: false };
    for (n, (p, q)) in run.expansion.convergents.iter().enumerate() {
        if run.steps.len() == steps {
            break;
        }
        let m = BigRational::new(p.clone(), q.clone());
        let skip = |reason| SkippedStep { n, p: p.clone(), q: q.clone(), reason };
        let point = match params.point_at(&ParamValue::Finite(m)) {
            Ok(point) => point,
            Err(Error::ParametrizationPole(_)) => {
                run.skipped.push(skip(SkipReason::ParametrizationPole));
                continue;
            }
            Err(e) => return Err(e),
        };
        if point.x().is_zero() {
            run.skipped.push(skip(SkipReason::RatioPole));
            continue;
        }
        let ratio = point.y() / point.x();
        let abs_error = (&ratio - &beta_mid).abs();
        run.steps.push(ApproxStep { n, p: p.clone(), q: q.clone(), point, ratio, abs_error });
    }
    run.exhausted = run.steps.len() < steps && run.expansion.exhausted;
    if run.steps.len() < steps && !run.exhausted && !run.expansion.terminated {
        // should not happen with SPARE_DIGITS
        return Err(Error::PrecisionExhausted("too many convergents were skipped".into()));
    }
    Ok(run)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PythagoreanStep {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// Primitive `(A, B, C)` with `A^2 + B^2 = C^2`.
    pub triple: [BigInt; 3],
    /// `2pq / (p^2 - q^2)` in lowest terms.
    pub ratio: BigRational,
    pub abs_error: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PythagoreanRun {
    pub alpha: RealExpr,
    pub steps: Vec<PythagoreanStep>,
    pub skipped: Vec<SkippedStep>,
    pub exhausted: bool,
}

/// Primitive triple from `(|p^2 - q^2|, 2|pq|, p^2 + q^2)`.
pub fn pythagorean_triple(p: &BigInt, q: &BigInt) -> [BigInt; 3] {
    let (pp, qq) = (p * p, q * q);
    let a = (&pp - &qq).abs();
    let b = (p * q * 2u32).abs();
    let c = pp + qq;
    let g = a.gcd(&b).gcd(&c);
    let triple = [a / &g, b / &g, c / &g];
    assert_eq!(&triple[0] * &triple[0] + &triple[1] * &triple[1], &triple[2] * &triple[2]);
    triple
}

/// Pythagorean triples whose leg ratios approach `beta`, from the unit circle.
pub fn pythagorean_stream(beta: &RealExpr, steps: usize, digits: u32, root: RootChoice) -> Result<PythagoreanRun> {
    let circle = ConicParams::new(BigRational::zero(), BigRational::from_integer((-1).into()))?;
    let run = approx_over_conic(&circle, beta, steps, digits, root)?;
    let steps = run
        .steps
        .into_iter()
        .map(|s| PythagoreanStep { n: s.n, triple: pythagorean_triple(&s.p, &s.q), p: s.p, q: s.q, ratio: s.ratio, abs_error: s.abs_error })
        .collect();
    Ok(PythagoreanRun { alpha: run.alpha, steps, skipped: run.skipped, exhausted: run.exhausted })
}
