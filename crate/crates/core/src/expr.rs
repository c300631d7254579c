//! Descriptions of real numbers and rigorous rational enclosures of them.
//!
//! A [`RealExpr`] is a small expression tree over rationals, `pi`, square
//! roots and the field operations. It is evaluated with outward-rounded
//! interval arithmetic on a dyadic grid, so every enclosure is guaranteed to
//! contain the true value.

use std::fmt;
use std::ops;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::approx::ClosedForm;
use crate::decimal;
use crate::error::{Error, Result};
use crate::field::rational::normalize_scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum RealExpr {
    Rational(BigRational),
    Pi,
    Sqrt(Box<RealExpr>),
    Neg(Box<RealExpr>),
    Add(Box<RealExpr>, Box<RealExpr>),
    Sub(Box<RealExpr>, Box<RealExpr>),
    Mul(Box<RealExpr>, Box<RealExpr>),
    Div(Box<RealExpr>, Box<RealExpr>),
    Pow(Box<RealExpr>, u32),
}

impl RealExpr {
    pub fn rational(v: BigRational) -> Self {
        RealExpr::Rational(v)
    }

    pub fn integer(v: i64) -> Self {
        RealExpr::Rational(BigRational::from_integer(v.into()))
    }

    pub fn sqrt(self) -> Self {
        RealExpr::Sqrt(Box::new(self))
    }

    pub fn pow(self, n: u32) -> Self {
        RealExpr::Pow(Box::new(self), n)
    }

    /// Exact value when the expression is rational by construction.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.as_closed_form()? {
            ClosedForm::Rational(r) => Some(r),
            ClosedForm::Quadratic(_) => None,
        }
    }

    /// Exact value when the expression is rational or a quadratic irrational
    /// with a single radicand.
    pub fn as_closed_form(&self) -> Option<ClosedForm> {
        use RealExpr::*;
        Some(match self {
            Rational(r) => ClosedForm::Rational(r.clone()),
            Pi => return None,
            Sqrt(e) => match e.as_closed_form()? {
                ClosedForm::Rational(r) => ClosedForm::sqrt(&r)?,
                ClosedForm::Quadratic(_) => return None,
            },
            Neg(e) => e.as_closed_form()?.neg(),
            Add(a, b) => a.as_closed_form()?.add(&b.as_closed_form()?)?,
            Sub(a, b) => a.as_closed_form()?.sub(&b.as_closed_form()?)?,
            Mul(a, b) => a.as_closed_form()?.mul(&b.as_closed_form()?)?,
            Div(a, b) => a.as_closed_form()?.div(&b.as_closed_form()?)?.ok()?,
            Pow(e, n) => {
                let base = e.as_closed_form()?;
                let mut acc = ClosedForm::from_integer(1);
                for _ in 0..*n {
                    acc = acc.mul(&base)?;
                }
                acc
            }
        })
    }

    /// `Some(true)` when the value is provably irrational, `Some(false)` when
    /// it is rational, `None` when undecided.
    pub fn is_irrational(&self) -> Option<bool> {
        if let Some(v) = self.as_closed_form() {
            return Some(!v.is_rational());
        }
        match self {
            RealExpr::Pi => Some(true),
            _ => None,
        }
    }

    /// Rational lower and upper bounds at most `10^-digits` apart.
    pub fn bounds(&self, digits: u32) -> Result<(BigRational, BigRational)> {
        let target = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10u32), digits as usize));
        let mut bits = u64::from(digits) * 10 / 3 + 32;
        for _ in 0..6 {
            match self.enclose(bits) {
                Ok(iv) if iv.width() <= target => return Ok((iv.lo, iv.hi)),
                Ok(_) | Err(Error::PrecisionExhausted(_)) => bits *= 2,
                Err(e) => return Err(e),
            }
        }
        Err(Error::PrecisionExhausted(format!("could not enclose {self} to {digits} digits")))
    }

    /// Decimal approximation rounded to `places`.
    pub fn to_decimal(&self, places: usize) -> Result<String> {
        let (lo, hi) = self.bounds(places as u32 + 10)?;
        Ok(decimal::round(&((lo + hi) / BigRational::from_integer(2.into())), places))
    }

    pub(crate) fn enclose(&self, bits: u64) -> Result<Interval> {
        use RealExpr::*;
        Ok(match self {
            Rational(r) => Interval::point(r.clone()),
            Pi => pi_interval(bits),
            Sqrt(e) => e.enclose(bits)?.sqrt(bits)?,
            Neg(e) => e.enclose(bits)?.neg(),
            Add(a, b) => a.enclose(bits)?.add(&b.enclose(bits)?),
            Sub(a, b) => a.enclose(bits)?.sub(&b.enclose(bits)?),
            Mul(a, b) => a.enclose(bits)?.mul(&b.enclose(bits)?).round_out(bits),
            Div(a, b) => a.enclose(bits)?.div(&b.enclose(bits)?)?.round_out(bits),
            Pow(e, n) => e.enclose(bits)?.pow(*n).round_out(bits),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            RealExpr::Add(..) | RealExpr::Sub(..) => 1,
            RealExpr::Mul(..) | RealExpr::Div(..) => 2,
            RealExpr::Rational(r) if r.is_negative() => 3,
            RealExpr::Rational(r) if !r.is_integer() => 2,
            RealExpr::Neg(_) => 3,
            RealExpr::Pow(..) => 4,
            _ => 5,
        }
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn floor_to_grid(v: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    BigRational::new((v * BigRational::from_integer(scale.clone())).floor().to_integer(), scale)
}

fn ceil_to_grid(v: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    BigRational::new((v * BigRational::from_integer(scale.clone())).ceil().to_integer(), scale)
}

impl Interval {
    pub fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn round_out(self, bits: u64) -> Self {
        if self.is_point() && self.lo.denom().bits() <= bits {
            return self;
        }
        Interval { lo: floor_to_grid(&self.lo, bits), hi: ceil_to_grid(&self.hi, bits) }
    }

    fn neg(self) -> Self {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    fn add(&self, rhs: &Self) -> Self {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        Interval { lo, hi }
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.lo.is_zero() && rhs.hi.is_zero() {
            return Err(Error::DivisionByZero("expression divides by zero".into()));
        }
        if !rhs.lo.is_positive() && !rhs.hi.is_negative() {
            return Err(Error::PrecisionExhausted("divisor interval contains zero".into()));
        }
        let inv = Interval { lo: rhs.hi.recip(), hi: rhs.lo.recip() };
        Ok(self.mul(&inv))
    }

    fn pow(&self, n: u32) -> Self {
        let p = |v: &BigRational| num_traits::pow(v.clone(), n as usize);
        if n == 0 {
            return Interval::point(BigRational::one());
        }
        if !self.lo.is_negative() || n % 2 == 1 {
            Interval { lo: p(&self.lo), hi: p(&self.hi) }
        } else if !self.hi.is_positive() {
            Interval { lo: p(&self.hi), hi: p(&self.lo) }
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Interval { lo: BigRational::zero(), hi: p(&m) }
        }
    }

    fn sqrt(&self, bits: u64) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::Domain(format!("square root of negative number {}", self.hi)));
        }
        let lo = if self.lo.is_negative() { BigRational::zero() } else { self.lo.clone() };
        let four = BigRational::from_integer(BigInt::one() << (2 * bits));
        let scale = BigInt::one() << bits;
        let lo_root = (lo * &four).floor().to_integer().sqrt();
        let hi_root = (&self.hi * &four).ceil().to_integer().sqrt() + 1;
        Ok(Interval { lo: BigRational::new(lo_root, scale.clone()), hi: BigRational::new(hi_root, scale) })
    }
}

/// Sum of `atan(1/x)` in fixed point with `one = 2^w`; returns the sum and a
/// bound on its error in units of `2^-w`.
fn atan_inverse(x: u32, one: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * x;
    // Nested floor divisions equal a single floor division, so `power` is
    // exactly floor(2^w / x^(2k+1)).
    let mut power = one / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &power / (2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // Two units per computed term plus the alternating tail.
    (sum, 2 * k + 2)
}

/// Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
fn pi_interval(bits: u64) -> Interval {
    let work = bits + 16;
    let one = BigInt::one() << work;
    let (a5, e5) = atan_inverse(5, &one);
    let (a239, e239) = atan_inverse(239, &one);
    let approx = a5 * 16 - a239 * 4;
    let err = BigInt::from(16 * e5 + 4 * e239);
    Interval {
        lo: BigRational::new(&approx - &err, one.clone()),
        hi: BigRational::new(approx + err, one),
    }
    .round_out(bits)
}

impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RealExpr::*;
        let wrap = |f: &mut fmt::Formatter<'_>, e: &RealExpr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Rational(r) => write!(f, "{r}"),
            Pi => f.write_str("pi"),
            Sqrt(e) => write!(f, "sqrt({e})"),
            Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, 4)
            }
            Add(a, b) | Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(if matches!(self, Add(..)) { " + " } else { " - " })?;
                wrap(f, b, 2)
            }
            Mul(a, b) | Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(if matches!(self, Mul(..)) { "*" } else { "/" })?;
                wrap(f, b, 3)
            }
            Pow(e, n) => {
                wrap(f, e, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent suffix: e5, e-5, E+5
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let mut ident: String = chars[start..i].iter().collect();
            // `sqrt:k` and `rat:p/q` keep their argument attached
            if i < chars.len() && chars[i] == ':' {
                i += 1;
                let arg_start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '-') {
                    i += 1;
                }
                ident.push(':');
                ident.extend(&chars[arg_start..i]);
            }
            out.push(Token::Ident(ident));
        } else if "+-*/^()\u{221a}\u{3c0}\u{b2}".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<RealExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        match self.peek() {
            Some(Token::Num(_)) | Some(Token::Ident(_)) => true,
            Some(Token::Sym(c)) => matches!(c, '(' | '\u{221a}' | '\u{3c0}'),
            None => false,
        }
    }

    fn term(&mut self) -> Result<RealExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                acc = acc / self.unary()?;
            } else if self.starts_primary() {
                // juxtaposition, as in 3sqrt(33)
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RealExpr> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                RealExpr::Rational(r) => RealExpr::Rational(-r),
                e => -e,
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RealExpr> {
        let mut base = self.primary()?;
        loop {
            if self.eat('^') {
                let n = match self.next() {
                    Some(Token::Num(n)) => n.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {n:?}")))?,
                    _ => return Err(Error::Parse("expected integer exponent".into())),
                };
                base = RealExpr::Pow(Box::new(base), n);
            } else if self.eat('\u{b2}') {
                base = RealExpr::Pow(Box::new(base), 2);
            } else {
                return Ok(base);
            }
        }
    }

    fn primary(&mut self) -> Result<RealExpr> {
        match self.next() {
            Some(Token::Num(n)) => decimal::parse(&n)
                .map(RealExpr::Rational)
                .ok_or_else(|| Error::Parse(format!("invalid number {n:?}"))),
            Some(Token::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Sym('\u{221a}')) => Ok(self.power()?.sqrt()),
            Some(Token::Sym('\u{3c0}')) => Ok(RealExpr::Pi),
            Some(Token::Ident(id)) => self.named(&id),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn named(&mut self, id: &str) -> Result<RealExpr> {
        if id == "pi" {
            return Ok(RealExpr::Pi);
        }
        if id == "sqrt" {
            self.expect('(')?;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e.sqrt());
        }
        if let Some(k) = id.strip_prefix("sqrt:") {
            let k: BigInt = k.parse().map_err(|_| Error::Parse(format!("invalid radicand in {id:?}")))?;
            if !k.is_positive() || k.sqrt().pow(2) == k {
                return Err(Error::Parse(format!("{id:?}: radicand must be a positive non-square integer")));
            }
            return Ok(RealExpr::Rational(BigRational::from_integer(k)).sqrt());
        }
        if let Some(r) = id.strip_prefix("rat:") {
            return crate::field::rational::parse_rational(r).map(RealExpr::Rational);
        }
        Err(Error::Parse(format!("unknown name {id:?}")))
    }
}

macro_rules! expr_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for RealExpr {
            type Output = RealExpr;

            fn $method(self, rhs: RealExpr) -> RealExpr {
                RealExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl ops::Neg for RealExpr {
    type Output = RealExpr;

    fn neg(self) -> RealExpr {
        RealExpr::Neg(Box::new(self))
    }
}

impl FromStr for RealExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = normalize_scalar(s);
        let mut parser = Parser { tokens: tokenize(&s)?, pos: 0 };
        if parser.tokens.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let e = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}
