//! Fixed-place decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn pow10(places: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), places)
}

fn render_scaled(neg: bool, units: &BigInt, places: usize) -> String {
    let s = units.to_string();
    let body = if places == 0 {
        s
    } else if s.len() <= places {
        format!("0.{}{}", "0".repeat(places - s.len()), s)
    } else {
        let (int, frac) = s.split_at(s.len() - places);
        format!("{int}.{frac}")
    };
    if neg && !units.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// `value` rounded half away from zero to `places` fractional digits.
pub fn round(value: &BigRational, places: usize) -> String {
    let scaled = value.abs() * BigRational::from_integer(pow10(places));
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let units = if r * 2 >= *scaled.denom() { q + 1 } else { q };
    render_scaled(value.is_negative(), &units, places)
}

/// `value` truncated toward zero to `places` fractional digits.
pub fn truncate(value: &BigRational, places: usize) -> String {
    let scaled = value.abs() * BigRational::from_integer(pow10(places));
    let units = scaled.numer() / scaled.denom();
    render_scaled(value.is_negative(), &units, places)
}

/// `value` in scientific notation with `sig` significant digits, e.g. `2.35e-7`.
pub fn scientific(value: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if value.is_zero() {
        return "0".into();
    }
    let abs = value.abs();
    let ten = BigRational::from_integer(10.into());
    // exponent estimate from digit counts, then corrected to 1 <= m < 10
    let mut exp = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    let scale = |e: i64| {
        if e >= 0 {
            BigRational::from_integer(pow10(e as usize))
        } else {
            BigRational::from_integer(pow10((-e) as usize)).recip()
        }
    };
    let mut m = &abs / scale(exp);
    while m >= ten {
        m /= &ten;
        exp += 1;
    }
    while m < BigRational::from_integer(1.into()) {
        m *= &ten;
        exp -= 1;
    }
    let mut digits = round(&m, sig - 1);
    if digits.starts_with("10") {
        exp += 1;
        digits = round(&(m / ten), sig - 1);
    }
    let sign = if value.is_negative() { "-" } else { "" };
    format!("{sign}{digits}e{exp}")
}

/// Parses a plain decimal literal such as `-3`, `0.25` or `2.5e-3` exactly.
pub fn parse(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int}{frac}").parse().ok()?;
    let shift = exp - frac.len() as i32;
    let mut value = BigRational::from_integer(all);
    if shift >= 0 {
        value *= BigRational::from_integer(pow10(shift as usize));
    } else {
        value /= BigRational::from_integer(pow10((-shift) as usize));
    }
    Some(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_notation() {
        assert_eq!(scientific(&q(1, 400), 3), "2.50e-3");
        assert_eq!(scientific(&q(-12345, 1), 2), "-1.2e4");
        assert_eq!(scientific(&q(9999, 1000), 2), "1.0e1");
        assert_eq!(scientific(&q(1, 1), 1), "1e0");
        assert_eq!(scientific(&q(0, 1), 3), "0");
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rounding_and_truncation() {
        assert_eq!(round(&q(19, 72), 5), "0.26389");
        assert_eq!(truncate(&q(19, 72), 5), "0.26388");
        assert_eq!(round(&q(-1, 3), 3), "-0.333");
        assert_eq!(round(&q(12, 5), 0), "2");
        assert_eq!(truncate(&q(1, 1000), 2), "0.00");
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse("0.25"), Some(q(1, 4)));
        assert_eq!(parse("-3"), Some(q(-3, 1)));
        assert_eq!(parse("2.5e-1"), Some(q(1, 4)));
        assert_eq!(parse("1e3"), Some(q(1000, 1)));
        assert_eq!(parse("abc"), None);
        assert_eq!(parse("."), None);
    }
}
