use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::rational::{normalize_scalar, parse_rational};
use super::{Field, FieldSpec};
use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all of u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An odd prime below 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime below 2^63")));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// All elements of the field, in order.
    pub fn elements(self) -> impl Iterator<Item = Fp> {
        (0..self.0).map(move |v| Fp { value: v, modulus: self.0 })
    }
}

/// An element of F_p, stored as its canonical representative in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: PrimeModulus) -> Self {
        let p = modulus.0 as i128;
        Fp { value: (value as i128).rem_euclid(p) as u64, modulus: modulus.0 }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        PrimeModulus(self.modulus)
    }

    pub fn pow(self, exp: u64) -> Self {
        Fp { value: pow_mod(self.value, exp, self.modulus), ..self }
    }

    /// Legendre symbol via Euler's criterion: 0, 1 or -1.
    pub fn legendre(self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        if self.pow((self.modulus - 1) / 2).value == 1 {
            1
        } else {
            -1
        }
    }

    fn check(&self, rhs: &Fp) {
        assert_eq!(self.modulus, rhs.modulus, "mixing elements of F_{} and F_{}", self.modulus, rhs.modulus);
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for Fp {
    type Output = Fp;

    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let s = self.value + rhs.value;
        Fp { value: if s >= self.modulus { s - self.modulus } else { s }, ..self }
    }
}

impl Sub for Fp {
    type Output = Fp;

    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp { value: v, ..self }
    }
}

impl Mul for Fp {
    type Output = Fp;

    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus), ..self }
    }
}

impl Neg for Fp {
    type Output = Fp;

    fn neg(self) -> Fp {
        Fp { value: if self.value == 0 { 0 } else { self.modulus - self.value }, ..self }
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

impl Field for Fp {
    type Ctx = PrimeModulus;

    const EXACT: bool = true;

    fn context(&self) -> PrimeModulus {
        PrimeModulus(self.modulus)
    }

    fn spec(ctx: &PrimeModulus) -> FieldSpec {
        FieldSpec::Prime(ctx.0)
    }

    fn from_i64(v: i64, ctx: &PrimeModulus) -> Self {
        Fp::new(v, *ctx)
    }

    fn from_rational(v: &BigRational, ctx: &PrimeModulus) -> Result<Self> {
        let p = ctx.0;
        let num = Fp { value: reduce_bigint(v.numer(), p), modulus: p };
        let den = Fp { value: reduce_bigint(v.denom(), p), modulus: p };
        den.inv()
            .map(|d| num * d)
            .ok_or_else(|| Error::Parse(format!("denominator of {v} vanishes mod {p}")))
    }

    /// Accepts `k mod p` (p must match the context), plain integers and
    /// rationals `a/b` with `b` invertible mod p.
    fn parse(s: &str, ctx: &PrimeModulus) -> Result<Self> {
        let s = normalize_scalar(s);
        if let Some((k, p)) = s.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("invalid modulus in {s:?}")))?;
            if p != ctx.0 {
                return Err(Error::FieldMismatch(format!("{s:?} is not an element of F_{}", ctx.0)));
            }
            let k: BigInt = k.trim().parse().map_err(|_| Error::Parse(format!("invalid residue in {s:?}")))?;
            return Ok(Fp { value: reduce_bigint(&k, p), modulus: p });
        }
        if s.contains('.') {
            return Err(Error::Parse(format!("decimal {s:?} is not a prime-field element")));
        }
        Self::from_rational(&parse_rational(&s)?, ctx)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus - 2))
    }

    fn is_square(&self) -> Result<bool> {
        Ok(self.legendre() >= 0)
    }

    fn sign(&self) -> Option<Ordering> {
        None
    }

    fn to_decimal(&self, _: usize) -> Option<String> {
        None
    }
}
