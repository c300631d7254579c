//! Generalized Rédei rational functions.
//!
//! The `n`-th power of `M = [[z + h, d], [1, z]]` has the shape
//! `[[N_n + h D_n, d D_n], [D_n, N_n]]`; the pair `(N_n, D_n)` obeys an
//! addition law mirroring the conic product, and `Q_n = N_n / D_n` is the
//! `n`-th power of `z` under `⊙_P`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::conic::ParamValue;
use crate::error::{Error, Result};
use crate::field::{ConicParams, Field};

/// The second-order sequence with initial terms `a0, a1` and characteristic
/// polynomial `t^2 - r t + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceSpec<F> {
    pub a0: F,
    pub a1: F,
    pub r: F,
    pub k: F,
}

impl<F: Field> RecurrenceSpec<F> {
    pub fn new(a0: F, a1: F, r: F, k: F) -> Self {
        RecurrenceSpec { a0, a1, r, k }
    }

    pub fn iter(&self) -> RecurrenceIter<F> {
        RecurrenceIter { prev: self.a0.clone(), cur: self.a1.clone(), r: self.r.clone(), k: self.k.clone() }
    }

    /// The first `count` terms by direct unrolling.
    pub fn terms(&self, count: usize) -> Vec<F> {
        self.iter().take(count).collect()
    }

    /// Term `n` in `O(log n)` multiplications via the companion matrix.
    pub fn term(&self, n: u64) -> F {
        if n == 0 {
            return self.a0.clone();
        }
        let zero = self.a0.zero_like();
        let companion = StepMatrix::from_rows([
            [self.r.clone(), -self.k.clone()],
            [self.a0.one_like(), zero],
        ]);
        // [t_n, t_(n-1)]^T = C^(n-1) [a1, a0]^T
        let m = companion.pow(n - 1);
        m.entry(0, 0).clone() * self.a1.clone() + m.entry(0, 1).clone() * self.a0.clone()
    }
}

/// Iterator over the terms of a [`RecurrenceSpec`], starting with `a0`.
#[derive(Debug, Clone)]
pub struct RecurrenceIter<F> {
    prev: F,
    cur: F,
    r: F,
    k: F,
}

impl<F: Field> Iterator for RecurrenceIter<F> {
    type Item = F;

    fn next(&mut self) -> Option<F> {
        let next = self.r.clone() * self.cur.clone() - self.k.clone() * self.prev.clone();
        let out = std::mem::replace(&mut self.prev, std::mem::replace(&mut self.cur, next));
        Some(out)
    }
}

/// A 2x2 matrix over the field.
#[derive(Debug, Clone, PartialEq)]
pub struct StepMatrix<F> {
    rows: [[F; 2]; 2],
}

impl<F: Field> StepMatrix<F> {
    pub fn from_rows(rows: [[F; 2]; 2]) -> Self {
        StepMatrix { rows }
    }

    pub fn identity_like(v: &F) -> Self {
        let (one, zero) = (v.one_like(), v.zero_like());
        StepMatrix { rows: [[one.clone(), zero.clone()], [zero, one]] }
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.rows[i][j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.rows;
        let b = &rhs.rows;
        let cell = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        StepMatrix { rows: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]] }
    }

    pub fn pow(&self, n: u64) -> Self {
        StepMatrix { rows: F::mat2_pow(&self.rows, n) }
    }

    pub fn det(&self) -> F {
        self.rows[0][0].clone() * self.rows[1][1].clone() - self.rows[0][1].clone() * self.rows[1][0].clone()
    }
}

/// How `(N_n, D_n)` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Binary powering of the step matrix, `O(log n)`.
    Matrix,
    /// Unrolling the two linear recurrences, `O(n)`.
    Recurrence,
    /// Folding the addition law with the index-1 pair, `O(n)`.
    Naive,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" => Ok(Strategy::Matrix),
            "recurrence" => Ok(Strategy::Recurrence),
            "naive" => Ok(Strategy::Naive),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}; expected matrix, recurrence or naive"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Matrix => "matrix",
            Strategy::Recurrence => "recurrence",
            Strategy::Naive => "naive",
        })
    }
}

#[derive(Debug)]
struct ContextInner<F> {
    h: F,
    d: F,
    z: F,
}

/// The parameters `(h, d, z)` shared by a family of Rédei pairs.
#[derive(Debug)]
pub struct RedeiContext<F: Field>(Arc<ContextInner<F>>);

impl<F: Field> Clone for RedeiContext<F> {
    fn clone(&self) -> Self {
        RedeiContext(Arc::clone(&self.0))
    }
}

impl<F: Field> PartialEq for RedeiContext<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.h.same_context(&other.0.h)
                && self.0.h == other.0.h
                && self.0.d == other.0.d
                && self.0.z == other.0.z)
    }
}

/// `(N_n, D_n)` for a fixed context.
#[derive(Debug, Clone, PartialEq)]
pub struct RedeiPair<F: Field> {
    pub n: u64,
    pub num: F,
    pub den: F,
    ctx: RedeiContext<F>,
}

impl<F: Field> RedeiContext<F> {
    pub fn new(h: F, d: F, z: F) -> Result<Self> {
        if !h.same_context(&d) || !h.same_context(&z) {
            return Err(Error::FieldMismatch("h, d and z must share a field".into()));
        }
        Ok(RedeiContext(Arc::new(ContextInner { h, d, z })))
    }

    pub fn h(&self) -> &F {
        &self.0.h
    }

    pub fn d(&self) -> &F {
        &self.0.d
    }

    pub fn z(&self) -> &F {
        &self.0.z
    }

    /// `z^2 + hz - d`, the determinant of the step matrix.
    pub fn determinant(&self) -> F {
        self.z().square() + self.h().clone() * self.z().clone() - self.d().clone()
    }

    /// `[[z + h, d], [1, z]]`.
    pub fn step_matrix(&self) -> StepMatrix<F> {
        let (h, d, z) = (self.h().clone(), self.d().clone(), self.z().clone());
        let one = z.one_like();
        StepMatrix::from_rows([[z.clone() + h, d], [one, z]])
    }

    /// `W(1, z, 2z + h, z^2 + hz - d)`.
    pub fn numerator_recurrence(&self) -> RecurrenceSpec<F> {
        let z = self.z().clone();
        RecurrenceSpec::new(z.one_like(), z.clone(), z.int_like(2) * z + self.h().clone(), self.determinant())
    }

    /// `W(0, 1, 2z + h, z^2 + hz - d)`.
    pub fn denominator_recurrence(&self) -> RecurrenceSpec<F> {
        let z = self.z().clone();
        RecurrenceSpec::new(z.zero_like(), z.one_like(), z.int_like(2) * z + self.h().clone(), self.determinant())
    }

    fn pair_of(&self, n: u64, num: F, den: F) -> RedeiPair<F> {
        RedeiPair { n, num, den, ctx: self.clone() }
    }

    /// `(N_0, D_0) = (1, 0)`.
    pub fn zero_pair(&self) -> RedeiPair<F> {
        self.pair_of(0, self.z().one_like(), self.z().zero_like())
    }

    /// `(N_1, D_1) = (z, 1)`.
    pub fn unit_pair(&self) -> RedeiPair<F> {
        self.pair_of(1, self.z().clone(), self.z().one_like())
    }

    pub fn pair(&self, n: u64, strategy: Strategy) -> RedeiPair<F> {
        match strategy {
            Strategy::Matrix => {
                let m = self.step_matrix().pow(n);
                let (num, den) = (m.entry(1, 1).clone(), m.entry(1, 0).clone());
                debug_assert!(
                    *m.entry(0, 0) == num.clone() + self.h().clone() * den.clone()
                        && *m.entry(0, 1) == self.d().clone() * den.clone(),
                    "step matrix power lost its shape"
                );
                self.pair_of(n, num, den)
            }
            Strategy::Recurrence => {
                let n_us = usize::try_from(n).expect("index fits in memory");
                let num = self.numerator_recurrence().iter().nth(n_us).expect("infinite iterator");
                let den = self.denominator_recurrence().iter().nth(n_us).expect("infinite iterator");
                self.pair_of(n, num, den)
            }
            Strategy::Naive => {
                let unit = self.unit_pair();
                (0..n).fold(self.zero_pair(), |acc, _| acc.add_unchecked(&unit))
            }
        }
    }

    /// Pairs for every index `0..=max_n`. The linear strategies share work
    /// between consecutive indices.
    pub fn pairs(&self, max_n: u64, strategy: Strategy) -> Vec<RedeiPair<F>> {
        let count = usize::try_from(max_n).expect("index fits in memory") + 1;
        match strategy {
            Strategy::Matrix => (0..=max_n).map(|n| self.pair(n, Strategy::Matrix)).collect(),
            Strategy::Recurrence => self
                .numerator_recurrence()
                .iter()
                .zip(self.denominator_recurrence().iter())
                .take(count)
                .enumerate()
                .map(|(n, (num, den))| self.pair_of(n as u64, num, den))
                .collect(),
            Strategy::Naive => {
                let unit = self.unit_pair();
                std::iter::successors(Some(self.zero_pair()), |p| Some(p.add_unchecked(&unit)))
                    .take(count)
                    .collect()
            }
        }
    }

    /// `Q_n = N_n / D_n`, or `alpha` when `D_n = 0` (always for `n = 0`).
    pub fn q(&self, n: u64) -> ParamValue<F> {
        self.pair(n, Strategy::Matrix).q()
    }

    /// The parameter group `⊙_P` for `(h, d)`, in which `Q_n` is the `n`-th power of `z`.
    pub fn param_group(&self) -> ConicParams<F> {
        ConicParams::new(self.h().clone(), self.d().clone()).expect("context fields agree")
    }

    /// The same `(h, d)` at a different base value `z`.
    pub fn with_z(&self, z: F) -> Result<Self> {
        Self::new(self.h().clone(), self.d().clone(), z)
    }
}

impl<F: Field> RedeiPair<F> {
    pub fn context(&self) -> &RedeiContext<F> {
        &self.ctx
    }

    /// Index `n + m` from indices `n` and `m`:
    /// `N = N_n N_m + d D_n D_m`, `D = D_n N_m + h D_n D_m + N_n D_m`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let dd = self.den.clone() * other.den.clone();
        let num = self.num.clone() * other.num.clone() + self.ctx.d().clone() * dd.clone();
        let den = self.den.clone() * other.num.clone() + self.ctx.h().clone() * dd + self.num.clone() * other.den.clone();
        RedeiPair { n: self.n + other.n, num, den, ctx: self.ctx.clone() }
    }

    pub fn q(&self) -> ParamValue<F> {
        match self.num.checked_div(&self.den) {
            Some(v) => ParamValue::Finite(v),
            None => ParamValue::Alpha,
        }
    }

    /// `N^2 + h N D - d D^2`, which equals `(z^2 + hz - d)^n`.
    pub fn norm(&self) -> F {
        self.num.square() + self.ctx.h().clone() * self.num.clone() * self.den.clone() - self.ctx.d().clone() * self.den.square()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeModulus};
    use num_rational::BigRational;

    fn q(s: &str) -> BigRational {
        BigRational::parse(s, &()).unwrap()
    }

    fn ctx(h: &str, d: &str, z: &str) -> RedeiContext<BigRational> {
        RedeiContext::new(q(h), q(d), q(z)).unwrap()
    }

    /// Plain triple-loop matrix product, independent of `StepMatrix`.
    fn brute_matrix_power(m: [[i64; 2]; 2], n: u32) -> [[i64; 2]; 2] {
        let mut acc = [[1, 0], [0, 1]];
        for _ in 0..n {
            let mut next = [[0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        next[i][j] += acc[i][k] * m[k][j];
                    }
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn nd_pair_examples() {
        let c = ctx("0", "2", "1");
        let cube = brute_matrix_power([[1, 2], [1, 1]], 3);
        assert_eq!(cube, [[7, 10], [5, 7]]);
        for s in [Strategy::Matrix, Strategy::Recurrence, Strategy::Naive] {
            let p3 = c.pair(3, s);
            assert_eq!((p3.num.to_string(), p3.den.to_string()), ("7".into(), "5".into()), "{s}");
            let p2 = c.pair(2, s);
            assert_eq!((p2.num.to_string(), p2.den.to_string()), ("3".into(), "2".into()), "{s}");
            let p0 = c.pair(0, s);
            assert_eq!((p0.num.to_string(), p0.den.to_string()), ("1".into(), "0".into()), "{s}");
        }
    }

    #[test]
    fn nd_add_examples() {
        let c = ctx("0", "2", "1");
        let (p1, p2) = (c.pair(1, Strategy::Matrix), c.pair(2, Strategy::Matrix));
        assert_eq!(p1.add(&p2).unwrap(), c.pair(3, Strategy::Matrix));
        assert_eq!(p1.add(&p1).unwrap(), p2);
        assert_eq!(p2.add(&c.zero_pair()).unwrap(), p2);
        assert_eq!(p1.add(&ctx("0", "3", "1").unit_pair()), Err(Error::ContextMismatch));
    }

    #[test]
    fn q_examples() {
        let c = ctx("0", "2", "1");
        assert_eq!(c.q(2), ParamValue::Finite(q("3/2")));
        assert_eq!(c.q(0), ParamValue::Alpha);
        let z = q("-5/7");
        assert_eq!(c.with_z(z.clone()).unwrap().q(1), ParamValue::Finite(z));
        let inner = c.with_z(q("3/2")).unwrap();
        assert_eq!(inner.q(2), ParamValue::Finite(q("17/12")));
        assert_eq!(c.q(4), ParamValue::Finite(q("17/12")));
    }

    #[test]
    fn determinant_sign() {
        let c = ctx("5/3", "-2/7", "3/4");
        let m = c.step_matrix();
        assert_eq!(m.det(), c.determinant());
        for n in 0..12 {
            let p = c.pair(n, Strategy::Matrix);
            assert_eq!(c.step_matrix().pow(n).det(), p.norm());
            assert_eq!(p.norm(), num_traits::pow(c.determinant(), n as usize));
        }
    }

    #[test]
    fn recurrence_term_agrees_with_unrolling() {
        let spec = RecurrenceSpec::new(q("2"), q("-1/3"), q("5/2"), q("7/4"));
        let terms = spec.terms(40);
        for (n, t) in terms.iter().enumerate() {
            assert_eq!(spec.term(n as u64), *t);
        }
    }

    #[test]
    fn order_divides_over_prime_fields() {
        // Over F_p the orbit of z under ⊙_P is finite, so D_n = 0 for some n > 0.
        let m = PrimeModulus::new(11).unwrap();
        let c = RedeiContext::new(Fp::new(1, m), Fp::new(3, m), Fp::new(4, m)).unwrap();
        let first = (1..=24).find(|&n| c.q(n).is_alpha()).unwrap();
        assert!(first <= 12);
        assert!(c.q(2 * first).is_alpha());
    }

    #[test]
    fn strategies_agree_on_ranges() {
        let c = ctx("-1/2", "3", "2/5");
        let a = c.pairs(40, Strategy::Matrix);
        assert_eq!(a, c.pairs(40, Strategy::Recurrence));
        assert_eq!(a, c.pairs(40, Strategy::Naive));
    }
}
