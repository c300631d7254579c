//! Seeded property suites behind `conics check`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conics_core::approx::{
    approx_over_conic, cf_expand, point_ratio_limit, pythagorean_stream, recurrence_ratio_limit, RecurrenceLimitSpec,
    RootChoice,
};
use conics_core::field::{Field, Fp};
use conics_core::point_power::{fg_pair, q_halving_check, q_param};
use conics_core::{AlgebraElement, ConicParams, ConicPoint, Error, ParamValue, RealExpr, RedeiContext, Strategy};

use crate::args::SuiteName;
use crate::sample::{self, Draw};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub property: String,
    pub field: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

pub fn run(name: SuiteName, cfg: Config) -> Vec<PropertyResult> {
    match name {
        SuiteName::Group => group(cfg),
        SuiteName::Redei => redei(cfg),
        SuiteName::Power => power(cfg),
        SuiteName::Approx => approx(cfg),
        SuiteName::All => [group(cfg), redei(cfg), power(cfg), approx(cfg)].concat(),
    }
}

fn rng_for(cfg: Config, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ tag)
}

/// Named properties accumulated in first-use order.
struct Recorder {
    suite: &'static str,
    field: String,
    results: Vec<PropertyResult>,
}

impl Recorder {
    fn new(suite: &'static str, field: impl Into<String>) -> Self {
        Recorder { suite, field: field.into(), results: Vec::new() }
    }

    fn check(&mut self, property: &str, ok: bool, detail: impl FnOnce() -> String) {
        let idx = match self.results.iter().position(|r| r.property == property) {
            Some(i) => i,
            None => {
                self.results.push(PropertyResult {
                    suite: self.suite,
                    property: property.to_owned(),
                    field: self.field.clone(),
                    cases: 0,
                    failures: 0,
                    first_failure: None,
                });
                self.results.len() - 1
            }
        };
        let r = &mut self.results[idx];
        r.cases += 1;
        if !ok {
            r.failures += 1;
            if r.first_failure.is_none() {
                r.first_failure = Some(detail());
            }
        }
    }

    fn finish(self) -> Vec<PropertyResult> {
        self.results
    }
}

const GROUP_PRIMES: [u64; 4] = [3, 7, 11, 19];

fn group(cfg: Config) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    for (i, p) in GROUP_PRIMES.into_iter().enumerate() {
        let mut rng = rng_for(cfg, 100 + i as u64);
        let m = sample::modulus(p);
        let mut rec = Recorder::new("group", format!("fp:{p}"));
        for _ in 0..cfg.samples {
            let params = sample::irreducible_fp_params(&mut rng, m);
            let points = sample::all_points(&params);
            let pts = [0, 1, 2].map(|_| sample::pick(&mut rng, &points));
            let ps = [0, 1, 2].map(|_| sample::fp_param(&mut rng, m));
            let us = [0, 1].map(|_| AlgebraElement::new(sample::fp(&mut rng, m), sample::fp(&mut rng, m), &params));
            rec.check("E order is p + 1", points.len() as u64 == p + 1, || format!("{params}: {} points", points.len()));
            group_case(&mut rec, &params, &pts, &ps, &us);
        }
        out.extend(rec.finish());
    }
    let mut rng = rng_for(cfg, 199);
    let mut rec = Recorder::new("group", "rational");
    for _ in 0..cfg.samples {
        let params = sample::irreducible_rational_params(&mut rng);
        let pts = [0, 1, 2].map(|_| sample::rational_point(&mut rng, &params));
        let ps = [0, 1, 2].map(|_| sample::rational_param(&mut rng));
        let us = [0, 1].map(|_| {
            AlgebraElement::new(sample::rational(&mut rng, 9, 4), sample::rational(&mut rng, 9, 4), &params)
        });
        group_case(&mut rec, &params, &pts, &ps, &us);
    }
    out.extend(rec.finish());
    out
}

/// `[m + x]` for finite `m`, `[1]` for alpha, multiplied in the quadratic
/// algebra and read back as a parameter.
fn class_product<F: Field>(params: &ConicParams<F>, a: &ParamValue<F>, b: &ParamValue<F>) -> ParamValue<F> {
    let class = |v: &ParamValue<F>| match v {
        ParamValue::Alpha => AlgebraElement::one(params),
        ParamValue::Finite(m) => AlgebraElement::new(m.clone(), m.one_like(), params),
    };
    let prod = class(a).mul(&class(b)).expect("same params");
    match prod.a().checked_div(prod.b()) {
        Some(m) => ParamValue::Finite(m),
        None => ParamValue::Alpha,
    }
}

fn group_case<F: Field>(
    rec: &mut Recorder,
    params: &ConicParams<F>,
    [p, q, r]: &[ConicPoint<F>; 3],
    [a, b, c]: &[ParamValue<F>; 3],
    [u, v]: &[AlgebraElement<F>; 2],
) {
    let one = ConicPoint::identity(params);
    let mul = |s: &ConicPoint<F>, t: &ConicPoint<F>| s.mul(t).expect("same params");
    let pq = mul(p, q);
    rec.check("E closure", ConicPoint::new(pq.x().clone(), pq.y().clone(), params).is_ok(), || format!("{p} * {q} = {pq}"));
    rec.check("E associativity", mul(&pq, r) == mul(p, &mul(q, r)), || format!("{p}, {q}, {r}"));
    rec.check("E identity", mul(p, &one) == *p && mul(&one, p) == *p, || format!("{p}"));
    rec.check("E inverse", mul(p, &p.inverse()).is_identity(), || format!("{p}"));
    rec.check("E commutativity", pq == mul(q, p), || format!("{p}, {q}"));

    let pm = |s: &ParamValue<F>, t: &ParamValue<F>| params.param_mul(s, t);
    let alpha = ParamValue::Alpha;
    rec.check("P associativity", pm(&pm(a, b), c) == pm(a, &pm(b, c)), || format!("{a}, {b}, {c}"));
    rec.check("P identity", pm(a, &alpha) == *a && pm(&alpha, a) == *a, || format!("{a}"));
    rec.check("P inverse", pm(a, &params.param_inverse(a)).is_alpha(), || format!("{a}"));
    rec.check("P commutativity", pm(a, b) == pm(b, a), || format!("{a}, {b}"));

    let eps = |m: &ParamValue<F>| params.point_at(m).expect("irreducible, no poles");
    rec.check("tau homomorphism", pq.to_param() == pm(&p.to_param(), &q.to_param()), || format!("{p}, {q}"));
    rec.check("eps homomorphism", eps(&pm(a, b)) == mul(&eps(a), &eps(b)), || format!("{a}, {b}"));
    rec.check("tau(eps(m)) = m", eps(a).to_param() == *a, || format!("{a}"));
    rec.check("eps(tau(P)) = P", eps(&p.to_param()) == *p, || format!("{p}"));
    rec.check("quotient class product", class_product(params, a, b) == pm(a, b), || format!("{a}, {b}"));

    let uv = u.mul(v).expect("same params");
    rec.check("norm multiplicativity", uv.norm() == u.norm() * v.norm(), || format!("{u}, {v}"));
}

const REDEI_MAX_N: u64 = 256;
const REDEI_PRIMES: [u64; 8] = [3, 5, 7, 11, 19, 101, 65_537, 2_305_843_009_213_693_951];

fn redei(cfg: Config) -> Vec<PropertyResult> {
    let mut rng = rng_for(cfg, 200);
    let mut rec = Recorder::new("redei", "rational");
    for i in 0..cfg.samples {
        let (h, z) = (sample::rational(&mut rng, 5, 3), sample::rational(&mut rng, 5, 3));
        let d = if i % 2 == 0 {
            &z * &z + &h * &z - BigRational::from_integer(1.into())
        } else {
            sample::rational(&mut rng, 5, 3)
        };
        redei_case(&mut rec, &mut rng, RedeiContext::new(h, d, z).expect("rational"));
    }
    let mut out = rec.finish();

    let mut rng = rng_for(cfg, 201);
    let mut rec = Recorder::new("redei", "fp");
    for i in 0..cfg.samples {
        let m = sample::modulus(REDEI_PRIMES[i % REDEI_PRIMES.len()]);
        let (h, z) = (Fp::draw(&mut rng, &m), Fp::draw(&mut rng, &m));
        let d = if i % 2 == 0 { z * z + h * z - Fp::new(1, m) } else { Fp::draw(&mut rng, &m) };
        redei_case(&mut rec, &mut rng, RedeiContext::new(h, d, z).expect("same modulus"));
    }
    out.extend(rec.finish());
    out
}

fn redei_case<F: Draw>(rec: &mut Recorder, rng: &mut ChaCha8Rng, ctx: RedeiContext<F>) {
    let label = || format!("h={}, d={}, z={}", ctx.h(), ctx.d(), ctx.z());
    let naive = ctx.pairs(REDEI_MAX_N, Strategy::Naive);
    let recurrence = ctx.pairs(REDEI_MAX_N, Strategy::Recurrence);
    let mut agree = true;
    for (n, (a, b)) in naive.iter().zip(&recurrence).enumerate() {
        let m = ctx.pair(n as u64, Strategy::Matrix);
        if a.num != b.num || a.den != b.den || m.num != a.num || m.den != a.den {
            agree = false;
            break;
        }
    }
    rec.check("matrix = recurrence = addition fold", agree, label);

    let mut pair_ok = true;
    for n in 0..=REDEI_MAX_N as usize {
        let m = rng.gen_range(0..=REDEI_MAX_N as usize - n);
        let sum = naive[n].add(&naive[m]).expect("same context");
        pair_ok &= sum.num == naive[n + m].num && sum.den == naive[n + m].den;
    }
    rec.check("pair addition law", pair_ok, label);

    let params = ctx.param_group();
    let qs: Vec<ParamValue<F>> = naive.iter().map(|p| p.q()).collect();
    let det = ctx.determinant();

    // z with zero norm is not a group element; the pairs collapse to (0, 0)
    if !det.is_zero() {
        let mut fold = ParamValue::Alpha;
        let z = ParamValue::Finite(ctx.z().clone());
        let mut powers = true;
        for q in &qs {
            powers &= *q == fold;
            fold = params.param_mul(&fold, &z);
        }
        rec.check("Q_n is the n-th power of z", powers, label);

        let mut add_ok = true;
        for n in 0..=REDEI_MAX_N as usize {
            let m = rng.gen_range(0..=REDEI_MAX_N as usize - n);
            add_ok &= qs[n + m] == params.param_mul(&qs[n], &qs[m]);
        }
        rec.check("Q_(n+m) = Q_n * Q_m", add_ok, label);

        let mut alpha_case = true;
        for (n, _) in qs.iter().enumerate().filter(|(_, q)| q.is_alpha()) {
            for m in [0usize, 1, 7] {
                if n + m <= REDEI_MAX_N as usize {
                    alpha_case &= qs[n + m] == qs[m];
                }
            }
        }
        rec.check("Q_(n+m) = Q_m when Q_n = alpha", alpha_case, label);
    }

    let mut compose_ok = true;
    for _ in 0..8 {
        let n = rng.gen_range(1..=16u64);
        let m = rng.gen_range(1..=REDEI_MAX_N / n);
        if let ParamValue::Finite(inner) = &qs[m as usize] {
            let outer = ctx.with_z(inner.clone()).expect("same field").q(n);
            compose_ok &= outer == qs[(n * m) as usize];
        }
    }
    rec.check("Q_n(Q_m) = Q_nm", compose_ok, label);

    let mut power = det.one_like();
    let mut norm_ok = true;
    for pair in &naive {
        norm_ok &= pair.norm() == power;
        power = power * det.clone();
    }
    rec.check("N^2 + hND - dD^2 = (z^2 + hz - d)^n", norm_ok, label);

    if det.is_one() {
        let on_conic = naive.iter().all(|p| ConicPoint::new(p.num.clone(), p.den.clone(), &params).is_ok());
        rec.check("(N_n, D_n) on the conic when z^2 + hz - d = 1", on_conic, label);
    }
}

const POWER_MAX_N: u64 = 256;
const POWER_Q_MAX_N: u64 = 64;
const POWER_PRIMES: [u64; 6] = [3, 7, 11, 19, 101, 65_537];

fn power(cfg: Config) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    let mut rng = rng_for(cfg, 300);
    let mut rec = Recorder::new("power", "rational");
    for _ in 0..cfg.samples {
        let params = sample::irreducible_rational_params(&mut rng);
        let p = sample::rational_point(&mut rng, &params);
        power_case(&mut rec, &mut rng, &p);
    }
    out.extend(rec.finish());

    let mut rng = rng_for(cfg, 301);
    let mut rec = Recorder::new("power", "fp");
    for i in 0..cfg.samples {
        let m = sample::modulus(POWER_PRIMES[i % POWER_PRIMES.len()]);
        let params = ConicParams::new(Fp::draw(&mut rng, &m), Fp::draw(&mut rng, &m)).expect("same modulus");
        let Some(p) = fp_point(&mut rng, &params) else { continue };
        power_case(&mut rec, &mut rng, &p);
    }
    out.extend(rec.finish());
    out
}

/// A random point found by solving for `y` at random `x`; `None` if the
/// search fails, which happens for tiny conics only.
fn fp_point(rng: &mut ChaCha8Rng, params: &ConicParams<Fp>) -> Option<ConicPoint<Fp>> {
    let m = params.h().modulus();
    for _ in 0..64 {
        let y = sample::fp(rng, m);
        // x^2 + (hy) x - (dy^2 + 1) = 0
        let b = *params.h() * y;
        let c = -(*params.d() * y * y + Fp::new(1, m));
        let disc = b * b - Fp::new(4, m) * c;
        if let Some(root) = fp_sqrt(disc) {
            let two_inv = Fp::new(2, m).inv()?;
            let x = (-b + root) * two_inv;
            return ConicPoint::new(x, y, params).ok();
        }
    }
    None
}

fn fp_sqrt(v: Fp) -> Option<Fp> {
    let m = v.modulus();
    if v.is_zero() {
        return Some(v);
    }
    if v.legendre() != 1 {
        return None;
    }
    if m.get() % 4 == 3 {
        return Some(v.pow((m.get() + 1) / 4));
    }
    // small moduli only reach this branch here; search is fine
    m.elements().find(|r| *r * *r == v)
}

fn power_case<F: Field>(rec: &mut Recorder, rng: &mut ChaCha8Rng, p: &ConicPoint<F>) {
    let label = || format!("{} on {}", p, p.params());
    let mut fold = ConicPoint::identity(p.params());
    let mut fg_ok = true;
    let mut q_ok = true;
    for n in 0..=POWER_MAX_N {
        let fg = fg_pair(p, n).into_point();
        fg_ok &= fg == fold && fg == p.pow(n as i64);
        if n <= POWER_Q_MAX_N && !p.y().is_zero() {
            q_ok &= q_param(p, n).is_ok_and(|q| q == fold.to_param());
        }
        fold = fold.mul(p).expect("same params");
    }
    if let (false, ParamValue::Finite(t)) = (p.y().is_zero(), p.to_param()) {
        let ctx = RedeiContext::new(p.params().h().clone(), p.params().d().clone(), t).expect("same field");
        if !ctx.determinant().is_zero() {
            let same = (0..4).map(|_| rng.gen_range(0..=POWER_Q_MAX_N)).all(|n| q_param(p, n).ok() == Some(ctx.q(n)));
            rec.check("q_param = Q_n(h, d, tau(P))", same, label);
        }
    }
    rec.check("fg_pair = e_pow, n <= 256", fg_ok, label);
    if !p.y().is_zero() {
        rec.check("q_param = tau(e_pow), n <= 64", q_ok, label);
    }

    let n = rng.gen_range(1..=32u64);
    match q_halving_check(p, n) {
        Ok(ok) => {
            let fg = fg_pair(p, n);
            let direct = p.pow(2 * n as i64).to_param();
            let expected = ParamValue::Finite(fg.f.checked_div(&fg.g).expect("G_n nonzero"));
            rec.check("q_2n = F_n / G_n", ok && direct == expected, || format!("{} with n = {n}", label()));
        }
        Err(Error::DegenerateDenominator(_) | Error::DivisionByZero(_)) => {}
        Err(e) => rec.check("q_2n = F_n / G_n", false, || format!("{}: {e}", label())),
    }
}

const LIMIT_N: u64 = 200;
const LIMIT_DIGITS: u32 = 50;
const POINT_LIMIT_N: i64 = 60;

fn pow10_recip(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k))
}

fn within(v: &BigRational, (lo, hi): &(BigRational, BigRational), tol: &BigRational) -> bool {
    v > &(lo - tol) && v < &(hi + tol)
}

fn approx(cfg: Config) -> Vec<PropertyResult> {
    let mut rng = rng_for(cfg, 400);
    let mut rec = Recorder::new("approx", "real");
    for _ in 0..cfg.samples {
        cf_case(&mut rec, &mut rng);
    }
    let limit_specs = (cfg.samples / 5).max(1);
    let tol = pow10_recip(20);
    let mut done = 0;
    while done < limit_specs {
        let w = sample::positive_rational(&mut rng, 20, 4);
        let t = BigRational::new(BigInt::from(rng.gen_range(2..=32)), BigInt::from(8));
        let spec = RecurrenceLimitSpec {
            a0: sample::rational(&mut rng, 9, 4),
            a1: sample::rational(&mut rng, 9, 4),
            b0: sample::rational(&mut rng, 9, 4),
            b1: sample::rational(&mut rng, 9, 4),
            c: &w * &w * t,
            w,
        };
        let limit = match recurrence_ratio_limit(&spec) {
            Ok(l) => l,
            Err(Error::DegenerateLimit) => continue,
            Err(e) => {
                rec.check("Binet limit vs a_200/b_200", false, || format!("{spec:?}: {e}"));
                done += 1;
                continue;
            }
        };
        let den = spec.denominator_sequence().term(LIMIT_N);
        if den.is_zero() {
            continue;
        }
        let ratio = spec.numerator_sequence().term(LIMIT_N) / den;
        let bounds = limit.bounds(LIMIT_DIGITS).expect("closed form encloses");
        rec.check("Binet limit vs a_200/b_200", within(&ratio, &bounds, &tol), || format!("{spec:?} -> {limit}"));
        done += 1;
    }

    let point_count = (cfg.samples / 10).max(1);
    let tol = pow10_recip(15);
    let (mut hits, mut rejected) = (0, 0);
    while hits < point_count || rejected < point_count {
        let params = sample::irreducible_rational_params(&mut rng);
        let p = sample::rational_point(&mut rng, &params);
        let trace = p.trace();
        let bound = BigRational::from_integer(2.into());
        if trace.abs() <= bound {
            if rejected < point_count {
                let ok = matches!(point_ratio_limit(&p), Err(Error::NoConvergence(_)));
                rec.check("|2x + hy| <= 2 rejected", ok, || format!("{p} on {params}"));
                rejected += 1;
            }
        } else if trace >= BigRational::new(5.into(), 2.into()) && hits < point_count {
            let limit = point_ratio_limit(&p).expect("trace > 2");
            let pn = p.pow(POINT_LIMIT_N);
            let ratio = pn.y() / pn.x();
            let bounds = limit.bounds(30).expect("closed form encloses");
            rec.check("point limit vs y_60/x_60", within(&ratio, &bounds, &tol), || format!("{p} on {params}"));
            hits += 1;
        }
    }

    let runs = (cfg.samples / 25).max(1);
    for _ in 0..runs {
        approx_case(&mut rec, &mut rng);
    }
    rec.finish()
}

fn random_target(rng: &mut ChaCha8Rng) -> RealExpr {
    let k = loop {
        let k: u32 = rng.gen_range(2..1000);
        if k.isqrt().pow(2) != k {
            break k;
        }
    };
    let r = sample::positive_rational(rng, 9, 4);
    match rng.gen_range(0..4) {
        0 => format!("sqrt:{k}").parse().expect("valid"),
        1 => RealExpr::rational(sample::nonzero_rational(rng, 500, 97)),
        2 => RealExpr::rational(r) * RealExpr::Pi,
        _ => RealExpr::Pi / RealExpr::integer(3) + format!("sqrt:{k}").parse::<RealExpr>().expect("valid"),
    }
}

fn cf_case(rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    let target = random_target(rng);
    let e = match cf_expand(&target, 24, 60) {
        Ok(e) => e,
        Err(err) => return rec.check("cf expansion", false, || format!("{target}: {err}")),
    };
    let c = &e.convergents;
    let det_ok = (1..c.len()).all(|k| {
        let lhs = &c[k].0 * &c[k - 1].1 - &c[k - 1].0 * &c[k].1;
        lhs == if k % 2 == 1 { BigInt::one() } else { -BigInt::one() }
    });
    rec.check("p_k q_(k-1) - p_(k-1) q_k = (-1)^(k-1)", det_ok, || format!("{target}"));
    let quotients_ok = e.digits.iter().skip(1).all(|a| a >= &BigInt::one());
    rec.check("partial quotients >= 1", quotients_ok, || format!("{target}"));

    let (lo, hi) = target.bounds(80).expect("target encloses");
    let mut bracket = true;
    let mut alternate = true;
    for k in 0..c.len().saturating_sub(1) {
        let conv = BigRational::new(c[k].0.clone(), c[k].1.clone());
        let bound = BigRational::new(BigInt::one(), &c[k].1 * &c[k + 1].1);
        let err_hi = (&conv - &lo).abs().max((&conv - &hi).abs());
        // a terminating expansion reaches equality one step before its end
        let last = e.terminated && k + 2 == c.len();
        bracket &= err_hi < bound || (last && err_hi == bound);
        // even convergents lie below, odd above
        alternate &= if k % 2 == 0 { conv <= lo } else { conv >= hi };
    }
    rec.check("|alpha - p_n/q_n| < 1/(q_n q_(n+1))", bracket, || format!("{target}"));
    rec.check("convergents alternate around alpha", alternate, || format!("{target}"));
}

fn approx_case(rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    let params = sample::irreducible_rational_params(rng);
    let beta = RealExpr::rational(sample::positive_rational(rng, 9, 4)) * RealExpr::Pi;
    let root = if rng.gen_bool(0.5) { RootChoice::Plus } else { RootChoice::Minus };
    match approx_over_conic(&params, &beta, 8, 60, root) {
        Ok(run) => {
            let on_conic = run.steps.iter().all(|s| ConicPoint::new(s.point.x().clone(), s.point.y().clone(), &params).is_ok());
            rec.check("approximation points on the conic", on_conic, || format!("{params}, beta = {beta}"));
            let ratios = run.steps.iter().all(|s| {
                // g(m)/f(m) = (2m + h) / (m^2 + d)
                let m = BigRational::new(s.p.clone(), s.q.clone());
                s.ratio == (BigRational::from_integer(2.into()) * &m + params.h()) / (&m * &m + params.d())
            });
            rec.check("ratio = g(p/q)/f(p/q)", ratios, || format!("{params}, beta = {beta}"));
        }
        Err(Error::NoRealSolution) => {}
        Err(e) => rec.check("approximation points on the conic", false, || format!("{params}, beta = {beta}: {e}")),
    }
    let beta = random_target(rng);
    match pythagorean_stream(&beta, 6, 60, RootChoice::Plus) {
        Ok(run) => {
            let ok = run.steps.iter().all(|s| {
                let [a, b, c] = &s.triple;
                a * a + b * b == c * c
            });
            rec.check("A^2 + B^2 = C^2", ok, || format!("beta = {beta}"));
        }
        Err(Error::RationalAuxiliary(_)) => {}
        Err(e) => rec.check("A^2 + B^2 = C^2", false, || format!("beta = {beta}: {e}")),
    }
}
