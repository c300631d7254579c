//! Subcommand execution. Tables go to stdout; notes and errors go to stderr.

use std::time::Instant;

use clap::Parser;
use num_rational::BigRational;

use conics_core::approx::{approx_over_conic, point_ratio_limit, pythagorean_stream, ApproxRun, SkippedStep};
use conics_core::decimal;
use conics_core::field::{Field, FieldSpec, Fp, Precision, PrimeModulus, Real};
use conics_core::point_power::{fg_pair, q_param};
use conics_core::{ConicParams, ConicPoint, Error, RealExpr, RedeiContext, Strategy};

use crate::args::{ApproximateArgs, CheckArgs, Cli, Command, PowerArgs, PythagoreanArgs, RedeiArgs};
use crate::render::{Cell, Table};
use crate::suites;

/// Precision used by `approximate` and `pythagorean` unless `--field real:<d>` is given.
pub const DEFAULT_REAL_DIGITS: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Usage = 1,
    Domain = 2,
    PrecisionExhausted = 3,
    CheckFailed = 4,
}

impl Status {
    pub fn of(err: &Error) -> Status {
        if err.is_usage() {
            Status::Usage
        } else if matches!(err, Error::PrecisionExhausted(_)) {
            Status::PrecisionExhausted
        } else {
            Status::Domain
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    /// Lines for stderr, each already prefixed with `# `.
    pub notes: Vec<String>,
    pub status: Status,
}

impl Outcome {
    fn failed(err: &Error) -> Self {
        Outcome { stdout: String::new(), notes: vec![format!("# error: {err}")], status: Status::of(err) }
    }
}

/// Parses `args` (without the program name) and runs the request.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("conics".into()).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) if e.use_stderr() => {
            Outcome { stdout: String::new(), notes: vec![e.render().to_string()], status: Status::Usage }
        }
        Err(e) => Outcome { stdout: e.render().to_string(), notes: Vec::new(), status: Status::Ok },
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Power(a) => power(cli, a),
        Command::Redei(a) => redei(cli, a),
        Command::Approximate(a) => approximate(cli, a),
        Command::Pythagorean(a) => pythagorean(cli, a),
        Command::Check(a) => Ok(check(cli, a)),
    };
    result.unwrap_or_else(|e| Outcome::failed(&e))
}

fn scalar<F: Field>(v: &F, digits: usize) -> String {
    if F::EXACT {
        v.to_string()
    } else {
        v.to_decimal(digits).unwrap_or_else(|| v.to_string())
    }
}

fn power_table<F: Field>(ctx: &F::Ctx, a: &PowerArgs, digits: usize) -> Result<(Table, ConicPoint<F>), Error> {
    let params = ConicParams::<F>::parse(&a.h, &a.d, ctx)?;
    let p = ConicPoint::new(F::parse(&a.x, ctx)?, F::parse(&a.y, ctx)?, &params)?;
    let mut table = Table::new(&["n", "x", "y", "q", "ratio"]);
    for n in 0..=a.steps {
        let pt = fg_pair(&p, n).into_point();
        let q = if p.y().is_zero() { pt.to_param() } else { q_param(&p, n)? };
        let ratio = match pt.y().checked_div(pt.x()) {
            None => "undefined".to_string(),
            Some(r) => r.to_decimal(digits).unwrap_or_else(|| r.to_string()),
        };
        table.push(vec![n.into(), scalar(pt.x(), digits).into(), scalar(pt.y(), digits).into(), q.to_string().into(), ratio.into()]);
    }
    Ok((table, p))
}

fn power(cli: &Cli, a: &PowerArgs) -> Result<Outcome, Error> {
    let digits = cli.digits;
    let mut notes = Vec::new();
    let mut status = Status::Ok;
    let table = match cli.field.validate()? {
        FieldSpec::Rational => {
            let (table, p) = power_table::<BigRational>(&(), a, digits)?;
            match point_ratio_limit(&p) {
                Ok(limit) => {
                    let mut line = format!("# limit y_n/x_n = {limit}");
                    if let Some(recip) = limit.render_reciprocal() {
                        line.push_str(&format!(" = {recip}"));
                    }
                    line.push_str(&format!(" ~ {}", limit.to_decimal(digits)));
                    notes.push(line);
                }
                Err(e) => {
                    notes.push(format!("# error: {e}"));
                    status = Status::of(&e);
                }
            }
            table
        }
        FieldSpec::Prime(p) => power_table::<Fp>(&PrimeModulus::new(p)?, a, digits)?.0,
        FieldSpec::Real(d) => {
            notes.push("# limit: closed form needs rational coordinates".into());
            power_table::<Real>(&Precision::new(d)?, a, digits)?.0
        }
    };
    Ok(Outcome { stdout: table.render(cli.format), notes, status })
}

fn redei_table<F: Field>(ctx: &F::Ctx, a: &RedeiArgs, digits: usize) -> Result<(Table, String), Error> {
    let rc = RedeiContext::new(F::parse(&a.h, ctx)?, F::parse(&a.d, ctx)?, F::parse(&a.z, ctx)?)?;
    let mut table = Table::new(&["n", "N", "D", "Q"]);
    for pair in rc.pairs(a.steps, a.strategy) {
        let q = match pair.q() {
            conics_core::ParamValue::Finite(v) => scalar(&v, digits),
            alpha => alpha.to_string(),
        };
        table.push(vec![pair.n.into(), scalar(&pair.num, digits).into(), scalar(&pair.den, digits).into(), q.into()]);
    }
    let mut timings = Vec::new();
    for strategy in [Strategy::Matrix, Strategy::Recurrence, Strategy::Naive] {
        let start = Instant::now();
        std::hint::black_box(rc.pair(a.steps, strategy));
        timings.push(format!("{strategy} {:.1?}", start.elapsed()));
    }
    Ok((table, format!("# timing n={}: {}", a.steps, timings.join(", "))))
}

fn redei(cli: &Cli, a: &RedeiArgs) -> Result<Outcome, Error> {
    let (table, timing) = match cli.field.validate()? {
        FieldSpec::Rational => redei_table::<BigRational>(&(), a, cli.digits)?,
        FieldSpec::Prime(p) => redei_table::<Fp>(&PrimeModulus::new(p)?, a, cli.digits)?,
        FieldSpec::Real(d) => redei_table::<Real>(&Precision::new(d)?, a, cli.digits)?,
    };
    Ok(Outcome { stdout: table.render(cli.format), notes: vec![timing], status: Status::Ok })
}

fn real_digits(field: FieldSpec) -> Result<u32, Error> {
    match field.validate()? {
        FieldSpec::Real(d) => Ok(d),
        FieldSpec::Rational => Ok(DEFAULT_REAL_DIGITS),
        FieldSpec::Prime(_) => Err(Error::InvalidField("approximation needs the real field".into())),
    }
}

fn skip_notes(skipped: &[SkippedStep], notes: &mut Vec<String>) {
    for s in skipped {
        notes.push(format!("# skipped n={} (p/q = {}/{}): {}", s.n, s.p, s.q, s.reason));
    }
}

fn run_notes(run: &ApproxRun, steps: usize, notes: &mut Vec<String>) -> Status {
    notes.push(format!("# alpha = {}", run.alpha));
    let cf: Vec<String> = run.expansion.digits.iter().map(ToString::to_string).collect();
    notes.push(format!("# cf(alpha) = [{}]", cf.join(", ")));
    skip_notes(&run.skipped, notes);
    let increases = run.error_increases();
    if !increases.is_empty() {
        let at: Vec<String> = increases.iter().map(ToString::to_string).collect();
        notes.push(format!("# error increased at n = {}", at.join(", ")));
    }
    if run.exhausted {
        notes.push(format!(
            "# warning: precision exhausted after {} of {steps} steps; raise the digits of --field real:<d>",
            run.steps.len()
        ));
        Status::PrecisionExhausted
    } else {
        Status::Ok
    }
}

fn approximate(cli: &Cli, a: &ApproximateArgs) -> Result<Outcome, Error> {
    let prec = real_digits(cli.field)?;
    let params = ConicParams::<BigRational>::parse(&a.h, &a.d, &())?;
    let beta: RealExpr = a.beta.parse()?;
    let run = approx_over_conic(&params, &beta, a.steps, prec, a.root)?;
    let mut table = Table::new(&["n", "p", "q", "x", "y", "ratio", "ratio_decimal", "abs_error"]);
    for s in &run.steps {
        table.push(vec![
            s.n.into(),
            s.p.to_string().into(),
            s.q.to_string().into(),
            s.point.x().to_string().into(),
            s.point.y().to_string().into(),
            s.ratio.to_string().into(),
            decimal::round(&s.ratio, cli.digits).into(),
            decimal::scientific(&s.abs_error, 3).into(),
        ]);
    }
    let mut notes = Vec::new();
    let status = run_notes(&run, a.steps, &mut notes);
    Ok(Outcome { stdout: table.render(cli.format), notes, status })
}

fn pythagorean(cli: &Cli, a: &PythagoreanArgs) -> Result<Outcome, Error> {
    let prec = real_digits(cli.field)?;
    let beta: RealExpr = a.beta.parse()?;
    let run = pythagorean_stream(&beta, a.steps, prec, a.root)?;
    let mut table = Table::new(&["n", "p", "q", "A", "B", "C", "ratio", "ratio_decimal", "abs_error"]);
    for s in &run.steps {
        let [ta, tb, tc] = &s.triple;
        table.push(vec![
            s.n.into(),
            s.p.to_string().into(),
            s.q.to_string().into(),
            ta.to_string().into(),
            tb.to_string().into(),
            tc.to_string().into(),
            s.ratio.to_string().into(),
            decimal::round(&s.ratio, cli.digits).into(),
            decimal::scientific(&s.abs_error, 3).into(),
        ]);
    }
    let mut notes = vec![format!("# alpha = {}", run.alpha)];
    skip_notes(&run.skipped, &mut notes);
    let status = if run.exhausted {
        notes.push(format!("# warning: precision exhausted after {} of {} steps", run.steps.len(), a.steps));
        Status::PrecisionExhausted
    } else {
        Status::Ok
    };
    Ok(Outcome { stdout: table.render(cli.format), notes, status })
}

fn check(cli: &Cli, a: &CheckArgs) -> Outcome {
    let results = suites::run(a.suite, suites::Config { seed: a.seed, samples: a.samples });
    let mut table = Table::new(&["suite", "property", "field", "cases", "failures", "status"]);
    let mut notes = Vec::new();
    for r in &results {
        table.push(vec![
            Cell::from(r.suite),
            Cell::from(r.property.as_str()),
            Cell::from(r.field.as_str()),
            r.cases.into(),
            r.failures.into(),
            Cell::from(if r.passed() { "PASS" } else { "FAIL" }),
        ]);
        if let Some(example) = &r.first_failure {
            notes.push(format!("# {} / {} [{}]: {example}", r.suite, r.property, r.field));
        }
    }
    let status = if results.iter().all(suites::PropertyResult::passed) { Status::Ok } else { Status::CheckFailed };
    Outcome { stdout: table.render(cli.format), notes, status }
}
