use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped loosely into input problems (`Parse`, `InvalidField`,
/// mismatches), domain errors raised by the mathematics itself, and
/// `PrecisionExhausted` for real computations that could not be decided at the
/// requested working precision.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("conic parameter mismatch")]
    ParamMismatch,
    #[error("redei context mismatch")]
    ContextMismatch,
    #[error("analytic field: irreducible iff delta < 0; reported via conic_class instead")]
    AnalyticField,
    #[error("unordered field: no conic class")]
    UnorderedField,
    #[error("non-invertible element {0} (zero norm)")]
    NotInvertible(String),
    #[error("({x}, {y}) does not lie on the conic")]
    NotOnConic { x: String, y: String },
    #[error("parametrization pole at m = {0}")]
    ParametrizationPole(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    #[error("no real dominant root: {0}")]
    NoDominantRoot(String),
    #[error("degenerate limit: dominant coefficient of the denominator sequence vanishes")]
    DegenerateLimit,
    #[error("no convergence: |2x + hy| = {0} <= 2, the orbit does not converge")]
    NoConvergence(String),
    #[error("no real solution: discriminant 1 + beta*h - beta^2*d is negative")]
    NoRealSolution,
    #[error("auxiliary number {0} is rational; its continued fraction terminates")]
    RationalAuxiliary(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidField(_) | Error::FieldMismatch(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
