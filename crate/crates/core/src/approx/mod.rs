//! Continued fractions, ratio limits, and rational approximation through
//! conic points.

mod auxiliary;
mod cf;
mod limits;
mod quadratic;

pub use auxiliary::{
    approx_over_conic, pythagorean_stream, pythagorean_triple, solve_auxiliary, ApproxRun, ApproxStep,
    AuxiliaryRoot, AuxiliaryRoots, PythagoreanRun, PythagoreanStep, RootChoice, SkipReason, SkippedStep,
};
pub use cf::{cf_convergents, cf_expand, CfExpansion, CfMethod};
pub use limits::{point_limit_spec, point_ratio_limit, recurrence_ratio_limit, RecurrenceLimitSpec};
pub use quadratic::{ClosedForm, QuadraticIrrational};
