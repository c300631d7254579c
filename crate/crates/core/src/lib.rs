//! Group law on the conics `x^2 + hxy - dy^2 = 1`, generalized Rédei
//! functions for logarithmic-time point powers, and continued-fraction
//! approximation of reals by rational points.

pub mod algebra;
pub mod approx;
pub mod conic;
pub mod decimal;
mod error;
pub mod expr;
pub mod field;
pub mod point_power;
pub mod redei;

pub use algebra::AlgebraElement;
pub use approx::{ClosedForm, QuadraticIrrational};
pub use conic::{ConicPoint, ParamValue};
pub use error::{Error, Result};
pub use expr::RealExpr;
pub use field::{ConicParams, Field, FieldSpec, Fp, Precision, PrimeModulus, Real};
pub use point_power::{fg_pair, q_param, PointPowerPair};
pub use redei::{RecurrenceSpec, RedeiContext, RedeiPair, Strategy};
