//! Precision-tracked multivariate power series with the m-adic order, and
//! the experiments built on them: the counterexample family for the Artin
//! function of `X^2 - Z Y^2`, the failure of a Liouville-type inequality in
//! several variables, and brute-force Artin functions over small prime fields.

pub mod artin;
pub mod construction;
pub mod diophantine;
pub mod error;
pub mod field;
pub mod parse;
pub mod poly;
pub mod series;
#[cfg(feature = "strategies")]
pub mod strategies;

pub use error::{Error, Result};
pub use field::{binomial_half, FieldDescriptor, FieldScalar};
pub use series::{fraction_reduce_ord, ExponentVector, GradedSeries, Order, Precision, SeriesFraction};
