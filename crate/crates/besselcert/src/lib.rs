//! Modified Bessel functions of real order, closed-form derivatives and
//! repeated integrals, and a catalog of uniform inequalities with a sweep
//! harness that checks them numerically.

#![allow(
    clippy::excessive_precision,
    clippy::neg_cmp_op_on_partial_ord,
    clippy::manual_is_multiple_of
)]

mod config;
mod error;

pub mod special;

pub use config::{EvalConfig, OracleConfig};
pub use error::{Error, Result};
pub use special::{FunctionValue, Method};

pub mod catalog;
pub mod certify;
pub mod deriv;
mod expansion;
pub mod integral;
pub mod oracle;
mod quad;
