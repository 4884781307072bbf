//! Exact real arithmetic on regular rational Cauchy sequences.
//!
//! - [`rational`]: canonical arbitrary-precision fractions.
//! - [`real`]: the [`Real`] type, its field operations and weak order.
//! - [`lub`]: least upper bounds from upper-bound oracles, including `√c`.
//! - [`extension`]: uniformly continuous functions on rational intervals,
//!   their extension to reals, and extremal values.
//! - [`cli`]: expression parsing and evaluation behind the `creal` binary.

pub mod cli;
pub mod error;
pub mod extension;
pub mod lub;
pub mod rational;
pub mod real;

pub use error::RealError;
pub use rational::{ArithOp, Rational, RationalError};
pub use real::{Precision, Real, SeqWithModulus};
