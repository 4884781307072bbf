use num_bigint::BigUint;
use thiserror::Error;

use crate::rational::{Rational, RationalError};

/// Failures surfaced while building or evaluating a [`Real`](crate::real::Real).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RealError {
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("apartness witness 1/{k0} is not valid for this value")]
    WitnessInvalid { k0: BigUint },
    #[error("{what}: budget of {limit} exhausted")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("{0}")]
    Domain(String),
    #[error("value lies outside the domain [{lo}, {hi}]")]
    OutOfDomain {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },
    #[error("{0} is not an upper bound of the set")]
    InitialBoundRejected(Box<Rational>),
}

impl RealError {
    pub fn is_budget(&self) -> bool {
        matches!(self, RealError::BudgetExceeded { .. })
    }
}
