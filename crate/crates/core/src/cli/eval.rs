use num_bigint::BigUint;
use thiserror::Error;

use super::parse::Expr;
use crate::error::RealError;
use crate::lub::{self, LubConfig, LubMode};
use crate::real::{find_apartness, separate, Apartness, Precision, Real, Separation};

#[derive(Clone, Debug)]
pub struct EvalConfig {
    /// Largest precision tried when separating a divisor from zero or
    /// checking the sign of a radicand.
    pub sep_budget: u64,
    pub lub: LubConfig,
    pub mode: LubMode,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            sep_budget: 1 << 20,
            lub: LubConfig::default(),
            mode: LubMode::Fast,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("divisor {divisor} could not be separated from zero (|divisor| < 2/{budget})")]
    DivisionNotSeparated { divisor: String, budget: u64 },
    #[error("radicand {radicand} is negative")]
    NegativeRadicand { radicand: String },
    #[error(transparent)]
    Real(#[from] RealError),
}

impl EvalError {
    pub fn is_budget(&self) -> bool {
        matches!(self, EvalError::Real(e) if e.is_budget())
    }
}

pub fn eval(e: &Expr, cfg: &EvalConfig) -> Result<Real, EvalError> {
    Ok(match e {
        Expr::Lit(q) => Real::from_rational(q.clone()),
        Expr::Neg(a) => -eval(a, cfg)?,
        Expr::Add(a, b) => eval(a, cfg)? + eval(b, cfg)?,
        Expr::Sub(a, b) => eval(a, cfg)? - eval(b, cfg)?,
        Expr::Mul(a, b) => eval(a, cfg)? * eval(b, cfg)?,
        Expr::Div(a, b) => {
            let num = eval(a, cfg)?;
            let den = eval(b, cfg)?;
            match find_apartness(&den, cfg.sep_budget)? {
                Apartness::Apart(w) => num * den.recip(&w),
                Apartness::NotSeparated => {
                    return Err(EvalError::DivisionNotSeparated {
                        divisor: b.to_string(),
                        budget: cfg.sep_budget,
                    })
                }
            }
        }
        Expr::Sqrt(a) => {
            let x = eval(a, cfg)?;
            if separate(&x, &Real::zero(), cfg.sep_budget)? == Separation::Less {
                return Err(EvalError::NegativeRadicand {
                    radicand: a.to_string(),
                });
            }
            lub::sqrt(&x, cfg.mode, &cfg.lub)?
        }
        Expr::Abs(a) => eval(a, cfg)?.abs(),
        Expr::Min(a, b) => eval(a, cfg)?.min(&eval(b, cfg)?),
        Expr::Max(a, b) => eval(a, cfg)?.max(&eval(b, cfg)?),
    })
}

/// `digits` decimal places of `x`, within `10^-digits` of its value.
///
/// Reads `x` at precision `2·10^digits` and rounds half away from zero.
pub fn print_decimal(x: &Real, digits: usize) -> Result<String, RealError> {
    let k = BigUint::from(10u32).pow(digits as u32) * 2u32;
    Ok(x.approx_at(&Precision::new(k))?.to_decimal(digits))
}
