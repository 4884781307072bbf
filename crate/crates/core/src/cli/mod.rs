//! Calculator front end: expression parsing, evaluation and the commands
//! behind the `creal` binary.
//!
//! Commands print their result on stdout and diagnostics on stderr. Exit
//! codes: 0 success, 2 parse error, 3 evaluation error, 4 budget exhausted.

pub mod eval;
pub mod parse;

use std::sync::Arc;

use thiserror::Error;

use crate::error::RealError;
use crate::lub::{self, sqrt_oracle, LubMode, NoStep, PaperLubRun};
use crate::rational::{Rational, RationalError};
use crate::real::{separate, Precision, Separation};

pub use eval::{eval, print_decimal, EvalConfig, EvalError};
pub use parse::{parse, Expr, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid rational argument: {0}")]
    Literal(#[from] RationalError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl From<RealError> for CliError {
    fn from(e: RealError) -> Self {
        CliError::Eval(EvalError::Real(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Literal(_) => 2,
            CliError::Eval(e) if e.is_budget() => 4,
            CliError::Eval(_) => 3,
        }
    }
}

pub fn eval_command(src: &str, digits: usize, cfg: &EvalConfig) -> Result<String, CliError> {
    let x = eval(&parse(src)?, cfg)?;
    Ok(print_decimal(&x, digits)?)
}

/// `LESS`, `GREATER` or `CLOSE(1/K)`, the verdict of `separate` at `k`.
pub fn compare_command(lhs: &str, rhs: &str, k: u64, cfg: &EvalConfig) -> Result<String, CliError> {
    let x = eval(&parse(lhs)?, cfg)?;
    let y = eval(&parse(rhs)?, cfg)?;
    Ok(match separate(&x, &y, Precision::from(k))? {
        Separation::Less => "LESS".to_string(),
        Separation::Greater => "GREATER".to_string(),
        Separation::Close => format!("CLOSE(1/{k})"),
    })
}

pub fn sqrt_command(radicand: &str, digits: usize, cfg: &EvalConfig) -> Result<String, CliError> {
    let c: Rational = radicand.trim().parse()?;
    if c.is_negative() {
        return Err(EvalError::NegativeRadicand {
            radicand: c.to_string(),
        }
        .into());
    }
    let root = lub::sqrt_rational(&c, cfg.mode, &cfg.lub)?;
    Ok(print_decimal(&root, digits)?)
}

/// Bookkeeping of a paper-mode run, reported on stderr by `lub-demo`.
#[derive(Clone, Debug)]
pub struct PaperRunSummary {
    pub steps: u64,
    pub last_no: NoStep,
}

/// `√2` as the supremum of `{α | α² < 2}`, starting from the upper bound 2.
pub fn lub_demo_command(
    digits: usize,
    cfg: &EvalConfig,
) -> Result<(String, Option<PaperRunSummary>), CliError> {
    let two = Rational::from(2);
    let oracle = Arc::new(sqrt_oracle(two)?);
    let root = lub::lub(oracle.clone(), 2, cfg.mode, &cfg.lub)?;
    let printed = print_decimal(&root, digits)?;
    let summary = match cfg.mode {
        LubMode::Fast => None,
        LubMode::Paper => {
            // replay the same deterministic run to report its bookkeeping
            let mut run = PaperLubRun::new(oracle, 2, &cfg.lub)?;
            let k = num_bigint::BigUint::from(10u32).pow(digits as u32) * 2u32;
            run.approx(&Precision::new(k))?;
            let last_no = run.no_steps().last().expect("at least one NO").clone();
            Some(PaperRunSummary {
                steps: run.steps_taken(),
                last_no,
            })
        }
    };
    Ok((printed, summary))
}
