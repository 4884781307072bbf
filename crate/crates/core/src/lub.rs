//! Least upper bounds driven by an upper-bound oracle.
//!
//! Two procedures are provided. [`lub_paper`] runs the harmonic four-command
//! loop: starting from an integer upper bound `m` and step `b = 1`, it asks
//! whether `a − b` is still an upper bound; on YES it moves down by `b`, on NO
//! it shrinks the step to `1/(1 + 1/b)`. The i-th NO pins the supremum to a
//! window of width `1/i`, so it converges harmonically and is only suitable
//! for coarse precision. [`lub_fast`] keeps the same YES/NO bracket but
//! bisects it, gaining one bit per query.

use std::sync::{Arc, Mutex, PoisonError};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::error::RealError;
use crate::rational::Rational;
use crate::real::{separate, Precision, Real, Separation};

/// Answers "is the constant real `q` an upper bound of B?".
///
/// Implementations must be monotone: once `q` is an upper bound, so is
/// every `q' ≥ q`. A non-monotone oracle voids every bracket guarantee.
pub trait UpperBoundOracle: Send + Sync {
    fn is_upper_bound(&self, q: &Rational) -> Result<bool, RealError>;
}

/// Adapts a plain predicate into an oracle.
pub struct FnOracle<F>(pub F);

impl<F> UpperBoundOracle for FnOracle<F>
where
    F: Fn(&Rational) -> bool + Send + Sync,
{
    fn is_upper_bound(&self, q: &Rational) -> Result<bool, RealError> {
        Ok((self.0)(q))
    }
}

/// Oracle for `{α ∈ ℚ | α ≥ 0, α² < c}`, whose supremum is `√c`.
#[derive(Clone, Debug)]
pub struct SqrtOracle {
    c: Rational,
}

pub fn sqrt_oracle(c: Rational) -> Result<SqrtOracle, RealError> {
    if c.is_negative() {
        return Err(RealError::Domain(format!(
            "square root of negative rational {c}"
        )));
    }
    Ok(SqrtOracle { c })
}

impl SqrtOracle {
    pub fn radicand(&self) -> &Rational {
        &self.c
    }

    pub fn query(&self, q: &Rational) -> bool {
        !q.is_negative() && q * q >= self.c
    }
}

impl UpperBoundOracle for SqrtOracle {
    fn is_upper_bound(&self, q: &Rational) -> Result<bool, RealError> {
        Ok(self.query(q))
    }
}

/// Oracle for a finite set of reals, decided up to `1/k_tol`.
///
/// `q` counts as an upper bound unless some element is certified above it by
/// [`separate`] at precision `k_tol`. A lub computed from this oracle lies
/// within `2/k_tol` of the true maximum.
#[derive(Clone, Debug)]
pub struct FiniteSetOracle {
    set: Vec<Real>,
    k_tol: Precision,
}

pub fn finite_set_oracle(
    set: Vec<Real>,
    k_tol: impl Into<Precision>,
) -> Result<FiniteSetOracle, RealError> {
    if set.is_empty() {
        return Err(RealError::Domain(
            "finite-set oracle over an empty set".into(),
        ));
    }
    Ok(FiniteSetOracle {
        set,
        k_tol: k_tol.into(),
    })
}

impl UpperBoundOracle for FiniteSetOracle {
    fn is_upper_bound(&self, q: &Rational) -> Result<bool, RealError> {
        let bound = Real::from_rational(q.clone());
        for b in &self.set {
            if separate(b, &bound, &self.k_tol)? == Separation::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LubMode {
    Paper,
    Fast,
}

#[derive(Clone, Debug)]
pub struct LubConfig {
    /// Ceiling on loop iterations (paper mode) or bisections (fast mode).
    pub step_cap: u64,
    /// Ceiling on oracle queries while descending `m − 1, m − 2, m − 4, ...`.
    pub lower_search_budget: u64,
}

impl Default for LubConfig {
    fn default() -> Self {
        LubConfig {
            step_cap: 1 << 24,
            lower_search_budget: 1 << 20,
        }
    }
}

/// One pass through the branching command of the paper-mode loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LubStep {
    /// Step index `n`, starting at 1.
    pub n: u64,
    /// `a′_n` before the step.
    pub a: Rational,
    /// `b_n` before the step.
    pub b: Rational,
    /// Whether `a′_n − b_n` was still an upper bound.
    pub upper: bool,
}

/// The i-th NO answer, at step `n = m_i`, with `a = a′_{m_i}`.
///
/// At that point `a` is an upper bound and `a − 1/i` is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoStep {
    pub i: u64,
    pub n: u64,
    pub a: Rational,
}

/// Step-by-step state of the harmonic four-command loop.
pub struct PaperLubRun {
    oracle: Arc<dyn UpperBoundOracle>,
    a: Rational,
    b: Rational,
    n: u64,
    nos: Vec<NoStep>,
    step_cap: u64,
}

impl PaperLubRun {
    /// Initialization: `a′_1 := m`, `b_1 := 1`. Fails unless `m` is an upper bound.
    pub fn new(
        oracle: Arc<dyn UpperBoundOracle>,
        m: impl Into<BigInt>,
        cfg: &LubConfig,
    ) -> Result<Self, RealError> {
        let m = Rational::from_integer(m);
        if !oracle.is_upper_bound(&m)? {
            return Err(RealError::InitialBoundRejected(Box::new(m)));
        }
        Ok(PaperLubRun {
            oracle,
            a: m,
            b: Rational::one(),
            n: 1,
            nos: Vec::new(),
            step_cap: cfg.step_cap,
        })
    }

    /// `(a′_n, b_n)` for the current `n`.
    pub fn current(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn steps_taken(&self) -> u64 {
        self.n - 1
    }

    pub fn no_steps(&self) -> &[NoStep] {
        &self.nos
    }

    pub fn step(&mut self) -> Result<LubStep, RealError> {
        if self.n > self.step_cap {
            return Err(RealError::BudgetExceeded {
                what: "paper-mode lub steps",
                limit: self.step_cap,
            });
        }
        let candidate = &self.a - &self.b;
        let upper = self.oracle.is_upper_bound(&candidate)?;
        let record = LubStep {
            n: self.n,
            a: self.a.clone(),
            b: self.b.clone(),
            upper,
        };
        if upper {
            self.a = candidate;
        } else {
            self.nos.push(NoStep {
                i: self.nos.len() as u64 + 1,
                n: self.n,
                a: self.a.clone(),
            });
            // b_{n+1} := 1/(1 + 1/b_n)
            let inv = self.b.recip()?;
            self.b = (Rational::one() + inv).recip()?;
        }
        self.n += 1;
        Ok(record)
    }

    /// Runs until at least `i` NO answers have been recorded.
    pub fn run_until_no(&mut self, i: u64) -> Result<&NoStep, RealError> {
        while (self.nos.len() as u64) < i {
            self.step()?;
        }
        Ok(&self.nos[i as usize - 1])
    }

    /// Value reported at precision `k`: after the i-th NO with `i = 2k`,
    /// `a′_{m_i} − 1/(2i)`, which is within `1/(4k)` of the supremum.
    pub fn approx(&mut self, k: &Precision) -> Result<Rational, RealError> {
        let i = (k.get() << 1usize)
            .to_u64()
            .filter(|&i| i <= self.step_cap)
            .ok_or(RealError::BudgetExceeded {
                what: "paper-mode lub steps",
                limit: self.step_cap,
            })?;
        let a = self.run_until_no(i)?.a.clone();
        Ok(a - Rational::unit_fraction(&BigUint::from(2 * i)))
    }
}

/// Least upper bound by the harmonic four-command loop.
///
/// `m` must be an upper bound of B. If B is empty the loop never answers NO
/// and evaluation ends with [`RealError::BudgetExceeded`].
pub fn lub_paper(
    oracle: Arc<dyn UpperBoundOracle>,
    m: impl Into<BigInt>,
    cfg: &LubConfig,
) -> Result<Real, RealError> {
    let run = Mutex::new(PaperLubRun::new(oracle, m, cfg)?);
    Ok(Real::from_fn(move |k| {
        run.lock().unwrap_or_else(PoisonError::into_inner).approx(k)
    }))
}

/// Bisection state with its full bracket history, so the answer at a
/// given precision does not depend on earlier calls.
pub struct Bisection {
    oracle: Arc<dyn UpperBoundOracle>,
    // history[j] = (lo, hi) after j bisections; lo is never an upper bound, hi always is.
    history: Vec<(Rational, Rational)>,
    step_cap: u64,
}

impl Bisection {
    pub fn new(
        oracle: Arc<dyn UpperBoundOracle>,
        m: impl Into<BigInt>,
        cfg: &LubConfig,
    ) -> Result<Self, RealError> {
        let m: BigInt = m.into();
        let hi = Rational::from_integer(m.clone());
        if !oracle.is_upper_bound(&hi)? {
            return Err(RealError::InitialBoundRejected(Box::new(hi)));
        }
        let mut offset = BigInt::one();
        let mut lo = None;
        for _ in 0..cfg.lower_search_budget {
            let q = Rational::from_integer(&m - &offset);
            if !oracle.is_upper_bound(&q)? {
                lo = Some(q);
                break;
            }
            offset <<= 1usize;
        }
        let lo = lo.ok_or(RealError::BudgetExceeded {
            what: "lower bracket search (is the set empty?)",
            limit: cfg.lower_search_budget,
        })?;
        Ok(Bisection {
            oracle,
            history: vec![(lo, hi)],
            step_cap: cfg.step_cap,
        })
    }

    pub fn bracket(&self, steps: usize) -> Option<&(Rational, Rational)> {
        self.history.get(steps)
    }

    pub fn steps_taken(&self) -> usize {
        self.history.len() - 1
    }

    fn bisect(&mut self) -> Result<(), RealError> {
        if self.steps_taken() as u64 >= self.step_cap {
            return Err(RealError::BudgetExceeded {
                what: "bisection steps",
                limit: self.step_cap,
            });
        }
        let (lo, hi) = self.history.last().expect("history starts non-empty");
        let mid = midpoint(lo, hi);
        let next = if self.oracle.is_upper_bound(&mid)? {
            (lo.clone(), mid)
        } else {
            (mid, hi.clone())
        };
        self.history.push(next);
        Ok(())
    }

    /// Midpoint of the first bracket of width at most `1/k`.
    pub fn approx(&mut self, k: &Precision) -> Result<Rational, RealError> {
        let tol = k.tolerance();
        // widths never grow along the history
        let j = self.history.partition_point(|(lo, hi)| hi - lo > tol);
        if let Some((lo, hi)) = self.history.get(j) {
            return Ok(midpoint(lo, hi));
        }
        loop {
            self.bisect()?;
            let (lo, hi) = self.history.last().expect("history starts non-empty");
            if hi - lo <= tol {
                return Ok(midpoint(lo, hi));
            }
        }
    }
}

fn midpoint(lo: &Rational, hi: &Rational) -> Rational {
    (lo + hi) * Rational::new(1, 2).expect("nonzero denominator")
}

/// Least upper bound by bisection of the oracle's YES/NO bracket.
pub fn lub_fast(
    oracle: Arc<dyn UpperBoundOracle>,
    m: impl Into<BigInt>,
    cfg: &LubConfig,
) -> Result<Real, RealError> {
    let state = Mutex::new(Bisection::new(oracle, m, cfg)?);
    Ok(Real::from_fn(move |k| {
        state
            .lock()
            .unwrap_or_else(PoisonError::into_inner)
            .approx(k)
    }))
}

pub fn lub(
    oracle: Arc<dyn UpperBoundOracle>,
    m: impl Into<BigInt>,
    mode: LubMode,
    cfg: &LubConfig,
) -> Result<Real, RealError> {
    match mode {
        LubMode::Paper => lub_paper(oracle, m, cfg),
        LubMode::Fast => lub_fast(oracle, m, cfg),
    }
}

/// An integer upper bound for `√c`: `max(1, ceil(c))`.
pub fn sqrt_initial_bound(c: &Rational) -> BigInt {
    c.ceil().max(BigInt::one())
}

/// `√c` for a rational `c ≥ 0`, as the supremum of the sqrt oracle.
pub fn sqrt_rational(c: &Rational, mode: LubMode, cfg: &LubConfig) -> Result<Real, RealError> {
    let oracle = sqrt_oracle(c.clone())?;
    let m = sqrt_initial_bound(c);
    lub(Arc::new(oracle), m, mode, cfg)
}

/// `√max(x, 0)` for an arbitrary real.
///
/// Rational inputs go straight to the sqrt oracle. Otherwise, at precision
/// `k` the radicand is read at `4k²` (so `|√c − √x| ≤ √(1/(4k²)) = 1/(2k)`)
/// and its square root is bisected to precision `2k`.
pub fn sqrt(x: &Real, mode: LubMode, cfg: &LubConfig) -> Result<Real, RealError> {
    if let Some(c) = x.as_rational() {
        return sqrt_rational(&c.clone().max(Rational::zero()), mode, cfg);
    }
    let x = x.clone();
    let cfg = cfg.clone();
    Ok(Real::from_fn(move |k| {
        let radicand_precision = Precision::new(k.get() * k.get() * 4u32);
        let c = x.approx_at(&radicand_precision)?.max(Rational::zero());
        let root = sqrt_rational(&c, mode, &cfg)?;
        root.approx_at(&k.times_u64(2))
    }))
}
