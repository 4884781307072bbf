//! Uniformly continuous functions on closed rational intervals.
//!
//! A [`UcFunction`] carries its modulus of uniform continuity `ω`, meaning
//! `|u − v| ≤ 1/ω(k)` implies `|f(u) − f(v)| ≤ 1/k`. With the modulus in hand
//! the limit extension to a real `x` close to the domain, and the extremal
//! values over the domain, become plain grid and index arithmetic.
//!
//! Grid scans cost `(hi − lo)·ω(3k)` evaluations for precision `k`, so they
//! are capped (see [`UcFunction::with_grid_cap`]).

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::RealError;
use crate::rational::Rational;
use crate::real::{Precision, Real};

pub const DEFAULT_GRID_CAP: usize = 1_000_000;

/// The closed rational interval `[lo, hi] ∩ ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDomain {
    lo: Rational,
    hi: Rational,
}

impl RationalDomain {
    pub fn interval(lo: Rational, hi: Rational) -> Result<Self, RealError> {
        if lo > hi {
            return Err(RealError::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RationalDomain { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn clamp(&self, q: Rational) -> Rational {
        q.max(self.lo.clone()).min(self.hi.clone())
    }

    fn intervals(&self, mesh: &BigUint) -> BigUint {
        let scaled = (&self.hi - &self.lo) * Rational::from_integer(BigInt::from(mesh.clone()));
        scaled.ceil().magnitude().clone()
    }

    /// Number of points [`grid`](Self::grid) would produce at this mesh.
    pub fn grid_len(&self, mesh: &BigUint) -> BigUint {
        self.intervals(mesh) + 1u32
    }

    /// Equally spaced points from `lo` to `hi` inclusive, spacing at most `1/mesh`.
    pub fn grid(&self, mesh: &BigUint, cap: usize) -> Result<Vec<Rational>, RealError> {
        let len = self.grid_len(mesh);
        let n = len
            .to_usize()
            .filter(|&n| n <= cap)
            .ok_or(RealError::BudgetExceeded {
                what: "grid points",
                limit: cap as u64,
            })?;
        let intervals = n - 1;
        if intervals == 0 {
            return Ok(vec![self.lo.clone()]);
        }
        let step = (&self.hi - &self.lo).checked_div(&Rational::from(intervals as i64))?;
        Ok((0..=intervals)
            .map(|j| &self.lo + &step * Rational::from(j as i64))
            .collect())
    }
}

type EvalFn = dyn Fn(&Rational) -> Real + Send + Sync;
type ModulusFn = dyn Fn(&Precision) -> Precision + Send + Sync;

/// A function on a [`RationalDomain`] with a modulus of uniform continuity.
#[derive(Clone)]
pub struct UcFunction {
    domain: RationalDomain,
    eval: Arc<EvalFn>,
    modulus: Arc<ModulusFn>,
    grid_cap: usize,
}

impl UcFunction {
    pub fn new(
        domain: RationalDomain,
        eval: impl Fn(&Rational) -> Real + Send + Sync + 'static,
        modulus: impl Fn(&Precision) -> Precision + Send + Sync + 'static,
    ) -> Self {
        UcFunction {
            domain,
            eval: Arc::new(eval),
            modulus: Arc::new(modulus),
            grid_cap: DEFAULT_GRID_CAP,
        }
    }

    pub fn with_grid_cap(mut self, cap: usize) -> Self {
        self.grid_cap = cap;
        self
    }

    pub fn domain(&self) -> &RationalDomain {
        &self.domain
    }

    pub fn modulus(&self, k: &Precision) -> Precision {
        (self.modulus)(k)
    }

    pub fn eval(&self, q: &Rational) -> Result<Real, RealError> {
        if !self.domain.contains(q) {
            return Err(RealError::Domain(format!(
                "{q} is outside [{}, {}]",
                self.domain.lo, self.domain.hi
            )));
        }
        Ok((self.eval)(q))
    }

    /// Checks the continuity contract on one pair at precision `k`:
    /// if `|u − v| ≤ 1/ω(k)` then `|f(u)(4k) − f(v)(4k)| ≤ 1/k + 1/(2k)`.
    pub fn spot_check(&self, u: &Rational, v: &Rational, k: &Precision) -> Result<bool, RealError> {
        if (u - v).abs() > self.modulus(k).tolerance() {
            return Ok(true);
        }
        let p = k.times_u64(4);
        let diff = self.eval(u)?.approx_at(&p)? - self.eval(v)?.approx_at(&p)?;
        Ok(diff.abs() <= k.tolerance() + k.times_u64(2).tolerance())
    }

    /// Grid point and value of the extremum at precision `k`: the grid has
    /// mesh `ω(3k)` and values are read at `3k`. Ties go to the leftmost point.
    fn extremum(&self, k: &Precision, which: Extremum) -> Result<(Rational, Rational), RealError> {
        let p = k.times_u64(3);
        let grid = self.domain.grid(self.modulus(&p).get(), self.grid_cap)?;
        let values = grid
            .par_iter()
            .map(|g| (self.eval)(g).approx_at(&p))
            .collect::<Result<Vec<_>, _>>()?;
        let mut best = 0;
        for (j, v) in values.iter().enumerate().skip(1) {
            let better = match which {
                Extremum::Min => v < &values[best],
                Extremum::Max => v > &values[best],
            };
            if better {
                best = j;
            }
        }
        let value = values.into_iter().nth(best).expect("grids are never empty");
        Ok((grid.into_iter().nth(best).expect("same length"), value))
    }
}

#[derive(Clone, Copy)]
enum Extremum {
    Min,
    Max,
}

type SelectFn = dyn Fn(&Precision) -> Result<Rational, RealError> + Send + Sync;

/// Domain points converging to a real `x`: `|select(k) − x| ≤ 1/k`.
#[derive(Clone)]
pub struct ClosenessWitness {
    select: Arc<SelectFn>,
}

impl ClosenessWitness {
    pub fn new(
        select: impl Fn(&Precision) -> Result<Rational, RealError> + Send + Sync + 'static,
    ) -> Self {
        ClosenessWitness {
            select: Arc::new(select),
        }
    }

    pub fn select(&self, k: &Precision) -> Result<Rational, RealError> {
        (self.select)(k)
    }
}

/// Builds a witness for `x ∈ [lo, hi]` by clamping `x(2k)` into the interval.
///
/// Clamping is 1-Lipschitz and fixes `x`, so the selected point stays within
/// `1/(2k)` of `x`. Fails with [`RealError::OutOfDomain`] as soon as some
/// approximation certifies `x` outside `[lo − 1/k, hi + 1/k]`.
pub fn close_to_witness(dom: &RationalDomain, x: &Real) -> Result<ClosenessWitness, RealError> {
    fn checked(dom: &RationalDomain, x: &Real, k: &Precision) -> Result<Rational, RealError> {
        let a = x.approx_at(&k.times_u64(2))?;
        // x(2k) beyond 1/k + 1/(2k) of the interval puts x beyond 1/k
        let reach = k.tolerance() + k.times_u64(2).tolerance();
        if a < dom.lo() - &reach || a > dom.hi() + &reach {
            return Err(RealError::OutOfDomain {
                lo: Box::new(dom.lo().clone()),
                hi: Box::new(dom.hi().clone()),
            });
        }
        Ok(dom.clamp(a))
    }
    checked(dom, x, &Precision::from(1u32))?;
    let dom = dom.clone();
    let x = x.clone();
    Ok(ClosenessWitness::new(move |k| checked(&dom, &x, k)))
}

/// Limit extension of `f` to the real that `w` converges to.
///
/// `approx(k) = f(w.select(2·ω(2k)))(2k)`. The selected point is within
/// `1/(2·ω(2k))` of `x`, hence within `1/ω(2k)` of every late witness point,
/// so the value is within `1/(2k)` of the limit; reading it at `2k` adds
/// another `1/(2k)`.
pub fn extend(f: &UcFunction, w: &ClosenessWitness) -> Real {
    let f = f.clone();
    let w = w.clone();
    Real::from_fn(move |k| {
        let k2 = k.times_u64(2);
        let u = w.select(&f.modulus(&k2).times_u64(2))?;
        f.eval(&u)?.approx_at(&k2)
    })
}

/// `inf f` over the domain: `approx(k)` is the grid minimum at mesh `ω(3k)`
/// with values read at `3k`, within `1/(3k) + 1/(3k)` of the infimum.
pub fn infimum(f: &UcFunction) -> Real {
    let f = f.clone();
    Real::from_fn(move |k| Ok(f.extremum(k, Extremum::Min)?.1))
}

/// `sup f` over the domain; see [`infimum`].
pub fn supremum(f: &UcFunction) -> Real {
    let f = f.clone();
    Real::from_fn(move |k| Ok(f.extremum(k, Extremum::Max)?.1))
}

/// A grid point `q` with `f(q) ≤ inf f + 1/k`.
pub fn eps_minimizer(f: &UcFunction, k: impl Into<Precision>) -> Result<Rational, RealError> {
    Ok(f.extremum(&k.into(), Extremum::Min)?.0)
}

/// A grid point `q` with `f(q) ≥ sup f − 1/k`.
pub fn eps_maximizer(f: &UcFunction, k: impl Into<Precision>) -> Result<Rational, RealError> {
    Ok(f.extremum(&k.into(), Extremum::Max)?.0)
}
