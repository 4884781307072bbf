//! Weak order on reals: finite-precision verdicts and the certificates behind them.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{Precision, Real};
use crate::error::RealError;
use crate::rational::Rational;

/// Outcome of [`separate`] at a fixed precision `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    /// `x < y` is certified.
    Less,
    /// `y < x` is certified.
    Greater,
    /// `|x − y| ≤ 1/k`.
    Close,
}

/// Weak trichotomy at precision `k`.
///
/// With `d = y(4k) − x(4k)`: `d > 1/(2k)` certifies `x < y`, `d < −1/(2k)`
/// certifies `y < x`, and otherwise `|x − y| ≤ 1/(2k) + 1/(2k) = 1/k`.
pub fn separate(x: &Real, y: &Real, k: impl Into<Precision>) -> Result<Separation, RealError> {
    let k = k.into();
    let p = k.times_u64(4);
    let d = y.approx_at(&p)? - x.approx_at(&p)?;
    let half = k.times_u64(2).tolerance();
    Ok(if d > half {
        Separation::Less
    } else if d < -half {
        Separation::Greater
    } else {
        Separation::Close
    })
}

/// Finite evidence that `x < y` with `y − x > 1/k`, observed at precision `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCertificate {
    pub k: BigUint,
    pub p: Precision,
}

impl GapCertificate {
    pub fn gap(&self) -> Rational {
        Rational::unit_fraction(&self.k)
    }

    /// Re-checks `y(p) − x(p) > 1/k + 2/p` against fresh approximations.
    pub fn verify(&self, x: &Real, y: &Real) -> Result<bool, RealError> {
        let d = y.approx_at(&self.p)? - x.approx_at(&self.p)?;
        let slack = self.p.tolerance() + self.p.tolerance();
        Ok(d > self.gap() + slack)
    }

    /// The largest gap `1/k` that the approximations at `p` support, if any.
    fn observe(x: &Real, y: &Real, p: Precision) -> Result<Option<Self>, RealError> {
        let d = y.approx_at(&p)? - x.approx_at(&p)?;
        let slack = &d - (p.tolerance() + p.tolerance());
        if !slack.is_positive() {
            return Ok(None);
        }
        // 1/k < slack with k = floor(1/slack) + 1
        let k = slack.recip()?.floor() + 1u32;
        Ok(Some(GapCertificate {
            k: k.magnitude().clone(),
            p,
        }))
    }
}

/// Result of [`lt_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LtWitness {
    /// Certificate for `x < y` (check with `verify(x, y)`).
    Less(GapCertificate),
    /// Certificate for `y < x` (check with `verify(y, x)`).
    Greater(GapCertificate),
    /// `|x − y| ≤ 1/budget`; says nothing about equality.
    Indistinguishable,
}

/// Powers of two up to `budget`, then `budget` itself if it is not one.
pub(crate) fn doubling_schedule(budget: u64) -> impl Iterator<Item = u64> {
    let budget = budget.max(1);
    let powers = std::iter::successors(Some(1u64), move |&k| {
        k.checked_mul(2).filter(|&next| next <= budget)
    });
    let tail = (!budget.is_power_of_two()).then_some(budget);
    powers.chain(tail)
}

/// Searches `k = 1, 2, 4, ..., budget` for a precision at which `x` and `y`
/// separate, and returns a gap certificate in the direction found.
pub fn lt_witness(x: &Real, y: &Real, budget: u64) -> Result<LtWitness, RealError> {
    for k in doubling_schedule(budget) {
        let (lo, hi) = match separate(x, y, k)? {
            Separation::Close => continue,
            Separation::Less => (x, y),
            Separation::Greater => (y, x),
        };
        let coarse = Precision::from(k).times_u64(4);
        let mut best: Option<GapCertificate> = None;
        for factor in [1u64, 4, 16] {
            let found = GapCertificate::observe(lo, hi, coarse.times_u64(factor))?;
            if let Some(c) = found {
                if best.as_ref().is_none_or(|b| c.k < b.k) {
                    best = Some(c);
                }
            }
        }
        // at the coarse precision `separate` already saw d > 2/p
        let cert = best.expect("separation implies a certificate at the coarse precision");
        return Ok(if std::ptr::eq(lo, x) {
            LtWitness::Less(cert)
        } else {
            LtWitness::Greater(cert)
        });
    }
    Ok(LtWitness::Indistinguishable)
}

/// Proof that `|x| ≥ 1/k0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartnessWitness {
    k0: BigUint,
}

impl ApartnessWitness {
    pub fn new(k0: impl Into<BigUint>) -> Self {
        let k0 = k0.into();
        assert!(!k0.is_zero(), "apartness witness needs k0 ≥ 1");
        ApartnessWitness { k0 }
    }

    pub fn k0(&self) -> &BigUint {
        &self.k0
    }

    /// Acceptance test `|x(2·k0)| ≥ 1/k0 − 1/(2·k0)`.
    pub fn accepts(&self, x: &Real) -> Result<bool, RealError> {
        let p = Precision::new(&self.k0 << 1usize);
        let threshold = p.tolerance();
        Ok(x.approx_at(&p)?.abs() >= threshold)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Apartness {
    Apart(ApartnessWitness),
    /// Budget exhausted: only `|x| < 2/budget` is known.
    NotSeparated,
}

/// Looks for `k` in `1, 2, 4, ..., budget` with `|x(2k)| ≥ 3/(2k)`, which
/// proves `|x| ≥ 1/k`; the witness returned is `k0 = 2k`.
pub fn find_apartness(x: &Real, budget: u64) -> Result<Apartness, RealError> {
    for k in doubling_schedule(budget) {
        let p = Precision::from(k).times_u64(2);
        let threshold = Rational::new(3u32, p.get().clone())?;
        if x.approx_at(&p)?.abs() >= threshold {
            return Ok(Apartness::Apart(ApartnessWitness::new(p.get().clone())));
        }
    }
    Ok(Apartness::NotSeparated)
}

impl Apartness {
    pub fn witness(&self) -> Option<&ApartnessWitness> {
        match self {
            Apartness::Apart(w) => Some(w),
            Apartness::NotSeparated => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::SeqWithModulus;

    fn e(n: i64, d: i64) -> Real {
        Real::from_rational(Rational::new(n, d).unwrap())
    }

    fn harmonic() -> Real {
        Real::from_sequence(SeqWithModulus::new(Rational::unit_fraction, |k| {
            k << 1usize
        }))
    }

    #[test]
    fn schedule_covers_budget() {
        assert_eq!(
            doubling_schedule(64).collect::<Vec<_>>(),
            [1, 2, 4, 8, 16, 32, 64]
        );
        assert_eq!(doubling_schedule(10).collect::<Vec<_>>(), [1, 2, 4, 8, 10]);
        assert_eq!(doubling_schedule(1).collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn separate_examples() {
        assert_eq!(separate(&e(0, 1), &e(1, 1), 10).unwrap(), Separation::Less);
        assert_eq!(
            separate(&e(1, 1), &e(0, 1), 10).unwrap(),
            Separation::Greater
        );
        let h = harmonic();
        for k in [1u64, 3, 10, 1000, 1 << 20] {
            assert_eq!(separate(&h, &h, k).unwrap(), Separation::Close);
            assert_eq!(separate(&e(0, 1), &h, k).unwrap(), Separation::Close);
        }
    }

    #[test]
    fn apartness_examples() {
        let w = find_apartness(&e(1, 2), 64).unwrap();
        let w = w.witness().expect("1/2 is apart from zero");
        assert!(w.accepts(&e(1, 2)).unwrap());
        assert!(Rational::unit_fraction(w.k0()) <= Rational::new(1, 2).unwrap());
        assert_eq!(
            find_apartness(&Real::zero(), 64).unwrap(),
            Apartness::NotSeparated
        );
        assert_eq!(
            find_apartness(&harmonic(), 64).unwrap(),
            Apartness::NotSeparated
        );
        let w = find_apartness(&e(-1, 1000), 1 << 12).unwrap();
        assert!(w.witness().unwrap().accepts(&e(-1, 1000)).unwrap());
        assert_eq!(
            find_apartness(&e(1, 1000), 100).unwrap(),
            Apartness::NotSeparated
        );
    }

    #[test]
    fn lt_witness_examples() {
        let (third, half) = (e(1, 3), e(1, 2));
        match lt_witness(&third, &half, 64).unwrap() {
            LtWitness::Less(c) => {
                assert!(c.verify(&third, &half).unwrap());
                // the exact gap is 1/6
                assert!(c.gap() <= Rational::new(1, 6).unwrap());
                assert!(c.gap() >= Rational::new(1, 8).unwrap());
            }
            other => panic!("expected Less, got {other:?}"),
        }
        let g = harmonic();
        assert_eq!(
            lt_witness(&g, &g, 64).unwrap(),
            LtWitness::Indistinguishable
        );
        match lt_witness(&half, &third, 64).unwrap() {
            LtWitness::Greater(c) => assert!(c.verify(&third, &half).unwrap()),
            other => panic!("expected Greater, got {other:?}"),
        }
    }
}
