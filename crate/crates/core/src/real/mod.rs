//! Real numbers as regular rational Cauchy sequences.
//!
//! A [`Real`] is a procedure that, given a precision index `k ≥ 1`, returns a
//! rational within `1/k` of the number it denotes. Consequently any two
//! approximations satisfy `|x(j) − x(k)| ≤ 1/j + 1/k`. Every operation below
//! states which precision it requests from its operands so that the combined
//! error stays within `1/k`.
//!
//! Equality of reals is not decidable. Comparisons live in [`order`] and return
//! three-valued verdicts with a quantitative meaning.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock, PoisonError};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::RealError;
use crate::rational::Rational;

pub mod order;

pub use order::{
    find_apartness, lt_witness, separate, Apartness, ApartnessWitness, GapCertificate, LtWitness,
    Separation,
};

/// Precision index `k ≥ 1`; an approximation at `k` is within `1/k` of the limit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(BigUint);

impl Precision {
    pub fn new(k: impl Into<BigUint>) -> Self {
        let k = k.into();
        assert!(!k.is_zero(), "precision index must be at least 1");
        Precision(k)
    }

    pub fn get(&self) -> &BigUint {
        &self.0
    }

    pub fn times(&self, factor: &BigUint) -> Precision {
        Precision::new(&self.0 * factor)
    }

    pub fn times_u64(&self, factor: u64) -> Precision {
        Precision::new(&self.0 * factor)
    }

    /// The error bound `1/k` that goes with this index.
    pub fn tolerance(&self) -> Rational {
        Rational::unit_fraction(&self.0)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Precision({})", self.0)
    }
}

impl From<BigUint> for Precision {
    fn from(k: BigUint) -> Self {
        Precision::new(k)
    }
}

impl From<&Precision> for Precision {
    fn from(k: &Precision) -> Self {
        k.clone()
    }
}

macro_rules! precision_from_unsigned {
    ($($t:ty),*) => {$(
        impl From<$t> for Precision {
            fn from(k: $t) -> Self {
                Precision::new(BigUint::from(k))
            }
        }
    )*};
}

precision_from_unsigned!(u32, u64, usize);

impl From<i32> for Precision {
    fn from(k: i32) -> Self {
        let k = u32::try_from(k).expect("precision index must be positive");
        Precision::new(BigUint::from(k))
    }
}

type SeqFn = dyn Fn(&BigUint) -> Rational + Send + Sync;
type ModulusFn = dyn Fn(&BigUint) -> BigUint + Send + Sync;

/// A rational sequence together with a modulus of convergence.
///
/// Contract: `m, n ≥ modulus(k)` implies `|seq(m) − seq(n)| ≤ 1/k`. Indices
/// start at 1; a modulus of 0 is read as 1.
#[derive(Clone)]
pub struct SeqWithModulus {
    seq: Arc<SeqFn>,
    modulus: Arc<ModulusFn>,
}

impl SeqWithModulus {
    pub fn new(
        seq: impl Fn(&BigUint) -> Rational + Send + Sync + 'static,
        modulus: impl Fn(&BigUint) -> BigUint + Send + Sync + 'static,
    ) -> Self {
        SeqWithModulus {
            seq: Arc::new(seq),
            modulus: Arc::new(modulus),
        }
    }

    pub fn term(&self, n: &BigUint) -> Rational {
        (self.seq)(n)
    }

    pub fn modulus(&self, k: &BigUint) -> BigUint {
        let n = (self.modulus)(k);
        if n.is_zero() {
            BigUint::one()
        } else {
            n
        }
    }
}

type ApproxFn = dyn Fn(&Precision) -> Result<Rational, RealError> + Send + Sync;

enum Kind {
    Exact(Rational),
    Sequence(SeqWithModulus),
    Neg(Real),
    Add(Real, Real),
    Mul {
        lhs: Real,
        rhs: Real,
        bound: OnceLock<BigUint>,
    },
    Recip {
        arg: Real,
        k0: BigUint,
        accepted: OnceLock<bool>,
    },
    Abs(Real),
    Max(Real, Real),
    Min(Real, Real),
    Procedure(Box<ApproxFn>),
}

struct Node {
    kind: Kind,
    // Last answered precision; only an exact hit is served from here.
    memo: Mutex<Option<(Precision, Rational)>>,
}

/// A computable real number. Cheap to clone; safe to share across threads.
#[derive(Clone)]
pub struct Real(Arc<Node>);

impl Real {
    fn from_kind(kind: Kind) -> Self {
        Real(Arc::new(Node {
            kind,
            memo: Mutex::new(None),
        }))
    }

    /// The constant sequence `(q, q, q, ...)`.
    pub fn from_rational(q: Rational) -> Self {
        Real::from_kind(Kind::Exact(q))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Real::from_rational(Rational::from_integer(n))
    }

    pub fn zero() -> Self {
        Real::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Real::from_rational(Rational::one())
    }

    /// Normalizes a Cauchy sequence with modulus into a regular one:
    /// `approx(k) = seq(modulus(2k))`, which lies within `1/(2k)` of the limit.
    pub fn from_sequence(s: SeqWithModulus) -> Self {
        Real::from_kind(Kind::Sequence(s))
    }

    /// Wraps a procedure that already meets the regularity contract.
    pub fn from_fn(
        f: impl Fn(&Precision) -> Result<Rational, RealError> + Send + Sync + 'static,
    ) -> Self {
        Real::from_kind(Kind::Procedure(Box::new(f)))
    }

    /// The exact value, when this real was built from a rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0.kind {
            Kind::Exact(q) => Some(q),
            _ => None,
        }
    }

    pub fn approx(&self, k: impl Into<Precision>) -> Result<Rational, RealError> {
        self.approx_at(&k.into())
    }

    pub fn approx_at(&self, k: &Precision) -> Result<Rational, RealError> {
        if let Kind::Exact(q) = &self.0.kind {
            return Ok(q.clone());
        }
        {
            let memo = self.0.memo.lock().unwrap_or_else(PoisonError::into_inner);
            if let Some((p, v)) = memo.as_ref() {
                if p == k {
                    return Ok(v.clone());
                }
            }
        }
        let v = self.compute(k)?;
        *self.0.memo.lock().unwrap_or_else(PoisonError::into_inner) = Some((k.clone(), v.clone()));
        Ok(v)
    }

    fn compute(&self, k: &Precision) -> Result<Rational, RealError> {
        match &self.0.kind {
            Kind::Exact(q) => Ok(q.clone()),
            Kind::Sequence(s) => {
                let n = s.modulus(&(k.get() << 1usize));
                Ok(s.term(&n))
            }
            Kind::Neg(x) => Ok(-x.approx_at(k)?),
            Kind::Add(x, y) => {
                let p = k.times_u64(2);
                Ok(x.approx_at(&p)? + y.approx_at(&p)?)
            }
            Kind::Mul { lhs, rhs, bound } => {
                let l = match bound.get() {
                    Some(l) => l.clone(),
                    None => {
                        let l = lhs.bound()?.max(rhs.bound()?);
                        bound.get_or_init(|| l).clone()
                    }
                };
                // |xy − ab| ≤ |x|·|y − b| + |x − a|·|b| ≤ 2l/p
                let p = k.times(&(l << 1usize));
                Ok(lhs.approx_at(&p)? * rhs.approx_at(&p)?)
            }
            Kind::Recip { arg, k0, accepted } => {
                let ok = match accepted.get() {
                    Some(ok) => *ok,
                    None => {
                        let ok = ApartnessWitness::new(k0.clone()).accepts(arg)?;
                        *accepted.get_or_init(|| ok)
                    }
                };
                if !ok {
                    return Err(RealError::WitnessInvalid { k0: k0.clone() });
                }
                // |1/a − 1/x| ≤ |x − a|·2k0·k0 once |a| ≥ 1/(2k0) and |x| ≥ 1/k0
                let floor = k0 << 1usize;
                let wanted = k.get() * k0 * k0 * 2u32;
                let a = arg.approx_at(&Precision::new(wanted.max(floor)))?;
                if a.is_zero() {
                    Ok(Rational::zero())
                } else {
                    Ok(a.recip()?)
                }
            }
            Kind::Abs(x) => Ok(x.approx_at(k)?.abs()),
            Kind::Max(x, y) => Ok(x.approx_at(k)?.max(y.approx_at(k)?)),
            Kind::Min(x, y) => Ok(x.approx_at(k)?.min(y.approx_at(k)?)),
            Kind::Procedure(f) => f(k),
        }
    }

    /// An integer `l` with `|approx(k)| ≤ l` for every `k`: `ceil(|approx(1)|) + 2`.
    pub fn bound(&self) -> Result<BigUint, RealError> {
        let first = self.approx(1u32)?.abs();
        let l = first.ceil() + 2u32;
        Ok(l.magnitude().clone())
    }

    pub fn abs(&self) -> Real {
        match self.as_rational() {
            Some(q) => Real::from_rational(q.abs()),
            None => Real::from_kind(Kind::Abs(self.clone())),
        }
    }

    pub fn max(&self, other: &Real) -> Real {
        Real::from_kind(Kind::Max(self.clone(), other.clone()))
    }

    pub fn min(&self, other: &Real) -> Real {
        Real::from_kind(Kind::Min(self.clone(), other.clone()))
    }

    /// Reciprocal of a real known to be apart from zero.
    ///
    /// The witness is checked on first evaluation; an unacceptable witness makes
    /// every approximation fail with [`RealError::WitnessInvalid`].
    pub fn recip(&self, w: &ApartnessWitness) -> Real {
        Real::from_kind(Kind::Recip {
            arg: self.clone(),
            k0: w.k0().clone(),
            accepted: OnceLock::new(),
        })
    }

    fn add_real(&self, other: &Real) -> Real {
        Real::from_kind(Kind::Add(self.clone(), other.clone()))
    }

    fn mul_real(&self, other: &Real) -> Real {
        Real::from_kind(Kind::Mul {
            lhs: self.clone(),
            rhs: other.clone(),
            bound: OnceLock::new(),
        })
    }

    fn neg_real(&self) -> Real {
        match self.as_rational() {
            Some(q) => Real::from_rational(-q),
            None => Real::from_kind(Kind::Neg(self.clone())),
        }
    }

    /// `|approx(j) − approx(k)| ≤ 1/j + 1/k` at the given indices.
    pub fn is_regular_at(&self, indices: &[u64]) -> Result<bool, RealError> {
        let values = indices
            .iter()
            .map(|&k| Ok((Precision::from(k), self.approx(k)?)))
            .collect::<Result<Vec<_>, RealError>>()?;
        for (j, (pj, aj)) in values.iter().enumerate() {
            for (pk, ak) in &values[j + 1..] {
                if (aj - ak).abs() > pj.tolerance() + pk.tolerance() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Exact(q) => write!(f, "Real({q})"),
            Kind::Sequence(_) => write!(f, "Real(<sequence>)"),
            Kind::Neg(x) => write!(f, "-({x:?})"),
            Kind::Add(x, y) => write!(f, "({x:?} + {y:?})"),
            Kind::Mul { lhs, rhs, .. } => write!(f, "({lhs:?} * {rhs:?})"),
            Kind::Recip { arg, .. } => write!(f, "1/({arg:?})"),
            Kind::Abs(x) => write!(f, "|{x:?}|"),
            Kind::Max(x, y) => write!(f, "max({x:?}, {y:?})"),
            Kind::Min(x, y) => write!(f, "min({x:?}, {y:?})"),
            Kind::Procedure(_) => write!(f, "Real(<procedure>)"),
        }
    }
}

impl From<Rational> for Real {
    fn from(q: Rational) -> Self {
        Real::from_rational(q)
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                $body(self, rhs)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                $body(&self, rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $body(self, &rhs)
            }
        }
    };
}

real_binop!(Add, add, |x: &Real, y: &Real| x.add_real(y));
real_binop!(Sub, sub, |x: &Real, y: &Real| x.add_real(&y.neg_real()));
real_binop!(Mul, mul, |x: &Real, y: &Real| x.mul_real(y));

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        self.neg_real()
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        self.neg_real()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn e(n: i64, d: i64) -> Real {
        Real::from_rational(q(n, d))
    }

    fn harmonic() -> Real {
        Real::from_sequence(SeqWithModulus::new(Rational::unit_fraction, |k| {
            k << 1usize
        }))
    }

    /// Partial sums `Σ_{i=0}^{n-1} 2^-i` with modulus `ceil(log2 k) + 1`.
    fn geometric() -> Real {
        Real::from_sequence(SeqWithModulus::new(
            |n| {
                let n = u32::try_from(n).unwrap();
                (0..n).fold(Rational::zero(), |acc, i| {
                    acc + Rational::new(1, BigInt::from(2u32).pow(i)).unwrap()
                })
            },
            |k| BigUint::from(k.bits() + 1),
        ))
    }

    const POWERS: [u64; 9] = [1, 2, 4, 16, 64, 256, 1024, 4096, 65536];

    #[test]
    fn constants_are_constant_sequences() {
        assert_eq!(Real::one().approx(7).unwrap(), Rational::one());
        assert_eq!(Real::zero().approx(1).unwrap(), Rational::zero());
        assert_eq!(e(5, 6).approx(1_000_000).unwrap(), q(5, 6));
    }

    #[test]
    fn from_sequence_examples() {
        let h = harmonic();
        for k in POWERS {
            assert!(h.approx(k).unwrap().abs() <= q(1, k as i64));
        }
        // closed form of the partial sums is 2 − 2^(1−n); the limit is 2
        let g = geometric();
        for k in POWERS {
            assert!((g.approx(k).unwrap() - q(2, 1)).abs() <= q(1, k as i64));
        }
        let c = Real::from_sequence(SeqWithModulus::new(|_| q(3, 7), |_| BigUint::one()));
        assert_eq!(c.approx(12).unwrap(), q(3, 7));
        for x in [h, g, c] {
            assert!(x.is_regular_at(&POWERS).unwrap());
        }
    }

    #[test]
    fn add_examples() {
        assert_eq!((e(1, 2) + e(1, 3)).approx(10).unwrap(), q(5, 6));
        let g = geometric();
        let sum = &g + &(-&g);
        for k in POWERS {
            assert!(sum.approx(k).unwrap().abs() <= q(1, k as i64));
        }
        let z = &g + &Real::zero();
        assert_eq!(z.approx(8).unwrap(), g.approx(16).unwrap());
        assert_eq!((e(1, 2) - e(1, 3)).approx(3).unwrap(), q(1, 6));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(e(3, 2).bound().unwrap(), BigUint::from(4u32));
        assert_eq!(Real::zero().bound().unwrap(), BigUint::from(2u32));
        let x = Real::from_fn(|_| Ok(q(-7, 2)));
        assert_eq!(x.bound().unwrap(), BigUint::from(6u32));
        let g = geometric();
        let l = Rational::from_integer(BigInt::from(g.bound().unwrap()));
        for k in POWERS {
            assert!(g.approx(k).unwrap().abs() <= l);
        }
    }

    #[test]
    fn mul_examples() {
        assert_eq!((e(2, 3) * e(3, 2)).approx(5).unwrap(), Rational::one());
        let g = geometric();
        let zero = &g * &Real::zero();
        assert!(zero.approx(100).unwrap().is_zero());
        let sq = &g * &g;
        for k in POWERS {
            assert!((sq.approx(k).unwrap() - q(4, 1)).abs() <= q(1, k as i64));
        }
        assert!(sq.is_regular_at(&POWERS).unwrap());
    }

    #[test]
    fn recip_uses_witness() {
        let w = ApartnessWitness::new(BigUint::from(4u32));
        assert_eq!(e(2, 1).recip(&w).approx(9).unwrap(), q(1, 2));
        assert_eq!(e(-1, 3).recip(&w).approx(9).unwrap(), q(-3, 1));
        let bad = ApartnessWitness::new(BigUint::from(2u32));
        let r = e(1, 100).recip(&bad);
        assert_eq!(
            r.approx(3),
            Err(RealError::WitnessInvalid {
                k0: BigUint::from(2u32)
            })
        );
    }

    #[test]
    fn lattice_ops_are_componentwise() {
        assert_eq!(e(-2, 3).abs().approx(4).unwrap(), q(2, 3));
        let g = geometric();
        assert_eq!(g.max(&g).approx(64).unwrap(), g.approx(64).unwrap());
        assert_eq!(e(1, 3).min(&e(1, 2)).approx(1).unwrap(), q(1, 3));
        let h = harmonic();
        assert!((&h - &e(1, 5)).abs().is_regular_at(&POWERS).unwrap());
    }

    #[test]
    fn approx_is_deterministic_through_memo() {
        let g = &geometric() * &harmonic();
        let a = g.approx(100).unwrap();
        let _ = g.approx(7).unwrap();
        assert_eq!(g.approx(100).unwrap(), a);
    }

    #[test]
    fn reals_are_shareable() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Real>();
        let g = geometric() * harmonic();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let g = g.clone();
                std::thread::spawn(move || g.approx(1000u32).unwrap())
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    #[should_panic(expected = "precision index")]
    fn zero_precision_panics() {
        let _ = Precision::from(0u64);
    }
}
