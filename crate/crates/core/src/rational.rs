//! Canonical arbitrary-precision rationals.
//!
//! Every [`Rational`] is kept in lowest terms with a positive denominator, so
//! two rationals are equal exactly when their numerators and denominators are.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    Parse(String),
}

/// The four field operations accepted by [`Rational::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, RationalError> {
        let den = den.into();
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `1/k` for a positive integer `k`.
    pub fn unit_fraction(k: &BigUint) -> Self {
        assert!(!k.is_zero(), "unit fraction of zero");
        Rational(BigRational::new(BigInt::one(), BigInt::from(k.clone())))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn arith(&self, rhs: &Rational, op: ArithOp) -> Result<Self, RationalError> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => return self.checked_div(rhs),
        })
    }

    pub fn compare(&self, rhs: &Rational) -> Ordering {
        self.cmp(rhs)
    }

    pub fn min(self, rhs: Rational) -> Rational {
        if rhs < self {
            rhs
        } else {
            self
        }
    }

    pub fn max(self, rhs: Rational) -> Rational {
        if rhs > self {
            rhs
        } else {
            self
        }
    }

    /// Nearest integer, ties rounded away from zero.
    pub fn round_half_away(&self) -> BigInt {
        let (num, den) = (self.numer(), self.denom());
        // |num| = q·den + r with 0 ≤ r < den
        let (q, r) = num.magnitude().div_rem(den.magnitude());
        let twice_r = r << 1usize;
        let mag = if twice_r >= *den.magnitude() {
            q + 1u32
        } else {
            q
        };
        BigInt::from_biguint(num.sign(), mag)
    }

    /// Fixed-point rendering with `digits` places after the point.
    ///
    /// The printed value is within `10^-digits / 2` of `self`; exact ties go
    /// away from zero. A value that rounds to zero prints without a sign.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = Rational(&self.0 * BigRational::from_integer(scale)).round_half_away();
        let negative = scaled.sign() == Sign::Minus;
        let mut body = scaled.magnitude().to_str_radix(10);
        if digits > 0 {
            if body.len() <= digits {
                body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
            }
            body.insert(body.len() - digits, '.');
        }
        if negative {
            body.insert(0, '-');
        }
        body
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `-? digits ('.' digits)?` and `-? digits '/' digits`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Parse(s.to_string());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let all_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let value = if let Some((num, den)) = body.split_once('/') {
            if !all_digits(num) || !all_digits(den) {
                return Err(bad());
            }
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            Rational::new(num, den)?
        } else if let Some((int, frac)) = body.split_once('.') {
            if !all_digits(int) || !all_digits(frac) {
                return Err(bad());
            }
            let mantissa: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
            Rational::new(mantissa, BigInt::from(10u32).pow(frac.len() as u32))?
        } else {
            if !all_digits(body) {
                return Err(bad());
            }
            Rational::from_integer(body.parse::<BigInt>().map_err(|_| bad())?)
        };
        Ok(if negative { -value } else { value })
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn assert_canonical(r: &Rational) {
        assert!(r.denom().is_positive());
        assert!(r.numer().gcd(r.denom()).is_one());
    }

    /// Schoolbook long division on |num|/den, one digit past `digits`,
    /// then round half away from zero on that digit and the remainder.
    fn long_division_oracle(num: i64, den: i64, digits: usize) -> String {
        let negative = (num < 0) != (den < 0) && num != 0;
        let (n, d) = (num.unsigned_abs() as u128, den.unsigned_abs() as u128);
        let int = n / d;
        let mut rem = n % d;
        let mut frac = Vec::new();
        for _ in 0..digits {
            rem *= 10;
            frac.push((rem / d) as u8);
            rem %= d;
        }
        let round_up = 2 * rem >= d;
        let mut all: Vec<u8> = int.to_string().bytes().map(|b| b - b'0').collect();
        all.extend(frac);
        if round_up {
            let mut i = all.len();
            loop {
                if i == 0 {
                    all.insert(0, 1);
                    break;
                }
                i -= 1;
                if all[i] == 9 {
                    all[i] = 0;
                } else {
                    all[i] += 1;
                    break;
                }
            }
        }
        let split = all.len() - digits;
        let mut s: String = all[..split].iter().map(|d| (b'0' + d) as char).collect();
        if digits > 0 {
            s.push('.');
            s.extend(all[split..].iter().map(|d| (b'0' + d) as char));
        }
        let is_zero = all.iter().all(|&d| d == 0);
        if negative && !is_zero {
            s.insert(0, '-');
        }
        s
    }

    #[test]
    fn make_canonicalizes() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6).numer(), &BigInt::from(-1));
        assert_eq!(q(3, -6).denom(), &BigInt::from(2));
        let z = q(0, 7);
        assert!(z.numer().is_zero());
        assert!(z.denom().is_one());
        assert_eq!(Rational::new(1, 0), Err(RationalError::ZeroDenominator));
    }

    #[test]
    fn arith_examples() {
        assert_eq!(q(1, 2).arith(&q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
        assert_eq!(
            q(3, 7).arith(&q(7, 3), ArithOp::Mul).unwrap(),
            Rational::one()
        );
        assert_eq!(
            q(1, 2).arith(&q(0, 1), ArithOp::Div),
            Err(RationalError::DivisionByZero)
        );
        assert_eq!(q(1, 2).arith(&q(1, 3), ArithOp::Sub).unwrap(), q(1, 6));
        assert_eq!(q(1, 2).arith(&q(1, 3), ArithOp::Div).unwrap(), q(3, 2));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(q(1, 3).compare(&q(1, 2)), Ordering::Less);
        assert_eq!(q(2, 4).compare(&q(1, 2)), Ordering::Equal);
        assert_eq!(q(-1, 2).compare(&q(-1, 3)), Ordering::Less);
    }

    #[test]
    fn to_decimal_examples() {
        assert_eq!(q(1, 3).to_decimal(4), "0.3333");
        assert_eq!(q(1, 2).to_decimal(0), "1");
        assert_eq!(q(-1, 2).to_decimal(0), "-1");
        assert_eq!(q(-22, 7).to_decimal(3), long_division_oracle(-22, 7, 3));
        assert_eq!(q(-22, 7).to_decimal(3), "-3.143");
        assert_eq!(q(1, 200).to_decimal(2), "0.01");
        assert_eq!(q(-1, 1000).to_decimal(2), "0.00");
        assert_eq!(q(5, 1).to_decimal(2), "5.00");
        assert_eq!(q(999, 1000).to_decimal(2), "1.00");
    }

    #[test]
    fn parse_literals() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("-0.25".parse::<Rational>().unwrap(), q(-1, 4));
        assert_eq!("2.71828".parse::<Rational>().unwrap(), q(271828, 100000));
        assert_eq!("42".parse::<Rational>().unwrap(), q(42, 1));
        for bad in [
            "", "-", "1/", "/2", "1.", ".5", "1/0", "1e3", "0x10", "1/-2", "--1",
        ] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &(-&a), Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
            }
            for r in [&a + &b, &a - &b, &a * &b] {
                assert_canonical(&r);
            }
        }

        #[test]
        fn order_axioms(a in small(), b in small(), c in small()) {
            if a < b {
                prop_assert!(&a + &c < &b + &c);
            }
            if a.is_positive() && b.is_positive() {
                prop_assert!((&a * &b).is_positive());
            }
            let n = [a < b, a == b, a > b].iter().filter(|x| **x).count();
            prop_assert_eq!(n, 1);
        }

        #[test]
        fn compare_matches_cross_multiplication(k in -1000i64..1000, l in 1i64..1000, m in -1000i64..1000, n in 1i64..1000) {
            prop_assert_eq!(q(k, l).compare(&q(m, n)), (k * n).cmp(&(l * m)));
        }

        #[test]
        fn to_decimal_matches_long_division(n in -100_000i64..100_000, d in 1i64..5000, digits in 0usize..12) {
            prop_assert_eq!(q(n, d).to_decimal(digits), long_division_oracle(n, d, digits));
        }

        #[test]
        fn decimal_round_trip(a in small(), digits in 0usize..10) {
            let s = a.to_decimal(digits);
            let back: Rational = s.parse().unwrap();
            let tol = Rational::new(1, BigInt::from(10u32).pow(digits as u32)).unwrap();
            prop_assert!((&back - &a).abs() <= tol);
        }
    }
}
