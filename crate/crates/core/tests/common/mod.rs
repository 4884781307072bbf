#![allow(dead_code)]

use std::sync::Arc;

use creal::lub::{lub_fast, sqrt_oracle, LubConfig};
use creal::{Precision, Rational, Real, SeqWithModulus};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn e(n: i64, d: i64) -> Real {
    Real::from_rational(q(n, d))
}

pub fn tol(k: u64) -> Rational {
    Precision::from(k).tolerance()
}

pub fn within(a: &Rational, b: &Rational, bound: &Rational) -> bool {
    (a - b).abs() <= *bound
}

/// `floor(sqrt(c · 10^(2·digits)))`, the first `digits` decimals of `√c` as an integer.
pub fn isqrt_digits(c: u64, digits: u32) -> BigUint {
    (BigUint::from(c) * BigUint::from(10u32).pow(2 * digits)).sqrt()
}

/// `q + (−1)^n / n`: converges to `q`; `m, n ≥ 2k` keeps terms within `1/k`.
pub fn alternating_to(target: Rational) -> Real {
    Real::from_sequence(SeqWithModulus::new(
        move |n| {
            let step = Rational::unit_fraction(n);
            if n.bit(0) {
                &target - step
            } else {
                &target + step
            }
        },
        |k| k << 1usize,
    ))
}

/// `q + 1/(3k)` as a raw regular procedure.
pub fn drifting_to(target: Rational) -> Real {
    Real::from_fn(move |k| Ok(&target + k.times_u64(3).tolerance()))
}

pub fn sqrt_fast(c: Rational) -> Real {
    let m = creal::lub::sqrt_initial_bound(&c);
    lub_fast(Arc::new(sqrt_oracle(c).unwrap()), m, &LubConfig::default()).unwrap()
}

/// `√c` bisected from a looser starting bound, so its bracket history differs.
pub fn sqrt_fast_from(c: Rational, m: i64) -> Real {
    lub_fast(Arc::new(sqrt_oracle(c).unwrap()), m, &LubConfig::default()).unwrap()
}

/// A recipe for a real, so strategies can shrink and print it.
#[derive(Clone, Debug)]
pub enum RealSpec {
    Lit(i64, i64),
    Alternating(i64, i64),
    Drifting(i64, i64),
    Sqrt(i64, i64),
}

impl RealSpec {
    pub fn build(&self) -> Real {
        match *self {
            RealSpec::Lit(n, d) => e(n, d),
            RealSpec::Alternating(n, d) => alternating_to(q(n, d)),
            RealSpec::Drifting(n, d) => drifting_to(q(n, d)),
            RealSpec::Sqrt(n, d) => sqrt_fast(q(n, d)),
        }
    }

    pub fn random(rng: &mut impl Rng) -> RealSpec {
        let n = rng.random_range(-40i64..=40);
        let d = rng.random_range(1i64..=12);
        match rng.random_range(0..4) {
            0 => RealSpec::Lit(n, d),
            1 => RealSpec::Alternating(n, d),
            2 => RealSpec::Drifting(n, d),
            _ => RealSpec::Sqrt(n.abs(), d),
        }
    }
}

pub fn real_spec() -> impl Strategy<Value = RealSpec> {
    let nd = (-40i64..=40, 1i64..=12);
    prop_oneof![
        nd.clone().prop_map(|(n, d)| RealSpec::Lit(n, d)),
        nd.clone().prop_map(|(n, d)| RealSpec::Alternating(n, d)),
        nd.clone().prop_map(|(n, d)| RealSpec::Drifting(n, d)),
        (0i64..=40, 1i64..=12).prop_map(|(n, d)| RealSpec::Sqrt(n, d)),
    ]
}

/// Worst `|a(k) − b(k)|` over the given precisions, compared against `2/k`.
pub fn agree_within_two_over_k(a: &Real, b: &Real, ks: &[u64]) -> bool {
    ks.iter().all(|&k| {
        let (x, y) = (a.approx(k).unwrap(), b.approx(k).unwrap());
        within(&x, &y, &(tol(k) + tol(k)))
    })
}
