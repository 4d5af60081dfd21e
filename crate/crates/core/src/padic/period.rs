//! Eventual periodicity of the digit stream of a rational.
//!
//! Write the unit part as `n / d` with `d > 0` prime to `p`. Digits are
//! produced by `a = n d^{-1} mod p`, `n <- (n - a d) / p`. On the window
//! `-d <= n <= 0` this step is a permutation, so the stream is purely
//! periodic once the state enters it, with period dividing `ord_d(p)`.
//! From outside the window `|n| - d` (or `n` when positive) shrinks by a
//! factor `p` per step, so the state enters it within
//! `(number of base-p digits of |n|) + 1` steps.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::check_prime;
use crate::error::{Error, Result};
use crate::valcore::split_prime_power;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Periodicity {
    /// Digits before the repetend starts.
    pub preperiod: usize,
    pub period: usize,
    /// A priori bound on `preperiod` from the size of the numerator.
    pub preperiod_bound: usize,
    /// `ord_d(p)`, of which `period` is a divisor (1 when `d = 1`).
    pub order: u64,
}

/// Multiplicative order of `p` modulo `d` (`d >= 1`, coprime to `p`).
pub fn multiplicative_order(p: u64, d: u64) -> u64 {
    if d == 1 {
        return 1;
    }
    let mut x = p % d;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * p as u128) % d as u128) as u64;
        k += 1;
    }
    k
}

fn base_digits(n: &BigInt, p: u32) -> usize {
    let mut n = n.abs();
    let mut k = 0;
    while !n.is_zero() {
        n /= p;
        k += 1;
    }
    k
}

pub fn periodicity(q: &BigRational, p: u32) -> Result<Periodicity> {
    check_prime(p)?;
    if q.is_zero() {
        return Ok(Periodicity { preperiod: 0, period: 1, preperiod_bound: 0, order: 1 });
    }
    let (_, mut n) = split_prime_power(q.numer(), p as u64);
    let (_, d) = split_prime_power(q.denom(), p as u64);
    let d_small = d
        .to_u64()
        .ok_or_else(|| Error::OutOfRange("denominator too large for period detection".into()))?;
    let d_inv = {
        let e = BigInt::from(d_small % p as u64).extended_gcd(&BigInt::from(p));
        e.x.mod_floor(&BigInt::from(p))
    };
    let bound = base_digits(&n, p) + 1;
    let order = multiplicative_order(p as u64, d_small);
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let pb = BigInt::from(p);
    for step in 0.. {
        if let Some(&first) = seen.get(&n) {
            return Ok(Periodicity { preperiod: first, period: step - first, preperiod_bound: bound, order });
        }
        seen.insert(n.clone(), step);
        let a = (&n * &d_inv).mod_floor(&pb);
        n = (&n - &a * &d) / &pb;
    }
    unreachable!()
}
