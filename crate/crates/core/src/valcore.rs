//! Shared valuation vocabulary.
//!
//! A [`ValRank`] is a value of a valuation logarithm: an element of
//! `(1/2)Z` or `+inf`. An [`AbsValue`] is the matching absolute value
//! `base^(-rank)`, kept as an exact `(base, rank)` pair.
//!
//! Naming follows the convention where `|.|_0` is the ordinary absolute
//! value on `Q` and `|.|_inf` is the trivial valuation (the reverse of the
//! more common labelling).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rank of a valuation logarithm, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValRank {
    Finite { twice: i64 },
    Infinite,
}

impl ValRank {
    pub const INFINITY: ValRank = ValRank::Infinite;
    pub const ZERO: ValRank = ValRank::Finite { twice: 0 };

    pub fn int(n: i64) -> Self {
        ValRank::Finite { twice: 2 * n }
    }

    /// The rank `twice / 2`.
    pub fn from_twice(twice: i64) -> Self {
        ValRank::Finite { twice }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValRank::Infinite)
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, ValRank::Finite { twice } if twice % 2 == 0)
    }

    pub fn twice(&self) -> Option<i64> {
        match self {
            ValRank::Finite { twice } => Some(*twice),
            ValRank::Infinite => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            ValRank::Finite { twice } if twice % 2 == 0 => Some(twice / 2),
            _ => None,
        }
    }

    /// `self / 2`, defined when `self` is an integer or infinite.
    pub fn halve(self) -> Option<ValRank> {
        match self {
            ValRank::Infinite => Some(ValRank::Infinite),
            ValRank::Finite { twice } if twice % 2 == 0 => Some(ValRank::Finite { twice: twice / 2 }),
            ValRank::Finite { .. } => None,
        }
    }

    /// `2 * self`, always an integer rank.
    pub fn double(self) -> ValRank {
        match self {
            ValRank::Infinite => ValRank::Infinite,
            ValRank::Finite { twice } => ValRank::Finite { twice: 2 * twice },
        }
    }
}

impl Ord for ValRank {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValRank::Infinite, ValRank::Infinite) => Ordering::Equal,
            (ValRank::Infinite, _) => Ordering::Greater,
            (_, ValRank::Infinite) => Ordering::Less,
            (ValRank::Finite { twice: a }, ValRank::Finite { twice: b }) => a.cmp(b),
        }
    }
}

impl PartialOrd for ValRank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ValRank {
    type Output = ValRank;

    fn add(self, rhs: ValRank) -> ValRank {
        match (self, rhs) {
            (ValRank::Finite { twice: a }, ValRank::Finite { twice: b }) => ValRank::Finite {
                twice: a.checked_add(b).expect("value rank overflow"),
            },
            _ => ValRank::Infinite,
        }
    }
}

impl Neg for ValRank {
    type Output = ValRank;

    /// Panics on `+inf`, which has no negative in the rank group.
    fn neg(self) -> ValRank {
        match self {
            ValRank::Finite { twice } => ValRank::Finite { twice: -twice },
            ValRank::Infinite => panic!("cannot negate an infinite value rank"),
        }
    }
}

impl fmt::Display for ValRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValRank::Infinite => write!(f, "+inf"),
            ValRank::Finite { twice } if twice % 2 == 0 => write!(f, "{}", twice / 2),
            ValRank::Finite { twice } => write!(f, "{}/2", twice),
        }
    }
}

/// The absolute value `base^(-exponent)`; zero exactly when the exponent is
/// infinite. Never stored as a float.
#[derive(Clone, Copy, Debug)]
pub struct AbsValue {
    base: u64,
    exponent: ValRank,
}

impl AbsValue {
    pub fn new(base: u64, exponent: ValRank) -> Result<Self> {
        if base <= 1 {
            return Err(Error::InvalidRadix(base));
        }
        Ok(AbsValue { base, exponent })
    }

    pub fn zero(base: u64) -> Self {
        AbsValue::new(base, ValRank::Infinite).expect("base must exceed 1")
    }

    pub fn one(base: u64) -> Self {
        AbsValue::new(base, ValRank::ZERO).expect("base must exceed 1")
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn exponent(&self) -> ValRank {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.exponent.is_infinite()
    }

    /// `|x|^2 = base^(-2 * exponent)` as an exact rational.
    pub fn squared(&self) -> BigRational {
        match self.exponent {
            ValRank::Infinite => BigRational::zero(),
            ValRank::Finite { twice } => rational_pow(self.base, -twice),
        }
    }

    /// The value itself when the exponent is an integer.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.exponent {
            ValRank::Infinite => Some(BigRational::zero()),
            ValRank::Finite { twice } if twice % 2 == 0 => Some(rational_pow(self.base, -twice / 2)),
            ValRank::Finite { .. } => None,
        }
    }

    /// Product of two absolute values over the same base.
    pub fn mul(&self, other: &AbsValue) -> Option<AbsValue> {
        if self.is_zero() || other.is_zero() {
            return Some(AbsValue::zero(self.base));
        }
        (self.base == other.base).then(|| AbsValue {
            base: self.base,
            exponent: self.exponent + other.exponent,
        })
    }

    /// Display-only floating rendering.
    pub fn approx(&self) -> f64 {
        match self.exponent {
            ValRank::Infinite => 0.0,
            ValRank::Finite { twice } => (self.base as f64).powf(-(twice as f64) / 2.0),
        }
    }
}

impl PartialEq for AbsValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AbsValue {}

impl Ord for AbsValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.base == other.base {
            return other.exponent.cmp(&self.exponent);
        }
        self.squared().cmp(&other.squared())
    }
}

impl PartialOrd for AbsValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            ValRank::Infinite => write!(f, "0"),
            ValRank::Finite { twice: 0 } => write!(f, "1"),
            ValRank::Finite { twice } if twice % 2 == 0 => write!(f, "{}^({})", self.base, -twice / 2),
            ValRank::Finite { twice } => write!(f, "{}^({}/2)", self.base, -twice),
        }
    }
}

fn rational_pow(base: u64, exp: i64) -> BigRational {
    let b = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(b)
    } else {
        BigRational::new(BigInt::one(), b)
    }
}

/// Anything that can be asked whether it is zero.
pub trait FieldElement {
    /// True for zero, including a zero known only to finite precision.
    fn is_zero(&self) -> bool;
}

/// Coefficient field for the extension and quaternion constructions.
pub trait Scalar: FieldElement + Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// True only for a zero that carries no precision loss.
    fn is_exact_zero(&self) -> bool;
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_sub(&self, rhs: &Self) -> Result<Self>;
    fn negate(&self) -> Self;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn try_inv(&self) -> Result<Self>;
    /// Multiplication by an exact rational constant.
    fn scale(&self, r: &BigRational) -> Result<Self>;
    /// The `p`-adic valuation logarithm.
    fn nu_at(&self, p: u32) -> Result<ValRank>;
}

impl FieldElement for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn negate(&self) -> Self {
        -self
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn scale(&self, r: &BigRational) -> Result<Self> {
        Ok(self * r)
    }

    fn nu_at(&self, p: u32) -> Result<ValRank> {
        Ok(rational_nu(self, p as u64))
    }
}

impl FieldElement for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

/// The trivial valuation: `0` at zero and `1` everywhere else.
///
/// It carries no base of its own; the result is expressed over base 2.
pub fn trivial_valuation<F: FieldElement + ?Sized>(x: &F) -> AbsValue {
    if x.is_zero() {
        AbsValue::zero(2)
    } else {
        AbsValue::one(2)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Splits `n = p^v * m` with `p` not dividing `m`. `n` must be nonzero.
pub fn split_prime_power(n: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

/// `nu_p` of a rational; `+inf` at zero.
pub fn rational_nu(q: &BigRational, p: u64) -> ValRank {
    if Zero::is_zero(q) {
        return ValRank::Infinite;
    }
    let (vn, _) = split_prime_power(q.numer(), p);
    let (vd, _) = split_prime_power(q.denom(), p);
    ValRank::int(vn - vd)
}

/// `|q|_p = p^(-nu_p(q))` as an exact pair.
pub fn rational_abs_p(q: &BigRational, p: u64) -> AbsValue {
    AbsValue::new(p, rational_nu(q, p)).expect("primes exceed 1")
}

/// `|q|_0 * |q|_inf * prod_{p <= prime_bound} |q|_p`, which is exactly 1
/// for every nonzero rational whose prime factors all lie below the bound.
///
/// Fails when `q = 0` or when a prime factor above the bound remains.
pub fn product_formula_residual(q: &BigRational, prime_bound: u64) -> Result<BigRational> {
    if Zero::is_zero(q) {
        return Err(Error::InvalidInput("the product formula needs q != 0".into()));
    }
    let mut product = q.abs();
    product *= trivial_valuation(q).to_rational().expect("trivial valuation is 0 or 1");
    let mut num = q.numer().abs();
    let mut den = q.denom().clone();
    for p in primes_up_to(prime_bound) {
        product *= rational_abs_p(q, p).to_rational().expect("integer exponent");
        if !num.is_one() {
            num = split_prime_power(&num, p).1;
        }
        if !den.is_one() {
            den = split_prime_power(&den, p).1;
        }
    }
    if !num.is_one() || !den.is_one() {
        return Err(Error::PrimeBoundTooSmall {
            bound: prime_bound,
            cofactor: BigRational::new(num, den).to_string(),
        });
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trivial_valuation_values() {
        assert!(trivial_valuation(&q(0, 1)).is_zero());
        assert_eq!(trivial_valuation(&q(1, 1)), AbsValue::one(2));
        assert_eq!(trivial_valuation(&q(7, 3)), AbsValue::one(7));
        let t = trivial_valuation(&q(7, 3));
        assert_eq!(trivial_valuation(&t.to_rational().unwrap()), t);
    }

    #[test]
    fn product_formula_examples() {
        assert_eq!(product_formula_residual(&q(1, 2), 3).unwrap(), q(1, 1));
        assert_eq!(product_formula_residual(&q(1, 1), 2).unwrap(), q(1, 1));
        assert_eq!(product_formula_residual(&q(50, 1), 7).unwrap(), q(1, 1));
        assert_eq!(product_formula_residual(&q(-50, 21), 7).unwrap(), q(1, 1));
    }

    #[test]
    fn product_formula_components() {
        // |50|_0 = 50, |50|_2 = 1/2, |50|_5 = 1/25
        assert_eq!(rational_abs_p(&q(50, 1), 2).to_rational().unwrap(), q(1, 2));
        assert_eq!(rational_abs_p(&q(50, 1), 5).to_rational().unwrap(), q(1, 25));
        assert_eq!(rational_abs_p(&q(1, 2), 2).to_rational().unwrap(), q(2, 1));
        assert_eq!(rational_abs_p(&q(1, 2), 3).to_rational().unwrap(), q(1, 1));
    }

    #[test]
    fn product_formula_bound_too_small() {
        let err = product_formula_residual(&q(22, 1), 7).unwrap_err();
        assert!(matches!(err, Error::PrimeBoundTooSmall { bound: 7, .. }));
        assert!(product_formula_residual(&q(0, 1), 7).is_err());
    }

    #[test]
    fn rank_arithmetic() {
        let h = ValRank::from_twice(1);
        assert_eq!(h + h, ValRank::int(1));
        assert_eq!(h + ValRank::INFINITY, ValRank::INFINITY);
        assert!(ValRank::int(100) < ValRank::INFINITY);
        assert_eq!(ValRank::int(3).halve(), Some(ValRank::from_twice(3)));
        assert_eq!(h.halve(), None);
        assert_eq!(h.to_string(), "1/2");
        assert_eq!(ValRank::from_twice(-3).to_string(), "-3/2");
    }

    #[test]
    fn rank_addition_exhaustive() {
        let mut ranks: Vec<ValRank> = (-6..=6).map(ValRank::from_twice).collect();
        ranks.push(ValRank::INFINITY);
        for &a in &ranks {
            for &b in &ranks {
                assert_eq!(a + b, b + a);
                for &c in &ranks {
                    assert_eq!((a + b) + c, a + (b + c));
                }
            }
            assert_eq!(a + ValRank::INFINITY, ValRank::INFINITY);
            assert_eq!(a + ValRank::ZERO, a);
        }
    }

    #[test]
    fn abs_value_rendering() {
        assert_eq!(AbsValue::zero(5).to_string(), "0");
        assert_eq!(AbsValue::one(5).to_string(), "1");
        assert_eq!(AbsValue::new(5, ValRank::int(2)).unwrap().to_string(), "5^(-2)");
        assert_eq!(AbsValue::new(5, ValRank::from_twice(1)).unwrap().to_string(), "5^(-1/2)");
        assert_eq!(AbsValue::new(5, ValRank::int(-1)).unwrap().to_string(), "5^(1)");
        assert!(AbsValue::new(1, ValRank::ZERO).is_err());
    }

    #[test]
    fn abs_value_ordering_across_bases() {
        let a = AbsValue::new(2, ValRank::int(2)).unwrap();
        let b = AbsValue::new(4, ValRank::int(1)).unwrap();
        assert_eq!(a, b);
        let c = AbsValue::new(5, ValRank::from_twice(1)).unwrap();
        assert!(c < AbsValue::one(3));
        assert!(AbsValue::zero(3) < c);
        assert_eq!(c.squared(), q(1, 5));
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(!is_prime(1) && !is_prime(91) && is_prime(97));
    }
}
