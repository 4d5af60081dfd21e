//! Fixed-precision p-adic numbers.
//!
//! A nonzero [`Padic`] is `p^v * (d_0 + d_1 p + ... + d_{n-1} p^{n-1})` with
//! digits in `{0, ..., p-1}` and `d_0 != 0`, known modulo `p^(v + n)`. That
//! exponent `v + n` is the absolute precision. Zero is either exact (literal
//! zero) or known only modulo some `p^M`, which is what cancellation leaves
//! behind.
//!
//! Precision propagates conservatively:
//!
//! * `add`, `sub`, `neg` keep the smaller absolute precision of the inputs;
//! * `mul`, `inv`, `div` keep the smaller relative precision (digit count);
//! * nothing ever pads unknown digits with zeros, except [`Padic::lift`],
//!   which explicitly takes the canonical representative as an exact point.

mod period;
mod residue;
mod sqrt;
mod text;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::valcore::{is_prime, split_prime_power, AbsValue, FieldElement, Scalar, ValRank};

pub use period::{multiplicative_order, periodicity, Periodicity};
pub(crate) use residue::Residue;
pub use sqrt::{sqrt_exists, NonSquareReason, SqrtOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u32,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// `prec == None` is the exact zero.
    Zero { prec: Option<i64> },
    Unit { val: i64, rel: u32, unit: Residue },
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p as u64))
    }
}

/// `n mod p^k` for an integer prime to `p`, as a residue.
/// `n = p^v * u` with `p` not dividing `u`; `n` must be nonzero.
fn split_word(mut n: u64, p: u32) -> (i64, u64) {
    let mut v = 0;
    while n.is_multiple_of(p as u64) {
        n /= p as u64;
        v += 1;
    }
    (v, n)
}

/// `r = p^v * c` with `c` a unit, returned as `(v, c mod p^k)` for nonzero `r`.
fn rational_unit(r: &BigRational, p: u32, k: u32) -> (i64, Residue) {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_u64()) {
        let (vn, un) = split_word(n.unsigned_abs(), p);
        let (vd, ud) = split_word(d, p);
        let mut c = Residue::from_word(un, p, k);
        if n < 0 {
            c = c.neg(p, k);
        }
        if ud != 1 {
            c = c.mul(&Residue::from_word(ud, p, k).inv(p, k), p, k);
        }
        return (vn - vd, c);
    }
    let (vn, un) = split_prime_power(r.numer(), p as u64);
    let (vd, ud) = split_prime_power(r.denom(), p as u64);
    (vn - vd, int_residue(&un, p, k).mul(&int_residue(&ud, p, k).inv(p, k), p, k))
}

fn int_residue(n: &BigInt, p: u32, k: u32) -> Residue {
    let m = BigInt::from(residue::big_pow(p, k));
    let r = ((n % &m) + &m) % &m;
    Residue::from_big(&r.to_biguint().expect("nonnegative"), p, k)
}

impl Padic {
    /// The exact zero of `Q_p`.
    pub fn zero(p: u32) -> Result<Padic> {
        check_prime(p)?;
        Ok(Padic::exact_zero(p))
    }

    /// Zero known modulo `p^prec`.
    pub fn zero_mod(p: u32, prec: i64) -> Result<Padic> {
        check_prime(p)?;
        Ok(Padic { p, repr: Repr::Zero { prec: Some(prec) } })
    }

    pub(crate) fn exact_zero(p: u32) -> Padic {
        Padic { p, repr: Repr::Zero { prec: None } }
    }

    /// Expansion of `num / den` with `n_digits` significant digits.
    pub fn from_rational(num: i64, den: i64, p: u32, n_digits: u32) -> Result<Padic> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Padic::from_bigrational(&BigRational::new(num.into(), den.into()), p, n_digits)
    }

    pub fn from_int(n: i64, p: u32, n_digits: u32) -> Result<Padic> {
        Padic::from_rational(n, 1, p, n_digits)
    }

    pub fn from_bigrational(q: &BigRational, p: u32, n_digits: u32) -> Result<Padic> {
        check_prime(p)?;
        if n_digits == 0 {
            return Err(Error::OutOfRange("at least one digit is required".into()));
        }
        if Zero::is_zero(q) {
            return Ok(Padic::exact_zero(p));
        }
        let (vn, un) = split_prime_power(q.numer(), p as u64);
        let (vd, ud) = split_prime_power(q.denom(), p as u64);
        let num = int_residue(&un, p, n_digits);
        let den = int_residue(&ud, p, n_digits);
        Ok(Padic {
            p,
            repr: Repr::Unit { val: vn - vd, rel: n_digits, unit: num.mul(&den.inv(p, n_digits), p, n_digits) },
        })
    }

    /// Builds `p^val * sum digits[i] p^i` from little-endian digits with a
    /// nonzero leading digit.
    pub fn from_digits(p: u32, val: i64, digits: &[u32]) -> Result<Padic> {
        check_prime(p)?;
        if let Some(&d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::InvalidInput(format!("digit {d} is not below {p}")));
        }
        match digits.first() {
            None => Err(Error::InvalidInput("a nonzero expansion needs at least one digit".into())),
            Some(0) => Err(Error::InvalidInput("leading digit must be nonzero".into())),
            Some(_) => Ok(Padic {
                p,
                repr: Repr::Unit { val, rel: digits.len() as u32, unit: Residue::from_digits(digits, p) },
            }),
        }
    }

    /// Normalizes `p^e * r` where `r` is held modulo `p^k`.
    fn normalize(p: u32, e: i64, r: Residue, k: u32) -> Padic {
        if r.is_zero() {
            return Padic { p, repr: Repr::Zero { prec: Some(e + k as i64) } };
        }
        let (t, unit) = r.strip(p, k);
        Padic { p, repr: Repr::Unit { val: e + t as i64, rel: k - t, unit } }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Zero { prec: None })
    }

    /// `nu_p(x)`; `+inf` for zero, including a zero known only modulo `p^M`.
    pub fn nu(&self) -> ValRank {
        match self.repr {
            Repr::Zero { .. } => ValRank::Infinite,
            Repr::Unit { val, .. } => ValRank::int(val),
        }
    }

    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero { .. } => None,
            Repr::Unit { val, .. } => Some(val),
        }
    }

    /// `|x|_p = p^(-nu_p(x))`.
    pub fn abs_p(&self) -> AbsValue {
        AbsValue::new(self.p as u64, self.nu()).expect("primes exceed 1")
    }

    /// The `M` such that the value is known modulo `p^M`; `None` when exact.
    pub fn abs_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero { prec } => prec,
            Repr::Unit { val, rel, .. } => Some(val + rel as i64),
        }
    }

    /// Number of known significant digits.
    pub fn known_digits(&self) -> u32 {
        match self.repr {
            Repr::Zero { .. } => 0,
            Repr::Unit { rel, .. } => rel,
        }
    }

    /// Canonical little-endian digits of the unit part.
    pub fn digits(&self) -> Vec<u32> {
        match &self.repr {
            Repr::Zero { .. } => Vec::new(),
            Repr::Unit { rel, unit, .. } => unit.digits(self.p, *rel),
        }
    }

    fn check_same(&self, other: &Padic) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MixedPrimes(self.p, other.p))
        }
    }

    /// Exponent used when aligning operands for addition.
    fn floor_exponent(&self) -> i64 {
        match self.repr {
            Repr::Zero { prec } => prec.expect("exact zeros are handled before alignment"),
            Repr::Unit { val, .. } => val,
        }
    }

    /// The residue of `self / p^e` modulo `p^k`, where `e` is at most the
    /// floor exponent.
    fn aligned(&self, e: i64, k: u32) -> Residue {
        match &self.repr {
            Repr::Zero { .. } => Residue::zero(self.p, k),
            Repr::Unit { val, unit, .. } => unit.shl((val - e) as u32, self.p, k),
        }
    }

    pub fn checked_add(&self, other: &Padic) -> Result<Padic> {
        self.check_same(other)?;
        if self.is_exact() {
            return Ok(other.clone());
        }
        if other.is_exact() {
            return Ok(self.clone());
        }
        let p = self.p;
        let m = self.abs_precision().unwrap().min(other.abs_precision().unwrap());
        let e = self.floor_exponent().min(other.floor_exponent());
        if e >= m {
            return Ok(Padic { p, repr: Repr::Zero { prec: Some(m) } });
        }
        let k = (m - e) as u32;
        let sum = self.aligned(e, k).add(&other.aligned(e, k), p, k);
        Ok(Padic::normalize(p, e, sum, k))
    }

    pub fn checked_sub(&self, other: &Padic) -> Result<Padic> {
        self.checked_add(&other.negate())
    }

    pub fn negate(&self) -> Padic {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { val, rel, unit } => Padic {
                p: self.p,
                repr: Repr::Unit { val: *val, rel: *rel, unit: unit.neg(self.p, *rel) },
            },
        }
    }

    pub fn checked_mul(&self, other: &Padic) -> Result<Padic> {
        self.check_same(other)?;
        let p = self.p;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Zero { prec: None }, _) | (_, Repr::Zero { prec: None }) => Repr::Zero { prec: None },
            (Repr::Zero { prec: Some(a) }, Repr::Zero { prec: Some(b) }) => Repr::Zero { prec: Some(a + b) },
            (Repr::Zero { prec: Some(a) }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::Zero { prec: Some(a) }) => Repr::Zero { prec: Some(a + val) },
            (Repr::Unit { val: v1, rel: r1, unit: u1 }, Repr::Unit { val: v2, rel: r2, unit: u2 }) => {
                let rel = (*r1).min(*r2);
                Repr::Unit { val: v1 + v2, rel, unit: u1.mul(u2, p, rel) }
            }
        };
        Ok(Padic { p, repr })
    }

    pub fn inv(&self) -> Result<Padic> {
        match &self.repr {
            Repr::Zero { .. } => Err(Error::DivisionByZero),
            Repr::Unit { val, rel, unit } => Ok(Padic {
                p: self.p,
                repr: Repr::Unit { val: -val, rel: *rel, unit: unit.inv(self.p, *rel) },
            }),
        }
    }

    pub fn checked_div(&self, other: &Padic) -> Result<Padic> {
        self.check_same(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplication by an exact rational; relative precision is kept.
    pub fn scale(&self, r: &BigRational) -> Result<Padic> {
        let p = self.p;
        if Zero::is_zero(r) || self.is_exact() {
            return Ok(Padic::exact_zero(p));
        }
        let repr = match &self.repr {
            Repr::Zero { prec } => Repr::Zero { prec: prec.map(|m| m + rational_unit(r, p, 1).0) },
            Repr::Unit { val, rel, unit } => {
                let (shift, c) = rational_unit(r, p, *rel);
                Repr::Unit { val: val + shift, rel: *rel, unit: unit.mul(&c, p, *rel) }
            }
        };
        Ok(Padic { p, repr })
    }

    pub fn mul_int(&self, n: i64) -> Padic {
        self.scale(&BigRational::from_integer(n.into())).expect("same prime")
    }

    /// Multiplication by `p^e`; exact, shifts the valuation and precision.
    pub fn shift(&self, e: i64) -> Padic {
        let repr = match &self.repr {
            Repr::Zero { prec } => Repr::Zero { prec: prec.map(|m| m + e) },
            Repr::Unit { val, rel, unit } => Repr::Unit { val: val + e, rel: *rel, unit: unit.clone() },
        };
        Padic { p: self.p, repr }
    }

    pub fn pow(&self, mut e: u32) -> Padic {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same prime");
            }
            base = base.checked_mul(&base).expect("same prime");
            e >>= 1;
        }
        acc
    }

    /// Forgets everything beyond `p^abs_prec`. Never increases precision.
    pub fn truncate(&self, abs_prec: i64) -> Padic {
        let p = self.p;
        match &self.repr {
            Repr::Zero { prec } => Padic {
                p,
                repr: Repr::Zero { prec: Some(prec.map_or(abs_prec, |m| m.min(abs_prec))) },
            },
            Repr::Unit { val, rel, unit } => {
                if val + *rel as i64 <= abs_prec {
                    self.clone()
                } else if *val >= abs_prec {
                    Padic { p, repr: Repr::Zero { prec: Some(abs_prec) } }
                } else {
                    let k = (abs_prec - val) as u32;
                    Padic { p, repr: Repr::Unit { val: *val, rel: k, unit: unit.reduce(p, k) } }
                }
            }
        }
    }

    /// The canonical representative (the rational spelled by the known
    /// digits) re-expanded to absolute precision `abs_prec`.
    ///
    /// This deliberately treats the representative as an exact point; it is
    /// the one place where precision can grow.
    pub fn lift(&self, abs_prec: i64) -> Result<Padic> {
        match &self.repr {
            Repr::Zero { .. } => Ok(Padic { p: self.p, repr: Repr::Zero { prec: Some(abs_prec) } }),
            Repr::Unit { val, rel, unit } => {
                if abs_prec <= *val {
                    return Err(Error::OutOfRange(format!(
                        "cannot lift a value of valuation {val} to precision {abs_prec}"
                    )));
                }
                let k = (abs_prec - val) as u32;
                if k <= *rel {
                    return Ok(self.truncate(abs_prec));
                }
                Ok(Padic { p: self.p, repr: Repr::Unit { val: *val, rel: k, unit: unit.reduce(self.p, k) } })
            }
        }
    }

    /// `sum_{i<k} d_i p^(v+i)` as an exact rational.
    pub fn partial_sum(&self, k: u32) -> Result<BigRational> {
        if k > self.known_digits() {
            return Err(Error::OutOfRange(format!(
                "partial sum of {k} terms requested but only {} digits are known",
                self.known_digits()
            )));
        }
        let Repr::Unit { val, unit, .. } = &self.repr else {
            return Ok(BigRational::zero());
        };
        let truncated = unit.reduce(self.p, k).to_big();
        let pv = BigInt::from(residue::big_pow(self.p, val.unsigned_abs() as u32));
        let n = BigInt::from_biguint(Sign::Plus, truncated);
        Ok(if *val >= 0 {
            BigRational::from_integer(n * pv)
        } else {
            BigRational::new(n, pv)
        })
    }

    /// The rational spelled by all known digits.
    pub fn to_rational(&self) -> BigRational {
        self.partial_sum(self.known_digits()).expect("all known digits")
    }

    /// `x mod p^k` as an integer in `[0, p^k)`. Needs `x` integral and known
    /// at least modulo `p^k`.
    pub fn residue_mod(&self, k: u32) -> Result<BigUint> {
        let prec = self.abs_precision();
        if prec.is_some_and(|m| m < k as i64) {
            return Err(Error::InsufficientPrecision(format!(
                "value known modulo {}^{} only, {k} digits requested",
                self.p,
                prec.unwrap()
            )));
        }
        match &self.repr {
            Repr::Zero { .. } => Ok(BigUint::zero()),
            Repr::Unit { val, .. } if *val < 0 => {
                Err(Error::OutOfRange("value is not integral".into()))
            }
            Repr::Unit { val, unit, .. } => {
                let v = *val as u32;
                if v >= k {
                    return Ok(BigUint::zero());
                }
                Ok(unit.reduce(self.p, k - v).to_big() * residue::big_pow(self.p, v))
            }
        }
    }

    /// Whether `self == other` modulo `p^prec`; errors when either side is
    /// not known that far.
    pub fn eq_mod(&self, other: &Padic, prec: i64) -> Result<bool> {
        let d = self.checked_sub(other)?;
        if let Some(m) = d.abs_precision() {
            if m < prec {
                return Err(Error::InsufficientPrecision(format!(
                    "difference known modulo {}^{m} only, {prec} needed",
                    self.p
                )));
            }
        }
        Ok(d.nu() >= ValRank::int(prec))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }
}

impl FieldElement for Padic {
    fn is_zero(&self) -> bool {
        Padic::is_zero(self)
    }
}

impl Scalar for Padic {
    fn zero_like(&self) -> Self {
        Padic::exact_zero(self.p)
    }

    /// One with the same relative precision as `self` (or 20 digits when
    /// `self` is zero).
    fn one_like(&self) -> Self {
        let rel = match self.repr {
            Repr::Unit { rel, .. } => rel,
            Repr::Zero { .. } => 20,
        };
        Padic { p: self.p, repr: Repr::Unit { val: 0, rel, unit: Residue::from_word(1, self.p, rel) } }
    }

    fn is_exact_zero(&self) -> bool {
        self.is_exact()
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs)
    }

    fn negate(&self) -> Self {
        Padic::negate(self)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs)
    }

    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }

    fn scale(&self, r: &BigRational) -> Result<Self> {
        Padic::scale(self, r)
    }

    fn nu_at(&self, p: u32) -> Result<ValRank> {
        if p != self.p {
            return Err(Error::MixedPrimes(self.p, p));
        }
        Ok(self.nu())
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Padic> for &Padic {
            type Output = Padic;

            /// Panics when the primes differ; use the `checked_` form to
            /// get an error instead.
            fn $method(self, rhs: &Padic) -> Padic {
                self.$checked(rhs).expect(concat!("p-adic ", stringify!($method)))
            }
        }

        impl $trait<Padic> for Padic {
            type Output = Padic;

            fn $method(self, rhs: Padic) -> Padic {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Padic {
    type Output = Padic;

    fn neg(self) -> Padic {
        self.negate()
    }
}

impl Neg for Padic {
    type Output = Padic;

    fn neg(self) -> Padic {
        self.negate()
    }
}

/// `nu_p` of an integer given as `BigInt`, for oracle-style checks.
pub fn int_nu(n: &BigInt, p: u32) -> ValRank {
    if n.is_zero() {
        ValRank::Infinite
    } else {
        ValRank::int(split_prime_power(&n.abs(), p as u64).0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn half_in_q5() {
        let x = Padic::from_rational(1, 2, 5, 5).unwrap();
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.digits(), vec![3, 2, 2, 2, 2]);
        assert_eq!(x.abs_precision(), Some(5));
    }

    #[test]
    fn zero_and_minus_one() {
        let z = Padic::from_rational(0, 1, 5, 7).unwrap();
        assert!(z.is_zero() && z.is_exact());
        assert_eq!(z.nu(), ValRank::INFINITY);
        let m = Padic::from_rational(-1, 1, 5, 4).unwrap();
        assert_eq!(m.digits(), vec![4, 4, 4, 4]);
        // oracle: 5^k - 1 == -1 mod 5^k
        for k in 1..=4u32 {
            assert_eq!(m.partial_sum(k).unwrap(), q(5i64.pow(k) - 1, 1));
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Padic::from_rational(1, 0, 5, 3), Err(Error::ZeroDenominator));
        assert_eq!(Padic::from_rational(1, 2, 6, 3), Err(Error::InvalidPrime(6)));
        assert!(Padic::from_rational(1, 2, 5, 0).is_err());
        assert!(Padic::from_digits(5, 0, &[0, 1]).is_err());
        assert!(Padic::from_digits(5, 0, &[5]).is_err());
    }

    #[test]
    fn field_op_examples() {
        let half = Padic::from_rational(1, 2, 5, 8).unwrap();
        let two = Padic::from_rational(2, 1, 5, 8).unwrap();
        let one = &half * &two;
        assert_eq!(one.digits(), vec![1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&half + &half, Padic::from_rational(1, 1, 5, 8).unwrap());
        let z = &half + &(-&half);
        assert!(z.is_zero() && !z.is_exact());
        assert_eq!(z.abs_precision(), Some(8));
    }

    #[test]
    fn cancellation_loses_digits() {
        let a = Padic::from_rational(1, 1, 5, 6).unwrap();
        let b = Padic::from_rational(26, 1, 5, 6).unwrap();
        let d = &b - &a;
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.abs_precision(), Some(6));
        assert_eq!(d.known_digits(), 4);
    }

    #[test]
    fn precision_propagation() {
        let a = Padic::from_rational(3, 1, 5, 4).unwrap();
        let b = Padic::from_rational(50, 1, 5, 6).unwrap();
        assert_eq!((&a + &b).abs_precision(), Some(4));
        let prod = &a * &b;
        assert_eq!(prod.valuation(), Some(2));
        assert_eq!(prod.known_digits(), 4);
        assert_eq!(b.inv().unwrap().valuation(), Some(-2));
        assert_eq!(b.inv().unwrap().known_digits(), 6);
    }

    #[test]
    fn mixed_primes_and_inverse_of_zero() {
        let a = Padic::from_rational(1, 1, 5, 3).unwrap();
        let b = Padic::from_rational(1, 1, 7, 3).unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::MixedPrimes(5, 7)));
        assert_eq!(a.checked_mul(&b), Err(Error::MixedPrimes(5, 7)));
        assert_eq!(Padic::zero(5).unwrap().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn nu_and_abs() {
        let x = Padic::from_rational(50, 1, 5, 3).unwrap();
        assert_eq!(x.nu(), ValRank::int(2));
        assert_eq!(x.abs_p().to_string(), "5^(-2)");
        assert_eq!(Padic::from_rational(1, 2, 5, 3).unwrap().abs_p(), AbsValue::one(5));
        assert!(Padic::zero(5).unwrap().abs_p().is_zero());
        assert_eq!(Padic::from_int(1, 5, 3).unwrap().nu(), ValRank::ZERO);
    }

    #[test]
    fn partial_sums() {
        let half = Padic::from_rational(1, 2, 5, 5).unwrap();
        assert_eq!(half.partial_sum(2).unwrap(), q(13, 1));
        assert_eq!(half.partial_sum(0).unwrap(), q(0, 1));
        assert!(half.partial_sum(6).is_err());
        let m = Padic::from_rational(-1, 1, 5, 4).unwrap();
        assert_eq!(m.partial_sum(3).unwrap(), q(124, 1));
        let x = Padic::from_rational(1, 10, 5, 3).unwrap();
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.partial_sum(1).unwrap(), q(3, 5));
    }

    #[test]
    fn truncate_and_lift() {
        let x = Padic::from_rational(1, 2, 5, 6).unwrap();
        let t = x.truncate(3);
        assert_eq!(t.digits(), vec![3, 2, 2]);
        assert_eq!(t.truncate(10), t);
        let l = t.lift(6).unwrap();
        assert_eq!(l.digits(), vec![3, 2, 2, 0, 0, 0]);
        assert_eq!(l.to_rational(), q(63, 1));
    }

    #[test]
    fn residue_and_congruence() {
        let x = Padic::from_rational(-1, 1, 5, 4).unwrap();
        assert_eq!(x.residue_mod(2).unwrap(), BigUint::from(24u32));
        assert!(x.residue_mod(5).is_err());
        let y = Padic::from_rational(24, 1, 5, 4).unwrap();
        assert!(x.eq_mod(&y, 2).unwrap());
        assert!(!x.eq_mod(&y, 3).unwrap());
        assert!(x.eq_mod(&y, 5).is_err());
    }

    #[test]
    fn scale_is_exact() {
        let x = Padic::from_rational(1, 2, 5, 4).unwrap();
        let y = x.scale(&q(10, 3)).unwrap();
        assert_eq!(y, Padic::from_rational(5, 3, 5, 4).unwrap());
        assert_eq!(x.shift(2).valuation(), Some(2));
        assert_eq!(x.mul_int(0), Padic::zero(5).unwrap());
    }

    #[test]
    fn p_equals_two_supported() {
        let x = Padic::from_rational(1, 3, 2, 8).unwrap();
        assert_eq!(x.digits(), vec![1, 1, 0, 1, 0, 1, 0, 1]);
        let y = &x * &Padic::from_int(3, 2, 8).unwrap();
        assert_eq!(y, Padic::from_int(1, 2, 8).unwrap());
    }

    #[test]
    fn big_precision_path() {
        let x = Padic::from_rational(1, 3, 5, 40).unwrap();
        let y = Padic::from_rational(3, 1, 5, 40).unwrap();
        assert_eq!(&x * &y, Padic::from_int(1, 5, 40).unwrap());
        let z = &x + &Padic::from_rational(-1, 3, 5, 40).unwrap();
        assert!(z.is_zero());
        assert_eq!(x.pow(3), Padic::from_rational(1, 27, 5, 40).unwrap());
    }
}
