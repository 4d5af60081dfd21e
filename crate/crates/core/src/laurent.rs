//! Truncated Laurent series over `F_p`.
//!
//! A nonzero series is `T^k (c_0 + c_1 T + ... + c_{n-1} T^{n-1})` with
//! `c_0 != 0`, known modulo `T^(k + n)`. Precision rules match
//! [`crate::padic`]: absolute for `add`, relative for `mul` and `inv`.
//!
//! Text form:
//!
//! ```text
//! series := "0" | term (" + " term)* " + O(T^" int ")" | "O(T^" int ")"
//! term   := c | c "·T" | c "·T^" int
//! ```
//!
//! with `c` in `1..p`; zero coefficients are omitted since the `O(T^M)`
//! tail carries the precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::padic::check_prime;
use crate::valcore::{AbsValue, FieldElement, ValRank};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    p: u32,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Zero { prec: Option<i64> },
    Nonzero { order: i64, coeffs: Vec<u32> },
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime.
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl LaurentSeries {
    pub fn zero(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(LaurentSeries { p, repr: Repr::Zero { prec: None } })
    }

    pub fn zero_mod(p: u32, prec: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(LaurentSeries { p, repr: Repr::Zero { prec: Some(prec) } })
    }

    /// `sum c T^k` over the given `(k, c)` terms, known modulo `T^prec`.
    /// Coefficients are reduced mod `p`; terms at or beyond `prec` vanish.
    pub fn from_terms(p: u32, terms: &[(i64, i64)], prec: i64) -> Result<Self> {
        check_prime(p)?;
        let lowest = terms.iter().map(|t| t.0).min().unwrap_or(prec).min(prec);
        let mut coeffs = vec![0u32; (prec - lowest) as usize];
        for &(k, c) in terms {
            if k < prec {
                let slot = &mut coeffs[(k - lowest) as usize];
                *slot = ((*slot as i64 + c).rem_euclid(p as i64)) as u32;
            }
        }
        Ok(LaurentSeries::normalize(p, lowest, coeffs))
    }

    /// `T^order (c_0 + c_1 T + ...)` with `c_0 != 0`.
    pub fn from_coeffs(p: u32, order: i64, coeffs: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(format!("coefficients must be reduced mod {p}")));
        }
        match coeffs.first() {
            None | Some(0) => Err(Error::InvalidInput("leading coefficient must be nonzero".into())),
            Some(_) => Ok(LaurentSeries { p, repr: Repr::Nonzero { order, coeffs } }),
        }
    }

    /// `T^k` with `rel` known terms.
    pub fn monomial(p: u32, k: i64, rel: u32) -> Result<Self> {
        LaurentSeries::from_terms(p, &[(k, 1)], k + rel as i64)
    }

    fn normalize(p: u32, lowest: i64, mut coeffs: Vec<u32>) -> Self {
        let prec = lowest + coeffs.len() as i64;
        match coeffs.iter().position(|&c| c != 0) {
            None => LaurentSeries { p, repr: Repr::Zero { prec: Some(prec) } },
            Some(s) => {
                coeffs.drain(..s);
                LaurentSeries { p, repr: Repr::Nonzero { order: lowest + s as i64, coeffs } }
            }
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Zero { prec: None })
    }

    /// Minimum degree with a nonzero coefficient; `+inf` for zero.
    pub fn order(&self) -> ValRank {
        match self.repr {
            Repr::Zero { .. } => ValRank::Infinite,
            Repr::Nonzero { order, .. } => ValRank::int(order),
        }
    }

    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { prec } => *prec,
            Repr::Nonzero { order, coeffs } => Some(order + coeffs.len() as i64),
        }
    }

    /// Coefficient of `T^k`; `None` beyond the known precision.
    pub fn coeff(&self, k: i64) -> Option<u32> {
        if self.abs_precision().is_some_and(|m| k >= m) {
            return None;
        }
        match &self.repr {
            Repr::Zero { .. } => Some(0),
            Repr::Nonzero { order, coeffs } => {
                Some(if k < *order { 0 } else { coeffs[(k - order) as usize] })
            }
        }
    }

    /// `|f|_T = r^(-order(f))`.
    pub fn val_t(&self, radix: u64) -> Result<AbsValue> {
        AbsValue::new(radix, self.order())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MixedPrimes(self.p, other.p))
        }
    }

    fn floor_exponent(&self) -> i64 {
        match &self.repr {
            Repr::Zero { prec } => prec.expect("exact zeros are handled before alignment"),
            Repr::Nonzero { order, .. } => *order,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_exact() {
            return Ok(other.clone());
        }
        if other.is_exact() {
            return Ok(self.clone());
        }
        let m = self.abs_precision().unwrap().min(other.abs_precision().unwrap());
        let e = self.floor_exponent().min(other.floor_exponent());
        if e >= m {
            return Ok(LaurentSeries { p: self.p, repr: Repr::Zero { prec: Some(m) } });
        }
        let mut acc = vec![0u32; (m - e) as usize];
        for s in [self, other] {
            if let Repr::Nonzero { order, coeffs } = &s.repr {
                for (i, &c) in coeffs.iter().enumerate() {
                    let k = order + i as i64;
                    if k < m {
                        let slot = &mut acc[(k - e) as usize];
                        *slot = (*slot + c) % self.p;
                    }
                }
            }
        }
        Ok(LaurentSeries::normalize(self.p, e, acc))
    }

    pub fn negate(&self) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Nonzero { order, coeffs } => LaurentSeries {
                p: self.p,
                repr: Repr::Nonzero {
                    order: *order,
                    coeffs: coeffs.iter().map(|&c| (self.p - c) % self.p).collect(),
                },
            },
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.negate())
    }

    /// Cauchy product, truncated to the smaller relative precision.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.p;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Zero { prec: None }, _) | (_, Repr::Zero { prec: None }) => Repr::Zero { prec: None },
            (Repr::Zero { prec: Some(a) }, Repr::Zero { prec: Some(b) }) => Repr::Zero { prec: Some(a + b) },
            (Repr::Zero { prec: Some(a) }, Repr::Nonzero { order, .. })
            | (Repr::Nonzero { order, .. }, Repr::Zero { prec: Some(a) }) => Repr::Zero { prec: Some(a + order) },
            (Repr::Nonzero { order: o1, coeffs: a }, Repr::Nonzero { order: o2, coeffs: b }) => {
                let n = a.len().min(b.len());
                let mut c = vec![0u64; n];
                for i in 0..n {
                    for j in 0..n - i {
                        c[i + j] = (c[i + j] + a[i] as u64 * b[j] as u64) % p as u64;
                    }
                }
                Repr::Nonzero { order: o1 + o2, coeffs: c.into_iter().map(|x| x as u32).collect() }
            }
        };
        Ok(LaurentSeries { p, repr })
    }

    pub fn inv(&self) -> Result<Self> {
        let Repr::Nonzero { order, coeffs } = &self.repr else {
            return Err(Error::DivisionByZero);
        };
        let p = self.p as u64;
        let n = coeffs.len();
        let a0_inv = inv_mod(coeffs[0], self.p) as u64;
        let mut b = vec![0u64; n];
        b[0] = a0_inv;
        for i in 1..n {
            let s = (1..=i).fold(0u64, |s, j| (s + coeffs[j] as u64 * b[i - j]) % p);
            b[i] = (p - s) % p * a0_inv % p;
        }
        Ok(LaurentSeries {
            p: self.p,
            repr: Repr::Nonzero { order: -order, coeffs: b.into_iter().map(|x| x as u32).collect() },
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn parse(s: &str, p: u32) -> Result<Self> {
        check_prime(p)?;
        let s = s.trim();
        if s == "0" {
            return LaurentSeries::zero(p);
        }
        let mut terms = Vec::new();
        let mut prec = None;
        let mut pos = 0usize;
        for raw in s.split(" + ") {
            let t = raw.trim();
            let err = |msg: &str| Error::Parse { pos, msg: format!("{msg} in term {t:?}") };
            if prec.is_some() {
                return Err(err("nothing may follow the O(T^M) term"));
            }
            if let Some(m) = t.strip_prefix("O(T^").and_then(|r| r.strip_suffix(')')) {
                prec = Some(m.trim().parse::<i64>().map_err(|_| err("bad precision"))?);
            } else {
                let (c, power) = match t.split_once('·') {
                    Some((c, rest)) => (c.trim().parse::<i64>().map_err(|_| err("bad coefficient"))?, Some(rest)),
                    None if t.starts_with('T') => (1, Some(t)),
                    None => (t.parse::<i64>().map_err(|_| err("bad coefficient"))?, None),
                };
                let k = match power {
                    None => 0,
                    Some("T") => 1,
                    Some(rest) => rest
                        .strip_prefix("T^")
                        .and_then(|e| e.trim().parse::<i64>().ok())
                        .ok_or_else(|| err("bad power of T"))?,
                };
                terms.push((k, c));
            }
            pos += raw.len() + 3;
        }
        let prec = prec.ok_or_else(|| Error::Parse { pos: s.len(), msg: "missing O(T^M) tail".into() })?;
        LaurentSeries::from_terms(p, &terms, prec)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { prec: None } => write!(f, "0"),
            Repr::Zero { prec: Some(m) } => write!(f, "O(T^{m})"),
            Repr::Nonzero { order, coeffs } => {
                for (i, &c) in coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
                    match order + i as i64 {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "{c}·T")?,
                        k => write!(f, "{c}·T^{k}")?,
                    }
                    f.write_str(" + ")?;
                }
                write!(f, "O(T^{})", order + coeffs.len() as i64)
            }
        }
    }
}

impl FieldElement for LaurentSeries {
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;

            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                self.$checked(rhs).expect(concat!("Laurent series ", stringify!($method)))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        self.negate()
    }
}
