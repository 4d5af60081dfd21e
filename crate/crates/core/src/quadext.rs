//! Unramified quadratic extensions `L = Q_p(sqrt u)`.
//!
//! Elements are pairs `(a, b)` meaning `a + b sqrt(u)` over any [`Scalar`]
//! coefficient type: [`Padic`] for genuine `L`, or exact rationals for desk
//! checks of identities. The [`QuadField`] context holds `(p, u)` and does all
//! the arithmetic.
//!
//! The valuation logarithm is `omega(x) = nu_p(x g(x)) / 2` where `g` is the
//! Galois conjugation `sqrt u -> -sqrt u`. For a unit non-square `u` the norm
//! `a^2 - u b^2` has valuation `2 min(nu(a), nu(b))`, so `omega` stays
//! integer-valued on `L^*`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{check_prime, sqrt_exists, Padic};
use crate::valcore::{rational_nu, AbsValue, Scalar, ValRank};

/// `a + b sqrt(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement<F> {
    pub a: F,
    pub b: F,
}

impl<F: Scalar> QuadElement<F> {
    pub fn new(a: F, b: F) -> Self {
        QuadElement { a, b }
    }

    /// `a + 0 sqrt(u)`.
    pub fn embed(a: F) -> Self {
        let b = a.zero_like();
        QuadElement { a, b }
    }

    /// True when both components are zero, possibly only to finite precision.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }
}

/// The context `(p, u)` of `Q_p(sqrt u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    p: u32,
    u: BigRational,
}

impl QuadField {
    /// Accepts odd primes `p` and units `u` that are not squares in `Q_p`.
    pub fn new(p: u32, u: BigRational) -> Result<Self> {
        check_prime(p)?;
        if p == 2 {
            return Err(Error::EvenPrime("only odd primes give the unramified construction".into()));
        }
        if u.is_zero() {
            return Err(Error::UnsupportedExtension("u must be nonzero".into()));
        }
        let v = rational_nu(&u, p as u64);
        if v != ValRank::ZERO {
            return Err(Error::UnsupportedExtension(format!(
                "u = {u} has {p}-adic valuation {v}; only unramified extensions by a unit are supported"
            )));
        }
        let u_p = Padic::from_bigrational(&u, p, 1)?;
        if sqrt_exists(&u_p, 1)?.is_square() {
            return Err(Error::UnsupportedExtension(format!("u = {u} is already a square in Q_{p}")));
        }
        Ok(QuadField { p, u })
    }

    pub fn from_int(p: u32, u: i64) -> Result<Self> {
        QuadField::new(p, BigRational::from_integer(u.into()))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    /// `sqrt(u)` with coefficients shaped like `template`.
    pub fn sqrt_u<F: Scalar>(&self, template: &F) -> QuadElement<F> {
        QuadElement { a: template.zero_like(), b: template.one_like() }
    }

    pub fn add<F: Scalar>(&self, x: &QuadElement<F>, y: &QuadElement<F>) -> Result<QuadElement<F>> {
        Ok(QuadElement { a: x.a.try_add(&y.a)?, b: x.b.try_add(&y.b)? })
    }

    pub fn sub<F: Scalar>(&self, x: &QuadElement<F>, y: &QuadElement<F>) -> Result<QuadElement<F>> {
        Ok(QuadElement { a: x.a.try_sub(&y.a)?, b: x.b.try_sub(&y.b)? })
    }

    pub fn neg<F: Scalar>(&self, x: &QuadElement<F>) -> QuadElement<F> {
        QuadElement { a: x.a.negate(), b: x.b.negate() }
    }

    /// `(a + b r)(c + d r) = (ac + u bd) + (ad + bc) r`.
    pub fn mul<F: Scalar>(&self, x: &QuadElement<F>, y: &QuadElement<F>) -> Result<QuadElement<F>> {
        let ac = x.a.try_mul(&y.a)?;
        let bd = x.b.try_mul(&y.b)?.scale(&self.u)?;
        let ad = x.a.try_mul(&y.b)?;
        let bc = x.b.try_mul(&y.a)?;
        Ok(QuadElement { a: ac.try_add(&bd)?, b: ad.try_add(&bc)? })
    }

    /// Multiplication by a base-field element.
    pub fn mul_base<F: Scalar>(&self, x: &QuadElement<F>, c: &F) -> Result<QuadElement<F>> {
        Ok(QuadElement { a: x.a.try_mul(c)?, b: x.b.try_mul(c)? })
    }

    /// The Galois conjugation `g`.
    pub fn conj<F: Scalar>(&self, x: &QuadElement<F>) -> QuadElement<F> {
        QuadElement { a: x.a.clone(), b: x.b.negate() }
    }

    /// `x g(x) = a^2 - u b^2`.
    pub fn norm<F: Scalar>(&self, x: &QuadElement<F>) -> Result<F> {
        let a2 = x.a.try_mul(&x.a)?;
        let ub2 = x.b.try_mul(&x.b)?.scale(&self.u)?;
        a2.try_sub(&ub2)
    }

    fn checked_norm<F: Scalar>(&self, x: &QuadElement<F>) -> Result<Option<F>> {
        let n = self.norm(x)?;
        if !n.is_zero() {
            return Ok(Some(n));
        }
        if x.is_zero() {
            return Ok(None);
        }
        Err(Error::InsufficientPrecision(format!(
            "the norm of {} vanishes to the known precision",
            self.render(x)
        )))
    }

    /// `g(x) / (x g(x))`.
    pub fn inv<F: Scalar>(&self, x: &QuadElement<F>) -> Result<QuadElement<F>> {
        let n = self.checked_norm(x)?.ok_or(Error::DivisionByZero)?;
        let n_inv = n.try_inv()?;
        self.mul_base(&self.conj(x), &n_inv)
    }

    pub fn div<F: Scalar>(&self, x: &QuadElement<F>, y: &QuadElement<F>) -> Result<QuadElement<F>> {
        self.mul(x, &self.inv(y)?)
    }

    pub fn pow<F: Scalar>(&self, x: &QuadElement<F>, e: u32) -> Result<QuadElement<F>> {
        let mut acc = QuadElement::embed(x.a.one_like());
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `omega(x) = nu_p(a^2 - u b^2) / 2`; `+inf` at zero.
    pub fn omega<F: Scalar>(&self, x: &QuadElement<F>) -> Result<ValRank> {
        let Some(n) = self.checked_norm(x)? else {
            return Ok(ValRank::INFINITY);
        };
        let v = n.nu_at(self.p)?;
        v.halve().ok_or_else(|| {
            Error::InsufficientPrecision(format!("norm valuation {v} is odd; leading digits are unreliable"))
        })
    }

    /// `|x|_L = p^(-omega(x))`.
    pub fn abs_l<F: Scalar>(&self, x: &QuadElement<F>) -> Result<AbsValue> {
        AbsValue::new(self.p as u64, self.omega(x)?)
    }

    /// `a + b*sqrt(u)` with componentwise rendering.
    pub fn render<F: Scalar>(&self, x: &QuadElement<F>) -> String {
        format!("{} + {}*sqrt({})", x.a, x.b, self.u)
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}(sqrt({}))", self.p, self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const DIGITS: u32 = 8;

    fn l5() -> QuadField {
        QuadField::from_int(5, 2).unwrap()
    }

    fn pa(n: i64, d: i64) -> Padic {
        if n == 0 {
            Padic::zero(5).unwrap()
        } else {
            Padic::from_rational(n, d, 5, DIGITS).unwrap()
        }
    }

    fn el(a: i64, b: i64) -> QuadElement<Padic> {
        QuadElement::new(pa(a, 1), pa(b, 1))
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn construction() {
        assert!(QuadField::from_int(5, 2).is_ok());
        assert!(QuadField::from_int(5, 3).is_ok());
        assert!(matches!(QuadField::from_int(5, 4), Err(Error::UnsupportedExtension(_))));
        assert!(matches!(QuadField::from_int(5, 5), Err(Error::UnsupportedExtension(_))));
        assert!(matches!(QuadField::from_int(5, 11), Err(Error::UnsupportedExtension(_))));
        assert!(matches!(QuadField::from_int(2, 3), Err(Error::EvenPrime(_))));
        assert!(matches!(QuadField::from_int(9, 2), Err(Error::InvalidPrime(9))));
    }

    #[test]
    fn ring_examples() {
        let l = l5();
        let r = el(0, 1);
        assert_eq!(l.mul(&r, &r).unwrap(), el(2, 0));
        assert_eq!(l.inv(&el(1, 0)).unwrap(), el(1, 0));
        let prod = l.mul(&el(1, 1), &el(1, -1)).unwrap();
        assert_eq!(prod.a, pa(-1, 1));
        assert!(prod.b.is_zero());

        let rq = QuadElement::new(q(1), q(1));
        let sq = QuadElement::new(q(1), q(-1));
        assert_eq!(l.mul(&rq, &sq).unwrap(), QuadElement::new(q(-1), q(0)));
        assert_eq!(l.inv(&QuadElement::new(q(0), q(0))), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        let l = l5();
        assert_eq!(l.conj(&el(3, 0)), el(3, 0));
        assert_eq!(l.conj(&el(0, 1)), el(0, -1));
        let x = el(7, -3);
        assert_eq!(l.conj(&l.conj(&x)), x);
    }

    #[test]
    fn omega_examples() {
        let l = l5();
        assert_eq!(l.omega(&el(0, 1)).unwrap(), ValRank::ZERO);
        assert_eq!(l.omega(&el(5, 0)).unwrap(), ValRank::int(1));
        assert_eq!(l.omega(&QuadElement::new(Padic::zero(5).unwrap(), Padic::zero(5).unwrap())).unwrap(), ValRank::INFINITY);
        assert_eq!(l.abs_l(&el(1, 0)).unwrap(), AbsValue::one(5));
        assert_eq!(l.abs_l(&el(0, 1)).unwrap(), AbsValue::one(5));
        let fifth = QuadElement::embed(pa(1, 5));
        assert_eq!(l.abs_l(&fifth).unwrap().to_string(), "5^(1)");
    }

    #[test]
    fn vanishing_norm_is_reported() {
        let l = l5();
        let x = QuadElement::new(Padic::zero_mod(5, 3).unwrap(), Padic::zero_mod(5, 2).unwrap());
        assert_eq!(l.omega(&x).unwrap(), ValRank::INFINITY);
        assert_eq!(l.inv(&x), Err(Error::DivisionByZero));
    }

    fn arb_el() -> impl Strategy<Value = QuadElement<Padic>> {
        (-3000i64..3000, -3000i64..3000, 0i64..3, 0i64..3)
            .prop_filter("nonzero", |(a, b, _, _)| *a != 0 || *b != 0)
            .prop_map(|(a, b, da, db)| QuadElement::new(pa(a, 5i64.pow(da as u32)), pa(b, 5i64.pow(db as u32))))
    }

    proptest! {
        #[test]
        fn g_is_an_isometric_automorphism(x in arb_el(), y in arb_el()) {
            let l = l5();
            let gx = l.conj(&x);
            let gy = l.conj(&y);
            prop_assert_eq!(l.conj(&l.add(&x, &y).unwrap()), l.add(&gx, &gy).unwrap());
            prop_assert_eq!(l.conj(&l.mul(&x, &y).unwrap()), l.mul(&gx, &gy).unwrap());
            prop_assert_eq!(l.omega(&gx).unwrap(), l.omega(&x).unwrap());
        }

        #[test]
        fn omega_is_integral_multiplicative_ultrametric(x in arb_el(), y in arb_el()) {
            let l = l5();
            let wx = l.omega(&x).unwrap();
            let wy = l.omega(&y).unwrap();
            prop_assert!(wx.is_integer());
            prop_assert_eq!(l.omega(&l.mul(&x, &y).unwrap()).unwrap(), wx + wy);
            let s = l.add(&x, &y).unwrap();
            if !s.is_zero() {
                let ws = l.omega(&s).unwrap();
                prop_assert!(ws >= wx.min(wy));
                if wx != wy {
                    prop_assert_eq!(ws, wx.min(wy));
                }
            }
        }

        #[test]
        fn prolongs_the_p_adic_valuation(a in 1i64..100_000) {
            let l = l5();
            let x = QuadElement::embed(pa(a, 1));
            prop_assert_eq!(l.abs_l(&x).unwrap(), x.a.abs_p());
        }

        #[test]
        fn inverse(x in arb_el()) {
            let l = l5();
            let prod = l.mul(&x, &l.inv(&x).unwrap()).unwrap();
            prop_assert!(prod.a.eq_mod(&pa(1, 1), 5).unwrap());
            prop_assert!(prod.b.is_zero());
        }
    }
}
