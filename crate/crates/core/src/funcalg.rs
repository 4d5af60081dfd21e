//! Finite models of the closed unit ball of `L = Q_p(sqrt u)` and of
//! function algebras on it.
//!
//! The model at precision `N` is `O_L / p^N`: the `p^(2N)` cosets
//! `a + b sqrt(u)` with `0 <= a, b < p^N`. Point `b p^N + a` is stored at
//! that index, so enumeration is lexicographic on the little-endian digit
//! vectors read from the most significant end, with `0` first and `1`
//! second.
//!
//! **Continuity in the model means local constancy at radius `p^-N`**: a
//! [`FiniteFunction`] assigns one value per coset and is therefore
//! continuous by construction. Coarser local constancy (radius `p^-r`,
//! `r < N`) is checked by [`is_locally_constant`].
//!
//! The involutions act on points of `L`, not on cosets:
//!
//! * `tau1` is the Galois conjugation, which maps representatives to
//!   representatives;
//! * `tau2(x) = p x` when `omega(x)` is even and `x / p` when odd. The image
//!   carries precision `N + 1` or `N - 1` accordingly, so `tau2(tau2(x))`
//!   returns `x` exactly.
//!
//! Functions are evaluated through [`BallFunction`]. A finite function can be
//! evaluated at a point known only modulo `p^M`, `M < N`, when it is constant
//! on that coarser coset.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};
use crate::padic::Padic;
use crate::quadext::{QuadElement, QuadField};
use crate::valcore::ValRank;

pub type LElem = QuadElement<Padic>;

/// Upper bound on `p^(2N)`.
pub const MAX_POINTS: u64 = 1 << 20;

fn nu_int(mut n: u64, p: u64, cap: u32) -> u32 {
    if n == 0 {
        return cap;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v.min(cap)
}

fn exact_int(n: i64, p: u32, rel: u32) -> Padic {
    if n == 0 {
        Padic::zero(p).expect("prime checked by the field")
    } else {
        Padic::from_int(n, p, rel).expect("prime checked by the field")
    }
}

/// Absolute precision of an element: the smaller of its components'.
fn elem_precision(x: &LElem) -> Option<i64> {
    match (x.a.abs_precision(), x.b.abs_precision()) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (m, n) => m.or(n),
    }
}

fn truncate_elem(x: &LElem, n: i64) -> Result<LElem> {
    if let Some(m) = elem_precision(x) {
        if m < n {
            return Err(Error::InsufficientPrecision(format!(
                "value known modulo p^{m}, the model needs p^{n}"
            )));
        }
    }
    Ok(QuadElement::new(x.a.truncate(n), x.b.truncate(n)))
}

fn agree(x: &LElem, y: &LElem) -> Result<bool> {
    let da = x.a.checked_sub(&y.a)?;
    let db = x.b.checked_sub(&y.b)?;
    Ok(da.is_zero() && db.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tau {
    /// Galois conjugation restricted to the ball.
    Tau1,
    /// Parity scaling by `p^(+-1)`.
    Tau2,
}

impl FromStr for Tau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tau> {
        match s {
            "tau1" => Ok(Tau::Tau1),
            "tau2" => Ok(Tau::Tau2),
            _ => Err(Error::InvalidInput(format!("unknown involution {s:?}; expected tau1 or tau2"))),
        }
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tau::Tau1 => "tau1",
            Tau::Tau2 => "tau2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Identity,
    Conjugation,
}

impl Automorphism {
    pub fn apply(self, field: &QuadField, x: &LElem) -> LElem {
        match self {
            Automorphism::Identity => x.clone(),
            Automorphism::Conjugation => field.conj(x),
        }
    }
}

/// The model `O_L / p^N`.
pub struct BallModel {
    field: QuadField,
    n: u32,
    modulus: u64,
    points: Vec<LElem>,
    omegas: Vec<ValRank>,
    tables: Mutex<Option<Arc<NewtonTables>>>,
}

impl fmt::Debug for BallModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BallModel").field("field", &self.field).field("n", &self.n).finish()
    }
}

impl BallModel {
    pub fn new(field: QuadField, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("model precision must be at least 1".into()));
        }
        let p = field.prime() as u64;
        let modulus = p
            .checked_pow(n)
            .filter(|m| m.checked_mul(*m).is_some_and(|c| c <= MAX_POINTS))
            .ok_or_else(|| Error::OutOfRange(format!("p^(2N) exceeds {MAX_POINTS} points")))?;
        let mut points = Vec::with_capacity((modulus * modulus) as usize);
        let mut omegas = Vec::with_capacity(points.capacity());
        for b in 0..modulus {
            for a in 0..modulus {
                let x = QuadElement::new(Self::coord(a, field.prime(), n), Self::coord(b, field.prime(), n));
                omegas.push(field.omega(&x)?);
                points.push(x);
            }
        }
        Ok(BallModel { field, n, modulus, points, omegas, tables: Mutex::new(None) })
    }

    fn coord(v: u64, p: u32, n: u32) -> Padic {
        if v == 0 {
            Padic::zero_mod(p, n as i64).expect("prime checked by the field")
        } else {
            Padic::from_int(v as i64, p, n).expect("prime checked by the field").truncate(n as i64)
        }
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    /// `p^N`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &LElem {
        &self.points[i]
    }

    pub fn points(&self) -> &[LElem] {
        &self.points
    }

    /// `omega` of the representative; `+inf` for the zero coset.
    pub fn omega(&self, i: usize) -> ValRank {
        self.omegas[i]
    }

    /// `(a, b)` with `0 <= a, b < p^N`.
    pub fn coords(&self, i: usize) -> (u64, u64) {
        (i as u64 % self.modulus, i as u64 / self.modulus)
    }

    pub fn index_from_coords(&self, a: u64, b: u64) -> usize {
        (b % self.modulus * self.modulus + a % self.modulus) as usize
    }

    /// `omega(x_i - x_j)` computed in the model; `N` when `i == j`.
    pub fn omega_between(&self, i: usize, j: usize) -> u32 {
        let m = self.modulus;
        let (a1, b1) = self.coords(i);
        let (a2, b2) = self.coords(j);
        let p = self.field.prime() as u64;
        let da = (a1 + m - a2) % m;
        let db = (b1 + m - b2) % m;
        nu_int(da, p, self.n).min(nu_int(db, p, self.n))
    }

    fn residue_of(&self, x: &Padic, k: u32) -> Result<u64> {
        if x.nu() < ValRank::ZERO {
            return Err(Error::OutOfRange(format!("{x} lies outside the closed unit ball")));
        }
        Ok(x.residue_mod(k)?.to_u64().expect("residue below p^N"))
    }

    /// Index of the coset containing `x`, which must be integral and known
    /// at least modulo `p^N`.
    pub fn index_of(&self, x: &LElem) -> Result<usize> {
        let a = self.residue_of(&x.a, self.n)?;
        let b = self.residue_of(&x.b, self.n)?;
        Ok(self.index_from_coords(a, b))
    }

    /// Indices of all representatives congruent to `x` modulo `p^k`.
    pub fn coset(&self, x: &LElem, k: u32) -> Result<Vec<usize>> {
        let k = k.min(self.n);
        let a = self.residue_of(&x.a, k)?;
        let b = self.residue_of(&x.b, k)?;
        let step = (self.field.prime() as u64).pow(k);
        let count = self.modulus / step;
        let mut out = Vec::with_capacity((count * count) as usize);
        for j in 0..count {
            for i in 0..count {
                out.push(self.index_from_coords(a + i * step, b + j * step));
            }
        }
        Ok(out)
    }

    /// The representative as an exact point with `rel` significant digits in
    /// each component.
    pub fn exact_point(&self, i: usize, rel: u32) -> LElem {
        let (a, b) = self.coords(i);
        let p = self.field.prime();
        QuadElement::new(exact_int(a as i64, p, rel), exact_int(b as i64, p, rel))
    }

    pub fn tau1(&self, x: &LElem) -> LElem {
        self.field.conj(x)
    }

    /// Fixes zero (including the zero coset).
    pub fn tau2(&self, x: &LElem) -> Result<LElem> {
        let w = self.field.omega(x)?;
        let e = match w.as_integer() {
            None => return Ok(x.clone()),
            Some(w) if w % 2 == 0 => 1,
            Some(_) => -1,
        };
        Ok(QuadElement::new(x.a.shift(e), x.b.shift(e)))
    }

    pub fn apply(&self, tau: Tau, x: &LElem) -> Result<LElem> {
        match tau {
            Tau::Tau1 => Ok(self.tau1(x)),
            Tau::Tau2 => self.tau2(x),
        }
    }

    /// Indices of the circle `C(n) = {omega = n}`. Needs `n < N`.
    pub fn circle(&self, n: u32) -> Result<Vec<usize>> {
        if n >= self.n {
            return Err(Error::OutOfRange(format!(
                "omega = {n} cannot be told apart from larger values at precision {}",
                self.n
            )));
        }
        let target = ValRank::int(n as i64);
        Ok((0..self.len()).filter(|&i| self.omegas[i] == target).collect())
    }

    /// Index of the zero coset.
    pub fn zero_index(&self) -> usize {
        0
    }

    /// A uniformly random representative.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.len())
    }

    fn newton_tables(&self, work: u32) -> Arc<NewtonTables> {
        let mut guard = self.tables.lock().expect("tables lock");
        match guard.as_ref() {
            Some(t) if t.work == work => t.clone(),
            _ => {
                let t = Arc::new(NewtonTables::new(self, work));
                *guard = Some(t.clone());
                t
            }
        }
    }

    /// Interpolating polynomial of `f` over all representatives.
    ///
    /// Nodes are taken in digit-reversed order, base `p^2`, which keeps the
    /// total precision loss of the divided differences at
    /// `sum_{m < p^(2N)} v_{p^2}(m)`. The working precision starts just above
    /// that and is raised on failure.
    pub fn interpolate(&self, f: &FiniteFunction) -> Result<PolynomialL> {
        if f.len() != self.len() {
            return Err(Error::InvalidInput("function does not belong to this model".into()));
        }
        let q = (self.field.prime() as u64).pow(2);
        let loss: u32 = (1..self.len() as u64).map(|m| nu_int(m, q, u32::MAX)).sum();
        let mut work = self.n + loss + 1;
        let mut last = String::new();
        for _ in 0..4 {
            let tables = self.newton_tables(work);
            match tables.interpolate(self, f).and_then(|poly| {
                self.check_interpolant(&poly)?;
                Ok(poly)
            }) {
                Ok(poly) => return Ok(poly),
                Err(Error::InsufficientPrecision(msg)) => last = msg,
                Err(e) => return Err(e),
            }
            work += self.n + loss;
        }
        Err(Error::PrecisionExhausted(format!("interpolation gave up at working precision {work}: {last}")))
    }

    /// Certifies the interpolant: with every coefficient known modulo `p^N`,
    /// its value at any integral point is too, and it matches the lifted data
    /// it was built from.
    fn check_interpolant(&self, poly: &PolynomialL) -> Result<()> {
        let n = self.n as i64;
        let known = poly.coeffs.iter().filter_map(elem_precision).chain(poly.tail_precision).min();
        match known {
            Some(m) if m < n => Err(Error::InsufficientPrecision(format!(
                "a coefficient is known modulo p^{m} only, the model needs p^{n}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Precomputed node order and inverse node differences.
struct NewtonTables {
    work: u32,
    order: Vec<usize>,
    nodes: Vec<LElem>,
    /// `inv_diffs[j - 1][i - j] = 1 / (x_i - x_{i-j})`.
    inv_diffs: Vec<Vec<LElem>>,
}

impl NewtonTables {
    fn new(ball: &BallModel, work: u32) -> Self {
        let p = ball.field.prime() as u64;
        let q = p * p;
        let order: Vec<usize> = (0..ball.len() as u64)
            .map(|mut m| {
                let (mut a, mut b, mut pk) = (0u64, 0u64, 1u64);
                while m > 0 {
                    let d = m % q;
                    a += (d % p) * pk;
                    b += (d / p) * pk;
                    pk *= p;
                    m /= q;
                }
                ball.index_from_coords(a, b)
            })
            .collect();
        let nodes: Vec<LElem> = order.iter().map(|&i| ball.exact_point(i, work)).collect();
        let coords: Vec<(i64, i64)> = order
            .iter()
            .map(|&i| {
                let (a, b) = ball.coords(i);
                (a as i64, b as i64)
            })
            .collect();
        let pr = ball.field.prime();
        let n = order.len();
        let inv_diffs = (1..n)
            .map(|j| {
                (j..n)
                    .map(|i| {
                        let d = QuadElement::new(
                            exact_int(coords[i].0 - coords[i - j].0, pr, work),
                            exact_int(coords[i].1 - coords[i - j].1, pr, work),
                        );
                        ball.field.inv(&d).expect("distinct nodes")
                    })
                    .collect()
            })
            .collect();
        NewtonTables { work, order, nodes, inv_diffs }
    }

    fn interpolate(&self, ball: &BallModel, f: &FiniteFunction) -> Result<PolynomialL> {
        let field = &ball.field;
        let work = self.work as i64;
        let lift = |x: &Padic| -> Result<Padic> {
            if x.is_zero() {
                Ok(Padic::zero(field.prime())?)
            } else {
                x.lift(work)
            }
        };
        let mut c: Vec<LElem> = self
            .order
            .iter()
            .map(|&i| {
                let v = f.value(i);
                Ok(QuadElement::new(lift(&v.a)?, lift(&v.b)?))
            })
            .collect::<Result<_>>()?;
        let n = c.len();
        for j in 1..n {
            let row = &self.inv_diffs[j - 1];
            for i in (j..n).rev() {
                let diff = field.sub(&c[i], &c[i - 1])?;
                c[i] = field.mul(&diff, &row[i - j])?;
            }
        }
        // Newton form to monomial form.
        let mut poly: Vec<LElem> = vec![c[n - 1].clone()];
        for k in (0..n - 1).rev() {
            let xk = &self.nodes[k];
            let top = poly[poly.len() - 1].clone();
            for i in (1..poly.len()).rev() {
                let t = field.mul(xk, &poly[i])?;
                poly[i] = field.sub(&poly[i - 1], &t)?;
            }
            let t = field.mul(xk, &poly[0])?;
            poly[0] = field.sub(&c[k], &t)?;
            poly.push(top);
        }
        Ok(PolynomialL::new(poly))
    }
}

/// Anything that can be evaluated at points of the ball.
pub trait BallFunction {
    fn eval_at(&self, ball: &BallModel, x: &LElem) -> Result<LElem>;
}

/// One value per representative, each known modulo `p^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunction {
    values: Vec<LElem>,
}

impl FiniteFunction {
    pub fn new(ball: &BallModel, values: Vec<LElem>) -> Result<Self> {
        if values.len() != ball.len() {
            return Err(Error::InvalidInput(format!(
                "{} values given for {} representatives",
                values.len(),
                ball.len()
            )));
        }
        let n = ball.precision() as i64;
        let values = values.iter().map(|v| truncate_elem(v, n)).collect::<Result<_>>()?;
        Ok(FiniteFunction { values })
    }

    pub fn from_fn(ball: &BallModel, mut f: impl FnMut(usize, &LElem) -> Result<LElem>) -> Result<Self> {
        let values = ball.points().iter().enumerate().map(|(i, x)| f(i, x)).collect::<Result<Vec<_>>>()?;
        FiniteFunction::new(ball, values)
    }

    pub fn constant(ball: &BallModel, c: &LElem) -> Result<Self> {
        FiniteFunction::from_fn(ball, |_, _| Ok(c.clone()))
    }

    pub fn identity(ball: &BallModel) -> Self {
        FiniteFunction { values: ball.points().to_vec() }
    }

    pub fn conjugation(ball: &BallModel) -> Self {
        FiniteFunction { values: ball.points().iter().map(|x| ball.tau1(x)).collect() }
    }

    /// `a` on the indices selected by `pred`, `b` elsewhere.
    pub fn indicator(ball: &BallModel, pred: impl Fn(usize) -> bool, a: &LElem, b: &LElem) -> Result<Self> {
        FiniteFunction::from_fn(ball, |i, _| Ok(if pred(i) { a.clone() } else { b.clone() }))
    }

    /// Values drawn uniformly from the representatives.
    pub fn random<R: Rng>(ball: &BallModel, rng: &mut R) -> Self {
        let values = (0..ball.len()).map(|_| ball.point(ball.random_point(rng)).clone()).collect();
        FiniteFunction { values }
    }

    /// Restriction of a polynomial, evaluated at the representatives as
    /// exact points.
    pub fn from_poly(ball: &BallModel, poly: &PolynomialL) -> Result<Self> {
        let rel = ball.precision() + poly.max_denominator_exponent() + 2;
        FiniteFunction::from_fn(ball, |i, _| poly.eval(ball.field(), &ball.exact_point(i, rel)))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> &LElem {
        &self.values[i]
    }

    pub fn values(&self) -> &[LElem] {
        &self.values
    }

    pub fn add(&self, ball: &BallModel, other: &Self) -> Result<Self> {
        let f = ball.field();
        FiniteFunction::from_fn(ball, |i, _| f.add(&self.values[i], &other.values[i]))
    }

    pub fn mul(&self, ball: &BallModel, other: &Self) -> Result<Self> {
        let f = ball.field();
        FiniteFunction::from_fn(ball, |i, _| f.mul(&self.values[i], &other.values[i]))
    }
}

impl BallFunction for FiniteFunction {
    fn eval_at(&self, ball: &BallModel, x: &LElem) -> Result<LElem> {
        let n = ball.precision() as i64;
        let known = elem_precision(x).unwrap_or(n);
        if known >= n {
            return Ok(self.values[ball.index_of(x)?].clone());
        }
        let coset = ball.coset(x, known.max(0) as u32)?;
        let first = &self.values[coset[0]];
        if coset.iter().all(|&i| &self.values[i] == first) {
            Ok(first.clone())
        } else {
            Err(Error::InsufficientPrecision(format!(
                "point known modulo p^{known} only and the function is not constant on that coset"
            )))
        }
    }
}

/// A polynomial over `L`, coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialL {
    coeffs: Vec<LElem>,
    f_rational: bool,
    /// Smallest absolute precision among trimmed trailing coefficients that
    /// were zero only to finite precision.
    tail_precision: Option<i64>,
}

impl PolynomialL {
    pub fn new(mut coeffs: Vec<LElem>) -> Self {
        let mut tail_precision: Option<i64> = None;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            let c = coeffs.pop().expect("nonempty");
            if let Some(m) = elem_precision(&c) {
                tail_precision = Some(tail_precision.map_or(m, |t| t.min(m)));
            }
        }
        let f_rational = coeffs.iter().all(|c| c.b.is_zero());
        PolynomialL { coeffs, f_rational, tail_precision }
    }

    /// Coefficients from `F`.
    pub fn from_base(coeffs: Vec<Padic>) -> Self {
        PolynomialL::new(coeffs.into_iter().map(QuadElement::embed).collect())
    }

    /// `x^k` with a unit coefficient known to `digits` digits.
    pub fn monomial(field: &QuadField, k: usize, digits: u32) -> Result<Self> {
        let p = field.prime();
        let mut coeffs = vec![QuadElement::embed(Padic::zero(p)?); k];
        coeffs.push(QuadElement::embed(Padic::from_int(1, p, digits)?));
        Ok(PolynomialL::new(coeffs))
    }

    pub fn coeffs(&self) -> &[LElem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `e` with a coefficient component of valuation `-e` (0 when
    /// all coefficients are integral).
    pub fn max_denominator_exponent(&self) -> u32 {
        self.coeffs
            .iter()
            .flat_map(|c| [c.a.valuation(), c.b.valuation()])
            .flatten()
            .map(|v| (-v).max(0) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn is_f_rational(&self) -> bool {
        self.f_rational
    }

    /// Horner evaluation. For integral `x` the trimmed tail contributes
    /// nothing below `p^tail_precision`, so the result is cut there.
    pub fn eval(&self, field: &QuadField, x: &LElem) -> Result<LElem> {
        let p = field.prime();
        let mut acc = match self.coeffs.last() {
            Some(c) => c.clone(),
            None => QuadElement::new(Padic::zero(p)?, Padic::zero(p)?),
        };
        for c in self.coeffs.iter().rev().skip(1) {
            acc = field.add(&field.mul(&acc, x)?, c)?;
        }
        Ok(match self.tail_precision {
            Some(m) => QuadElement::new(acc.a.truncate(m), acc.b.truncate(m)),
            None => acc,
        })
    }
}

impl BallFunction for PolynomialL {
    fn eval_at(&self, ball: &BallModel, x: &LElem) -> Result<LElem> {
        self.eval(ball.field(), x)
    }
}

/// `P(x)` by Horner's rule.
pub fn eval_poly(field: &QuadField, poly: &PolynomialL, x: &LElem) -> Result<LElem> {
    poly.eval(field, x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub x: LElem,
    pub tau_x: Option<LElem>,
    pub lhs: Option<LElem>,
    pub rhs: Option<LElem>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub holds: bool,
    pub checked: usize,
    pub violation: Option<Violation>,
}

/// Checks `f(tau(x)) = g(f(x))` at every representative, in model order,
/// stopping at the first violation. Each comparison is made to the smaller
/// precision of its two sides. A point where either side cannot be
/// evaluated counts as a violation.
pub fn in_cx_tau(ball: &BallModel, f: &dyn BallFunction, tau: Tau, g: Automorphism) -> Membership {
    for (i, x) in ball.points().iter().enumerate() {
        let fail = |tau_x, lhs, rhs, reason: String| Membership {
            holds: false,
            checked: i + 1,
            violation: Some(Violation { index: i, x: x.clone(), tau_x, lhs, rhs, reason }),
        };
        let tx = match ball.apply(tau, x) {
            Ok(t) => t,
            Err(e) => return fail(None, None, None, format!("{tau} undefined: {e}")),
        };
        let lhs = match f.eval_at(ball, &tx) {
            Ok(v) => v,
            Err(e) => return fail(Some(tx), None, None, format!("f({tau}(x)) undefined: {e}")),
        };
        let rhs = match f.eval_at(ball, x) {
            Ok(v) => g.apply(ball.field(), &v),
            Err(e) => return fail(Some(tx), Some(lhs), None, format!("f(x) undefined: {e}")),
        };
        match agree(&lhs, &rhs) {
            Ok(true) => {}
            Ok(false) => return fail(Some(tx), Some(lhs), Some(rhs), format!("f({tau}(x)) != g(f(x))")),
            Err(e) => return fail(Some(tx), Some(lhs), Some(rhs), e.to_string()),
        }
    }
    Membership { holds: true, checked: ball.len(), violation: None }
}

/// Output of [`urysohn_separator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub function: FiniteFunction,
    /// The function is `a` on `{z : omega(z - x) >= radius}` and `b` off it.
    pub radius: u32,
}

/// Indicator-style function of the largest clopen ball around `x` that
/// misses every `y` in `ys`.
pub fn urysohn_separator(ball: &BallModel, x: usize, ys: &[usize], a: &LElem, b: &LElem) -> Result<Separator> {
    if ys.contains(&x) {
        return Err(Error::InvalidInput("the point to isolate is among the points to exclude".into()));
    }
    if let Some(&y) = ys.iter().find(|&&y| y >= ball.len()) {
        return Err(Error::OutOfRange(format!("no representative with index {y}")));
    }
    let radius = ys.iter().map(|&y| ball.omega_between(x, y) + 1).max().unwrap_or(0);
    let function = FiniteFunction::indicator(ball, |z| ball.omega_between(x, z) >= radius, a, b)?;
    Ok(Separator { function, radius })
}

/// Whether `f` is constant on every ball `{omega(z - z0) >= radius}`.
pub fn is_locally_constant(ball: &BallModel, f: &FiniteFunction, radius: u32) -> bool {
    let step = (ball.field().prime() as u64).pow(radius.min(ball.precision()));
    let mut seen: HashMap<(u64, u64), &LElem> = HashMap::new();
    (0..ball.len()).all(|i| {
        let (a, b) = ball.coords(i);
        let v = f.value(i);
        *seen.entry((a % step, b % step)).or_insert(v) == v
    })
}

/// First pair of distinct representatives on which every function agrees.
pub fn separation_failure(ball: &BallModel, fns: &[&FiniteFunction]) -> Option<(usize, usize)> {
    let mut seen: HashMap<Vec<&LElem>, usize> = HashMap::new();
    for i in 0..ball.len() {
        let key: Vec<&LElem> = fns.iter().map(|f| f.value(i)).collect();
        if let Some(&j) = seen.get(&key) {
            return Some((j, i));
        }
        seen.insert(key, i);
    }
    None
}

pub fn separates_points(ball: &BallModel, fns: &[&FiniteFunction]) -> bool {
    separation_failure(ball, fns).is_none()
}

/// Number of distinct values of `f`.
pub fn image_size(f: &FiniteFunction) -> usize {
    f.values().iter().collect::<HashSet<_>>().len()
}
