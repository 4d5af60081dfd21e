//! Quaternion algebras `(s, t / F)`.
//!
//! Basis `1, i, j, k` with `i^2 = s`, `j^2 = t`, `k = ij = -ji`, hence
//! `k^2 = -st`. The reduced norm is
//! `q conj(q) = a^2 - s b^2 - t c^2 + st d^2`.
//!
//! `H_5 = (5, 2 / Q_5)` is the running example; [`division_evidence`] gives a
//! three-valued verdict for general `(s, t)` over `Q_p`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::padic::{check_prime, sqrt_exists, Padic, SqrtOutcome};
use crate::valcore::{rational_nu, AbsValue, Scalar, ValRank};

/// `a + b i + c j + d k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Scalar> Quaternion<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        Quaternion { a, b, c, d }
    }

    /// `x + 0 i + 0 j + 0 k`.
    pub fn scalar(x: F) -> Self {
        let z = x.zero_like();
        Quaternion { a: x, b: z.clone(), c: z.clone(), d: z }
    }

    /// The basis element `e_idx` (`0..4` for `1, i, j, k`) shaped like `template`.
    pub fn basis(idx: usize, template: &F) -> Self {
        let (z, o) = (template.zero_like(), template.one_like());
        let mut parts = [z.clone(), z.clone(), z.clone(), z];
        parts[idx] = o;
        let [a, b, c, d] = parts;
        Quaternion { a, b, c, d }
    }

    pub fn coeffs(&self) -> [&F; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_zero())
    }
}

/// The context `(s, t)` over `Q_p` (or over `Q` in exact-rational mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    s: BigRational,
    t: BigRational,
    p: u32,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl QuaternionAlgebra {
    pub fn new(s: BigRational, t: BigRational, p: u32) -> Result<Self> {
        check_prime(p)?;
        if s.is_zero() || t.is_zero() {
            return Err(Error::InvalidInput("structure constants must be nonzero".into()));
        }
        Ok(QuaternionAlgebra { s, t, p })
    }

    pub fn from_ints(s: i64, t: i64, p: u32) -> Result<Self> {
        QuaternionAlgebra::new(int(s), int(t), p)
    }

    /// `H_5 = (5, 2 / Q_5)`.
    pub fn h5() -> Self {
        QuaternionAlgebra::from_ints(5, 2, 5).expect("valid constants")
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn add<F: Scalar>(&self, x: &Quaternion<F>, y: &Quaternion<F>) -> Result<Quaternion<F>> {
        Ok(Quaternion {
            a: x.a.try_add(&y.a)?,
            b: x.b.try_add(&y.b)?,
            c: x.c.try_add(&y.c)?,
            d: x.d.try_add(&y.d)?,
        })
    }

    pub fn neg<F: Scalar>(&self, x: &Quaternion<F>) -> Quaternion<F> {
        Quaternion { a: x.a.negate(), b: x.b.negate(), c: x.c.negate(), d: x.d.negate() }
    }

    pub fn sub<F: Scalar>(&self, x: &Quaternion<F>, y: &Quaternion<F>) -> Result<Quaternion<F>> {
        self.add(x, &self.neg(y))
    }

    pub fn scale<F: Scalar>(&self, x: &Quaternion<F>, r: &F) -> Result<Quaternion<F>> {
        Ok(Quaternion { a: x.a.try_mul(r)?, b: x.b.try_mul(r)?, c: x.c.try_mul(r)?, d: x.d.try_mul(r)? })
    }

    pub fn mul<F: Scalar>(&self, x: &Quaternion<F>, y: &Quaternion<F>) -> Result<Quaternion<F>> {
        let (s, t) = (&self.s, &self.t);
        let st = s * t;
        let m = |u: &F, v: &F| u.try_mul(v);
        let sum = |terms: [F; 4]| -> Result<F> {
            let [w, x, y, z] = terms;
            w.try_add(&x)?.try_add(&y)?.try_add(&z)
        };
        let a = sum([
            m(&x.a, &y.a)?,
            m(&x.b, &y.b)?.scale(s)?,
            m(&x.c, &y.c)?.scale(t)?,
            m(&x.d, &y.d)?.scale(&-&st)?,
        ])?;
        let b = sum([
            m(&x.a, &y.b)?,
            m(&x.b, &y.a)?,
            m(&x.c, &y.d)?.scale(&-t)?,
            m(&x.d, &y.c)?.scale(t)?,
        ])?;
        let c = sum([
            m(&x.a, &y.c)?,
            m(&x.c, &y.a)?,
            m(&x.b, &y.d)?.scale(s)?,
            m(&x.d, &y.b)?.scale(&-s)?,
        ])?;
        let d = sum([m(&x.a, &y.d)?, m(&x.d, &y.a)?, m(&x.b, &y.c)?, m(&x.c, &y.b)?.negate()])?;
        Ok(Quaternion { a, b, c, d })
    }

    pub fn conj<F: Scalar>(&self, x: &Quaternion<F>) -> Quaternion<F> {
        Quaternion { a: x.a.clone(), b: x.b.negate(), c: x.c.negate(), d: x.d.negate() }
    }

    /// `a^2 - s b^2 - t c^2 + st d^2`.
    pub fn norm<F: Scalar>(&self, x: &Quaternion<F>) -> Result<F> {
        let terms = self.norm_terms(x)?;
        let [w, y, z, v] = terms;
        w.try_add(&y)?.try_add(&z)?.try_add(&v)
    }

    /// The four diagonal summands `a^2, -s b^2, -t c^2, st d^2` of the norm form.
    pub fn norm_terms<F: Scalar>(&self, x: &Quaternion<F>) -> Result<[F; 4]> {
        let st = &self.s * &self.t;
        Ok([
            x.a.try_mul(&x.a)?,
            x.b.try_mul(&x.b)?.scale(&-&self.s)?,
            x.c.try_mul(&x.c)?.scale(&-&self.t)?,
            x.d.try_mul(&x.d)?.scale(&st)?,
        ])
    }

    fn checked_norm<F: Scalar>(&self, x: &Quaternion<F>) -> Result<F> {
        let n = self.norm(x)?;
        if n.is_zero() && !n.is_exact_zero() && !x.is_zero() {
            return Err(Error::InsufficientPrecision(format!(
                "the norm of {} vanishes to the known precision",
                self.render(x)
            )));
        }
        Ok(n)
    }

    /// `|q| = p^(-nu_p(N(q)) / 2)`, exactly, with half-integer exponents.
    pub fn abs<F: Scalar>(&self, x: &Quaternion<F>) -> Result<AbsValue> {
        let n = self.checked_norm(x)?;
        let v = n.nu_at(self.p)?;
        let half = match v {
            ValRank::Infinite => ValRank::Infinite,
            ValRank::Finite { twice } => ValRank::from_twice(twice / 2),
        };
        AbsValue::new(self.p as u64, half)
    }

    /// `conj(q) / N(q)`.
    pub fn inv<F: Scalar>(&self, x: &Quaternion<F>) -> Result<Quaternion<F>> {
        if x.is_zero() {
            return Err(Error::ZeroDivisor { witness: "zero has no inverse".into() });
        }
        let n = self.checked_norm(x)?;
        if n.is_zero() {
            return Err(Error::ZeroDivisor {
                witness: format!("{} has norm 0", self.render(x)),
            });
        }
        self.scale(&self.conj(x), &n.try_inv()?)
    }

    pub fn div<F: Scalar>(&self, x: &Quaternion<F>, y: &Quaternion<F>) -> Result<Quaternion<F>> {
        self.mul(x, &self.inv(y)?)
    }

    /// `a + b i + c j + d k`, omitting exact zero terms.
    pub fn render<F: Scalar>(&self, x: &Quaternion<F>) -> String {
        render_terms(x.coeffs().map(|c| (c.is_exact_zero(), c.to_string())))
    }
}

fn render_terms(coeffs: [(bool, String); 4]) -> String {
    let mut out = String::new();
    for ((zero, text), unit) in coeffs.into_iter().zip(["", "i", "j", "k"]) {
        if zero {
            continue;
        }
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        let body = match (unit, mag.as_str()) {
            ("", _) => mag,
            (_, "1") => unit.to_string(),
            _ => format!("{mag} {unit}"),
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} / Q_{})", self.s, self.t, self.p)
    }
}

/// A nonzero quaternion of norm zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Rational(Quaternion<BigRational>),
    /// Found over `Q_p`; its norm vanishes to the stated precision.
    Padic(Quaternion<Padic>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The constants match the sufficient criterion for a division algebra.
    Division { criterion: String },
    /// A zero divisor was found and its norm checked.
    Split { witness: Witness },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionEvidence {
    pub verdict: Verdict,
    pub transcript: Vec<String>,
}

impl DivisionEvidence {
    pub fn label(&self) -> &'static str {
        match self.verdict {
            Verdict::Division { .. } => "division (criterion)",
            Verdict::Split { .. } => "split (witness)",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

fn padic_of(q: &BigRational, p: u32, digits: u32) -> Result<Padic> {
    Padic::from_bigrational(q, p, digits)
}

/// Whether a unit `q` of `Q_p`, `p` odd, is a square.
fn is_unit_square(q: &BigRational, p: u32) -> Result<bool> {
    Ok(sqrt_exists(&padic_of(q, p, 1)?, 1)?.is_square())
}

/// Sufficient criterion: one constant is `p` times a unit square and the other
/// a unit non-square (in either order).
fn criterion(s: &BigRational, t: &BigRational, p: u32) -> Result<Option<String>> {
    if p == 2 {
        return Ok(None);
    }
    let pq = int(p as i64);
    for (x, y, xn, yn) in [(s, t, "s", "t"), (t, s, "t", "s")] {
        let unit = x / &pq;
        if rational_nu(&unit, p as u64) != ValRank::ZERO || !is_unit_square(&unit, p)? {
            continue;
        }
        if rational_nu(y, p as u64) == ValRank::ZERO && !is_unit_square(y, p)? {
            return Ok(Some(format!(
                "{xn} = {x} is {p} times a unit square and {yn} = {y} is a unit non-square in Q_{p}"
            )));
        }
    }
    Ok(None)
}

/// Decides whether `(s, t / Q_p)` is a division algebra where the evidence
/// allows it. Never errors on valid constants: a failed search is
/// [`Verdict::Inconclusive`].
pub fn division_evidence(s: &BigRational, t: &BigRational, p: u32, trials: u64) -> Result<DivisionEvidence> {
    let alg = QuaternionAlgebra::new(s.clone(), t.clone(), p)?;
    let mut transcript = Vec::new();
    let done = |verdict, transcript| Ok(DivisionEvidence { verdict, transcript });

    if let Some(c) = criterion(s, t, p)? {
        transcript.push(format!("criterion: {c}"));
        return done(Verdict::Division { criterion: c }, transcript);
    }
    transcript.push("criterion: not matched".into());

    let one = BigRational::one();
    let zero = BigRational::zero();
    let mut candidates: Vec<(String, Quaternion<BigRational>)> = Vec::new();
    if let Some(r) = rational_sqrt(s) {
        candidates.push((format!("s = ({r})^2"), Quaternion::new(r, one.clone(), zero.clone(), zero.clone())));
    }
    if let Some(r) = rational_sqrt(t) {
        candidates.push((format!("t = ({r})^2"), Quaternion::new(-r, zero.clone(), one.clone(), zero.clone())));
    }
    if let Some(r) = rational_sqrt(&(-s / t)) {
        candidates.push((format!("-s/t = ({r})^2"), Quaternion::new(zero.clone(), one.clone(), r, zero.clone())));
    }
    if let Some(r) = rational_sqrt(&(-(s * t))) {
        candidates.push((format!("-st = ({r})^2"), Quaternion::new(r, zero.clone(), zero.clone(), one.clone())));
    }
    for (why, q) in candidates {
        if alg.norm(&q)?.is_zero() {
            transcript.push(format!("square witness: {why} gives {} of norm 0", alg.render(&q)));
            return done(Verdict::Split { witness: Witness::Rational(q) }, transcript);
        }
    }
    transcript.push("square witnesses: none".into());

    // Integer tuples by increasing height.
    let mut tried = 0u64;
    'height: for h in 1i64.. {
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    for d in -h..=h {
                        if [a, b, c, d].iter().map(|x| x.abs()).max() != Some(h) {
                            continue;
                        }
                        if tried >= trials {
                            break 'height;
                        }
                        tried += 1;
                        let q = Quaternion::new(int(a), int(b), int(c), int(d));
                        if alg.norm(&q)?.is_zero() {
                            transcript.push(format!("integer search: {} has norm 0 after {tried} tuples", alg.render(&q)));
                            return done(Verdict::Split { witness: Witness::Rational(q) }, transcript);
                        }
                    }
                }
            }
        }
    }
    transcript.push(format!("integer search: no norm-zero tuple among {tried}"));

    if p != 2 {
        if let Some((why, q)) = padic_search(&alg, trials)? {
            transcript.push(why);
            return done(Verdict::Split { witness: Witness::Padic(q) }, transcript);
        }
        transcript.push("p-adic search: no square found".into());
    }
    done(Verdict::Inconclusive, transcript)
}

const WITNESS_DIGITS: u32 = 12;

/// Fixes three coordinates at small integers and solves the norm form for the
/// fourth by a `Q_p` square root.
fn padic_search(alg: &QuaternionAlgebra, trials: u64) -> Result<Option<(String, Quaternion<Padic>)>> {
    let p = alg.p;
    let coef = [int(1), -alg.s.clone(), -alg.t.clone(), &alg.s * &alg.t];
    let bound = 3i64;
    let mut tried = 0u64;
    for free in 0..4 {
        for x in -bound..=bound {
            for y in -bound..=bound {
                for z in -bound..=bound {
                    if tried >= trials {
                        return Ok(None);
                    }
                    tried += 1;
                    let fixed = [x, y, z];
                    let mut coords = [0i64; 4];
                    let mut it = fixed.iter();
                    for (slot, c) in coords.iter_mut().enumerate() {
                        if slot != free {
                            *c = *it.next().expect("three fixed coordinates");
                        }
                    }
                    let rest: BigRational = (0..4)
                        .filter(|&i| i != free)
                        .map(|i| &coef[i] * int(coords[i] * coords[i]))
                        .sum();
                    let target = -rest / &coef[free];
                    if target.is_zero() {
                        continue;
                    }
                    let t_p = padic_of(&target, p, WITNESS_DIGITS)?;
                    let SqrtOutcome::Square { witness } = sqrt_exists(&t_p, WITNESS_DIGITS)? else {
                        continue;
                    };
                    let lift = |i: usize| -> Result<Padic> {
                        if i == free {
                            Ok(witness.clone())
                        } else if coords[i] == 0 {
                            Padic::zero(p)
                        } else {
                            padic_of(&int(coords[i]), p, WITNESS_DIGITS)
                        }
                    };
                    let q = Quaternion::new(lift(0)?, lift(1)?, lift(2)?, lift(3)?);
                    let n = alg.norm(&q)?;
                    if n.is_zero() {
                        let why = format!(
                            "p-adic search: solving for coordinate {} gives {} of norm {}",
                            ["a", "b", "c", "d"][free],
                            alg.render(&q),
                            n
                        );
                        return Ok(Some((why, q)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Exact integer check that a rational witness has norm zero.
pub fn verify_witness(alg: &QuaternionAlgebra, q: &Quaternion<BigRational>) -> bool {
    !q.is_zero() && alg.norm(q).map(|n| n.is_zero()).unwrap_or(false)
}
