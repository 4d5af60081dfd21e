//! Seeded invariant suites behind `nonarch verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Report, EXIT_FAILED, EXIT_OK};
use crate::error::{Error, Result};
use crate::funcalg::{eval_poly, BallModel, FiniteFunction, Tau};
use crate::padic::Padic;
use crate::quadext::QuadField;
use crate::quaternion::{Quaternion, QuaternionAlgebra};
use crate::valcore::{is_prime, product_formula_residual, rational_nu, ValRank};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    StrongTriangle,
    MinFormula,
    Involution,
    Density,
    ProductFormula,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::StrongTriangle => "strong-triangle",
            Suite::MinFormula => "min-formula",
            Suite::Involution => "involution",
            Suite::Density => "density",
            Suite::ProductFormula => "product-formula",
        }
    }

    fn default_trials(self) -> u64 {
        match self {
            Suite::StrongTriangle | Suite::MinFormula => 10_000,
            Suite::ProductFormula => 1_000,
            Suite::Density => 20,
            Suite::Involution => 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub params: Vec<(String, String)>,
    pub checked: u64,
    pub failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("verify");
        r.kv("suite", self.suite.name());
        for (k, v) in &self.params {
            r.kv(k, v);
        }
        r.kv("checked", self.checked).kv("status", if self.passed() { "pass" } else { "fail" });
        match &self.failure {
            None => {
                r.line(format!("{}: {} checks passed", self.suite.name(), self.checked));
            }
            Some(w) => {
                r.kv("witness", w);
                r.line(format!("{}: failed after {} checks", self.suite.name(), self.checked));
                r.line(format!("witness: {w}"));
            }
        }
        r.code = if self.passed() { EXIT_OK } else { EXIT_FAILED };
        r
    }
}

struct Run {
    checked: u64,
    failure: Option<String>,
}

impl Run {
    fn new() -> Self {
        Run { checked: 0, failure: None }
    }

    /// Records one check; returns `false` once a failure is recorded.
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.failure = Some(witness());
        }
        ok
    }
}

pub fn run_suite(suite: Suite, seed: u64, trials: Option<u64>, p: u32, tau: Option<Tau>, n: u32) -> Result<SuiteOutcome> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidPrime(p as u64));
    }
    let trials = trials.unwrap_or(suite.default_trials());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = vec![("seed".to_string(), seed.to_string()), ("p".to_string(), p.to_string())];
    let mut run = Run::new();
    match suite {
        Suite::StrongTriangle => {
            params.push(("trials".into(), trials.to_string()));
            strong_triangle(&mut run, &mut rng, p, trials)?;
        }
        Suite::MinFormula => {
            let t = least_nonresidue(p)?;
            params.push(("s".into(), p.to_string()));
            params.push(("t".into(), t.to_string()));
            params.push(("trials".into(), trials.to_string()));
            min_formula(&mut run, &mut rng, p, t, trials)?;
        }
        Suite::Involution => {
            let taus = match tau {
                Some(t) => vec![t],
                None => vec![Tau::Tau1, Tau::Tau2],
            };
            let names: Vec<String> = taus.iter().map(Tau::to_string).collect();
            params.push(("tau".into(), names.join(",")));
            params.push(("N".into(), n.to_string()));
            let ball = unit_ball(p, n)?;
            involution(&mut run, &ball, &taus)?;
        }
        Suite::Density => {
            params.push(("N".into(), n.to_string()));
            params.push(("trials".into(), trials.to_string()));
            let ball = unit_ball(p, n)?;
            density(&mut run, &mut rng, &ball, trials)?;
        }
        Suite::ProductFormula => {
            params.push(("trials".into(), trials.to_string()));
            product_formula(&mut run, &mut rng, trials)?;
        }
    }
    Ok(SuiteOutcome { suite, params, checked: run.checked, failure: run.failure })
}

fn least_nonresidue(p: u32) -> Result<i64> {
    if p == 2 {
        return Err(Error::EvenPrime("no quaternion division algebra is modelled at p = 2".into()));
    }
    let p = p as u64;
    (2..p)
        .find(|&c| (1..p).all(|x| x * x % p != c))
        .map(|c| c as i64)
        .ok_or(Error::InvalidPrime(p))
}

/// `Q_p(sqrt t)` with `t` the least quadratic non-residue, cut at `p^N`.
fn unit_ball(p: u32, n: u32) -> Result<BallModel> {
    let t = least_nonresidue(p)?;
    BallModel::new(QuadField::from_int(p, t)?, n)
}

fn random_rational<R: Rng>(rng: &mut R, p: u32) -> (i64, i64) {
    let p = p as i64;
    let mut num: i64 = rng.gen_range(-5000..=5000);
    if num == 0 {
        num = 1;
    }
    let den: i64 = rng.gen_range(1..=5000);
    let e = rng.gen_range(0..4u32);
    if rng.gen_bool(0.5) {
        (num * p.pow(e), den)
    } else {
        (num, den * p.pow(e))
    }
}

fn strong_triangle<R: Rng>(run: &mut Run, rng: &mut R, p: u32, trials: u64) -> Result<()> {
    for _ in 0..trials {
        let (xn, xd) = random_rational(rng, p);
        let (yn, yd) = if rng.gen_bool(0.25) { (-xn, xd) } else { random_rational(rng, p) };
        let x = Padic::from_rational(xn, xd, p, 12)?;
        let y = Padic::from_rational(yn, yd, p, 12)?;
        let s = x.checked_add(&y)?;
        let exact = BigRational::new(xn.into(), xd.into()) + BigRational::new(yn.into(), yd.into());
        let bound = x.nu().min(y.nu());
        let got = s.nu();
        let want = rational_nu(&exact, p as u64);
        let consistent = if s.is_zero() {
            s.abs_precision().is_none_or(|ap| want >= ValRank::int(ap))
        } else {
            got == want
        };
        let ok = got >= bound && consistent;
        if !run.check(ok, || format!("x={xn}/{xd} y={yn}/{yd} nu(x+y)={got} min={bound} oracle={want}")) {
            break;
        }
    }
    Ok(())
}

fn random_padic<R: Rng>(rng: &mut R, p: u32, digits: u32) -> Result<Padic> {
    if rng.gen_ratio(1, 16) {
        return Padic::zero(p);
    }
    let v = rng.gen_range(0..4i64);
    let mut u: i64 = rng.gen_range(1..1_000_000);
    while u % p as i64 == 0 {
        u = rng.gen_range(1..1_000_000);
    }
    Ok(Padic::from_int(u, p, digits)?.shift(v))
}

fn min_formula<R: Rng>(run: &mut Run, rng: &mut R, p: u32, t: i64, trials: u64) -> Result<()> {
    let alg = QuaternionAlgebra::from_ints(p as i64, t, p)?;
    for _ in 0..trials {
        let q = Quaternion::new(
            random_padic(rng, p, 8)?,
            random_padic(rng, p, 8)?,
            random_padic(rng, p, 8)?,
            random_padic(rng, p, 8)?,
        );
        let lhs = alg.norm(&q)?.nu();
        let rhs = alg.norm_terms(&q)?.iter().map(Padic::nu).min().expect("four terms");
        if !run.check(lhs == rhs, || format!("q={} nu(N(q))={lhs} min={rhs}", alg.render(&q))) {
            break;
        }
    }
    Ok(())
}

fn involution(run: &mut Run, ball: &BallModel, taus: &[Tau]) -> Result<()> {
    for &tau in taus {
        for (i, x) in ball.points().iter().enumerate() {
            let back = ball.apply(tau, &ball.apply(tau, x)?)?;
            if !run.check(back == *x, || {
                let (a, b) = ball.coords(i);
                format!("{tau} o {tau} moves index {i} = ({a}, {b})")
            }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn density<R: Rng>(run: &mut Run, rng: &mut R, ball: &BallModel, trials: u64) -> Result<()> {
    let n = ball.precision() as i64;
    for trial in 0..trials {
        let f = FiniteFunction::random(ball, rng);
        let poly = ball.interpolate(&f)?;
        let rel = ball.precision() + poly.max_denominator_exponent();
        let mut bad = None;
        for i in 0..ball.len() {
            let y = eval_poly(ball.field(), &poly, &ball.exact_point(i, rel))?;
            let want = f.value(i);
            if !(y.a.eq_mod(&want.a, n)? && y.b.eq_mod(&want.b, n)?) {
                bad = Some(i);
                break;
            }
        }
        if !run.check(bad.is_none(), || format!("trial {trial}: interpolant misses index {}", bad.unwrap_or(0))) {
            break;
        }
    }
    Ok(())
}

fn product_formula<R: Rng>(run: &mut Run, rng: &mut R, trials: u64) -> Result<()> {
    const SMALL: [i64; 25] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
    for _ in 0..trials {
        let mut parts = [BigInt::one(), BigInt::one()];
        for part in parts.iter_mut() {
            for _ in 0..rng.gen_range(0..4) {
                *part *= SMALL[rng.gen_range(0..SMALL.len())];
            }
        }
        let [mut num, den] = parts;
        if rng.gen_bool(0.5) {
            num = -num;
        }
        let q = BigRational::new(num, den);
        let res = product_formula_residual(&q, 100)?;
        if !run.check(res.is_one(), || format!("q={q} residual={res}")) {
            break;
        }
    }
    Ok(())
}
