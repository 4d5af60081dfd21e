//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or runs over its time limit.

use std::collections::{BTreeSet, HashMap};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonarch::funcalg::{
    eval_poly, in_cx_tau, urysohn_separator, Automorphism, BallModel, FiniteFunction, LElem, PolynomialL, Tau,
};
use nonarch::padic::{sqrt_exists, NonSquareReason, SqrtOutcome};
use nonarch::quaternion::{division_evidence, verify_witness, Verdict, Witness};
use nonarch::valcore::product_formula_residual;
use nonarch::{LaurentSeries, Padic, QuadElement, QuadField, Quaternion, QuaternionAlgebra, ValRank};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Exponent of `p` in a nonzero rational, by trial division.
fn nu_q(q: &BigRational, p: u64) -> i64 {
    fn count(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.abs();
        let mut k = 0;
        loop {
            let (q, r) = n.div_rem(p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    }
    let p = BigInt::from(p);
    count(q.numer(), &p) - count(q.denom(), &p)
}

/// Random nonzero rational `±n/d * p^e`.
fn random_rational(rng: &mut ChaCha8Rng, p: i64, spread: i64) -> BigRational {
    let n: i64 = rng.gen_range(1..1_000_000) * if rng.gen_bool(0.5) { -1 } else { 1 };
    let d: i64 = rng.gen_range(1..1_000_000);
    let e = rng.gen_range(-spread..=spread);
    let pe = BigRational::from_integer(BigInt::from(p).pow(e.unsigned_abs() as u32));
    let q = rat(n, d);
    if e >= 0 {
        q * pe
    } else {
        q / pe
    }
}

fn padic(q: &BigRational, p: u32, digits: u32) -> Result<Padic, String> {
    e2s(Padic::from_bigrational(q, p, digits))
}

// ---------------------------------------------------------------------------

fn expansion_fidelity() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_nonarch"))
        .args(["expand", "1", "2", "--p", "5", "--digits", "10"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit status {}", out.status))?;
    let text = String::from_utf8_lossy(&out.stdout);
    let got = text
        .lines()
        .find_map(|l| l.strip_prefix("digit_list="))
        .ok_or("no digit_list line")?
        .to_string();
    // Oracle: the inverse of 2 modulo 5^10, written in base 5.
    let m = 5u64.pow(10);
    let mut x = m.div_ceil(2);
    let mut digits = Vec::new();
    for _ in 0..10 {
        digits.push((x % 5).to_string());
        x /= 5;
    }
    let want = digits.join(",");
    ensure(want == "3,2,2,2,2,2,2,2,2,2", || format!("oracle produced {want}"))?;
    ensure(got == want, || format!("digits {got}, expected {want}"))?;
    Ok(format!("digits {got}"))
}

fn sqrt_obstruction() -> Outcome {
    let two = e2s(Padic::from_int(2, 5, 6))?;
    match e2s(sqrt_exists(&two, 6))? {
        SqrtOutcome::NonSquare(NonSquareReason::NonResidue { residue: 2, squares }) => {
            ensure(squares == vec![1, 4], || format!("obstruction set {squares:?}"))?
        }
        other => return Err(format!("sqrt(2) in Q_5 gave {other:?}")),
    }
    let mut compared = 0;
    for p in [3u32, 5, 7] {
        let k_max = 6;
        // Squares modulo p^k, by enumeration.
        let square_sets: Vec<BTreeSet<u64>> = (1..=k_max)
            .map(|k| {
                let m = (p as u64).pow(k);
                (0..m).map(|x| x * x % m).collect()
            })
            .collect();
        for u in 1..100i64 {
            let oracle = square_sets.iter().enumerate().all(|(i, s)| {
                let m = (p as u64).pow(i as u32 + 1);
                s.contains(&(u as u64 % m))
            });
            let x = e2s(Padic::from_int(u, p, 12))?;
            let out = e2s(sqrt_exists(&x, k_max))?;
            ensure(out.is_square() == oracle, || format!("p={p} u={u}: library {out:?}, oracle {oracle}"))?;
            if let Some(w) = out.witness() {
                let sq = e2s(w.checked_mul(w))?;
                let prec = sq.abs_precision().unwrap_or(i64::MAX);
                ensure(prec >= k_max as i64, || format!("p={p} u={u}: root known to p^{prec} only"))?;
                ensure(e2s(sq.eq_mod(&x, k_max as i64))?, || format!("p={p} u={u}: root squares wrongly"))?;
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} residues agree with enumeration"))
}

/// Checks strong triangle, isosceles and multiplicativity on one pair.
fn axioms(vx: ValRank, vy: ValRank, vsum: ValRank, vprod: ValRank, what: &str) -> Result<(), String> {
    ensure(vsum >= vx.min(vy), || format!("{what}: strong triangle fails ({vsum} < min({vx}, {vy}))"))?;
    if vx != vy {
        ensure(vsum == vx.min(vy), || format!("{what}: isosceles case fails ({vsum} vs {vx}, {vy})"))?;
    }
    ensure(vprod == vx + vy, || format!("{what}: multiplicativity fails ({vprod} vs {vx} + {vy})"))
}

fn valuation_axioms() -> Outcome {
    const PAIRS: usize = 10_000;
    let mut r = rng(3);
    for p in [5u32, 3] {
        for i in 0..PAIRS {
            let qx = random_rational(&mut r, p as i64, 3);
            let qy = if i % 8 == 0 { -&qx * rat(1 + p as i64, 1) } else { random_rational(&mut r, p as i64, 3) };
            let (x, y) = (padic(&qx, p, 16)?, padic(&qy, p, 16)?);
            let s = e2s(x.checked_add(&y))?;
            let m = e2s(x.checked_mul(&y))?;
            axioms(x.nu(), y.nu(), s.nu(), m.nu(), &format!("Q_{p} x={qx} y={qy}"))?;
            // The computed valuations match exact rational arithmetic.
            let exact = &qx + &qy;
            if !s.is_zero() {
                ensure(s.nu() == ValRank::int(nu_q(&exact, p as u64)), || format!("Q_{p}: nu({exact})"))?;
            }
            ensure(m.nu() == ValRank::int(nu_q(&(&qx * &qy), p as u64)), || format!("Q_{p}: nu of product"))?;
        }
    }
    for _ in 0..PAIRS {
        let mut series = || -> Result<LaurentSeries, String> {
            let order = r.gen_range(-6..=6);
            let mut coeffs: Vec<u32> = (0..12).map(|_| r.gen_range(0..5)).collect();
            coeffs[0] = r.gen_range(1..5);
            e2s(LaurentSeries::from_coeffs(5, order, coeffs))
        };
        let (f, g) = (series()?, series()?);
        let s = e2s(f.checked_add(&g))?;
        let m = e2s(f.checked_mul(&g))?;
        axioms(f.order(), g.order(), s.order(), m.order(), &format!("F_5((T)) f={f} g={g}"))?;
    }
    let field = e2s(QuadField::from_int(5, 2))?;
    for _ in 0..PAIRS {
        let mut elem = || -> Result<LElem, String> {
            let a = random_rational(&mut r, 5, 3);
            let b = random_rational(&mut r, 5, 3);
            Ok(QuadElement::new(padic(&a, 5, 16)?, padic(&b, 5, 16)?))
        };
        let (x, y) = (elem()?, elem()?);
        let s = e2s(field.add(&x, &y))?;
        let m = e2s(field.mul(&x, &y))?;
        let w = |z: &LElem| e2s(field.omega(z));
        axioms(w(&x)?, w(&y)?, w(&s)?, w(&m)?, "Q_5(sqrt 2)")?;
    }
    let h = QuaternionAlgebra::h5();
    for _ in 0..PAIRS {
        let mut quat = || -> Result<Quaternion<Padic>, String> {
            let mut c = Vec::new();
            for _ in 0..4 {
                c.push(padic(&random_rational(&mut r, 5, 2), 5, 16)?);
            }
            let [a, b, cc, d]: [Padic; 4] = c.try_into().expect("four");
            Ok(Quaternion::new(a, b, cc, d))
        };
        let (x, y) = (quat()?, quat()?);
        let s = e2s(h.add(&x, &y))?;
        let m = e2s(h.mul(&x, &y))?;
        let v = |q: &Quaternion<Padic>| e2s(h.abs(q)).map(|a| a.exponent());
        axioms(v(&x)?, v(&y)?, v(&s)?, v(&m)?, "H_5")?;
    }
    Ok(format!("{PAIRS} pairs in each of Q_5, Q_3, F_5((T)), Q_5(sqrt 2), H_5"))
}

fn unramified_omega() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut r = rng(4);
    let field = e2s(QuadField::from_int(5, 2))?;
    for i in 0..SAMPLES {
        let a = if i % 10 == 0 { BigRational::zero() } else { random_rational(&mut r, 5, 4) };
        let b = if i % 10 == 5 { BigRational::zero() } else { random_rational(&mut r, 5, 4) };
        let x = QuadElement::new(padic(&a, 5, 16)?, padic(&b, 5, 16)?);
        let w = e2s(field.omega(&x))?;
        let norm = &a * &a - BigRational::from_integer(2.into()) * &b * &b;
        let twice = nu_q(&norm, 5);
        ensure(w.twice() == Some(twice), || format!("omega({a} + {b} sqrt2) = {w}, oracle {twice}/2"))?;
        ensure(w.as_integer().is_some(), || format!("omega({a} + {b} sqrt2) = {w} is not an integer"))?;
    }
    Ok(format!("{SAMPLES} samples, all integral"))
}

fn random_rat_quaternion(r: &mut ChaCha8Rng) -> Quaternion<BigRational> {
    let mut c = || rat(r.gen_range(-10_000..=10_000), r.gen_range(1..=500));
    Quaternion::new(c(), c(), c(), c())
}

fn h5_algebra() -> Outcome {
    let h = QuaternionAlgebra::h5();
    let one = BigRational::one();
    let q = Quaternion::new(one.clone(), one.clone(), one.clone(), one.clone());
    let qq = e2s(h.mul(&h.conj(&q), &q))?;
    let z = BigRational::zero();
    ensure(qq == Quaternion::new(rat(4, 1), z.clone(), z.clone(), z.clone()), || {
        format!("conj(q) q = {}", h.render(&qq))
    })?;
    ensure(e2s(h.norm(&q))? == rat(4, 1), || "N(1+i+j+k) != 4".into())?;
    let abs = e2s(h.abs(&q))?;
    ensure(abs.to_rational() == Some(BigRational::one()), || format!("|1+i+j+k| = {abs}"))?;

    let mut r = rng(5);
    for _ in 0..10_000 {
        let (x, y) = (random_rat_quaternion(&mut r), random_rat_quaternion(&mut r));
        let lhs = e2s(h.norm(&e2s(h.mul(&x, &y))?))?;
        let rhs = e2s(h.norm(&x))? * e2s(h.norm(&y))?;
        ensure(lhs == rhs, || format!("N(xy) != N(x)N(y) for {} and {}", h.render(&x), h.render(&y)))?;
    }

    for _ in 0..10_000 {
        let mut c = Vec::new();
        for _ in 0..4 {
            let q = if r.gen_ratio(1, 10) { BigRational::zero() } else { random_rational(&mut r, 5, 3) };
            c.push(q);
        }
        let terms = [
            &c[0] * &c[0],
            rat(5, 1) * &c[1] * &c[1],
            rat(2, 1) * &c[2] * &c[2],
            rat(10, 1) * &c[3] * &c[3],
        ];
        let want = terms.iter().filter(|t| !t.is_zero()).map(|t| nu_q(t, 5)).min();
        let pq = Quaternion::new(padic(&c[0], 5, 8)?, padic(&c[1], 5, 8)?, padic(&c[2], 5, 8)?, padic(&c[3], 5, 8)?);
        let got = e2s(h.norm(&pq))?.nu();
        let want = want.map_or(ValRank::INFINITY, ValRank::int);
        ensure(got == want, || format!("min-formula fails at {}", h.render(&pq)))?;
    }

    for pattern in 0..16u32 {
        for _ in 0..1_000 {
            let mut c = Vec::new();
            for bit in 0..4 {
                let parity = (pattern >> bit) & 1;
                let e = 2 * r.gen_range(-2..=2) + parity as i64;
                let mut u: i64 = r.gen_range(1..100_000);
                while u % 5 == 0 {
                    u = r.gen_range(1..100_000);
                }
                let pe = BigRational::from_integer(BigInt::from(5).pow(e.unsigned_abs() as u32));
                let q = if e >= 0 { rat(u, 1) * pe } else { rat(u, 1) / pe };
                c.push(q);
            }
            let q = Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone());
            let n = e2s(h.norm(&q))?;
            ensure(!n.is_zero(), || format!("nonzero {} has norm 0", h.render(&q)))?;
        }
    }
    Ok("N(1+i+j+k) = 4, |1+i+j+k| = 1, 10^4 products, 10^4 tuples, 16 x 10^3 parity samples".into())
}

fn division_criterion() -> Outcome {
    let ev = e2s(division_evidence(&rat(5, 1), &rat(2, 1), 5, 1000))?;
    ensure(ev.label() == "division (criterion)", || format!("(5,2/Q_5) gave {}", ev.label()))?;
    let ev = e2s(division_evidence(&rat(5, 1), &rat(4, 1), 5, 1000))?;
    ensure(ev.label() == "split (witness)", || format!("(5,4/Q_5) gave {}", ev.label()))?;
    let alg = e2s(QuaternionAlgebra::from_ints(5, 4, 5))?;
    let Verdict::Split { witness: Witness::Rational(w) } = &ev.verdict else {
        return Err(format!("(5,4/Q_5) witness is not rational: {:?}", ev.verdict));
    };
    ensure(!w.is_zero() && verify_witness(&alg, w), || format!("witness {} rejected", alg.render(w)))?;
    // Oracle: the witness times its conjugate is zero.
    let prod = e2s(alg.mul(w, &alg.conj(w)))?;
    ensure(prod.is_zero(), || format!("w conj(w) = {}", alg.render(&prod)))?;
    Ok(format!("(5,2) division, (5,4) split by {}", alg.render(w)))
}

fn involutions_and_membership() -> Outcome {
    let field = e2s(QuadField::from_int(5, 2))?;
    let ball = e2s(BallModel::new(field.clone(), 3))?;
    ensure(ball.len() == 15_625, || format!("{} points", ball.len()))?;
    for (i, x) in ball.points().iter().enumerate() {
        let t1 = ball.tau1(&ball.tau1(x));
        ensure(t1 == *x, || format!("tau1 o tau1 moves index {i}"))?;
        let t2 = e2s(ball.tau2(&e2s(ball.tau2(x))?))?;
        ensure(t2 == *x, || format!("tau2 o tau2 moves index {i}"))?;
    }
    let id = FiniteFunction::identity(&ball);
    let m = in_cx_tau(&ball, &id, Tau::Tau1, Automorphism::Conjugation);
    ensure(m.holds, || format!("identity fails tau1 membership: {:?}", m.violation))?;
    let m = in_cx_tau(&ball, &id, Tau::Tau2, Automorphism::Conjugation);
    let v = m.violation.ok_or("identity passes tau2 membership")?;
    ensure(ball.coords(v.index) == (1, 0), || format!("witness {:?}, expected x = 1", ball.coords(v.index)))?;
    for k in 1..=20 {
        let mono = e2s(PolynomialL::monomial(&field, k, 8))?;
        let m = in_cx_tau(&ball, &mono, Tau::Tau2, Automorphism::Conjugation);
        ensure(!m.holds, || format!("x^{k} passes tau2 membership"))?;
    }
    Ok("15625 points, witness x = 1, x^1..x^20 rejected".into())
}

/// Coset key of a representative modulo `p^r`.
fn coset_key(ball: &BallModel, i: usize, r: u32) -> (u64, u64) {
    let m = (ball.field().prime() as u64).pow(r);
    let (a, b) = ball.coords(i);
    (a % m, b % m)
}

fn urysohn_and_density() -> Outcome {
    let field = e2s(QuadField::from_int(5, 2))?;
    let ball = e2s(BallModel::new(field.clone(), 2))?;
    let mut r = rng(8);
    for trial in 0..100 {
        let x = r.gen_range(0..ball.len());
        let count = r.gen_range(1..=6);
        let ys: Vec<usize> = (0..count).map(|_| r.gen_range(0..ball.len())).filter(|&y| y != x).collect();
        let a = ball.point(r.gen_range(0..ball.len())).clone();
        let mut b = ball.point(r.gen_range(0..ball.len())).clone();
        while b == a {
            b = ball.point(r.gen_range(0..ball.len())).clone();
        }
        let sep = e2s(urysohn_separator(&ball, x, &ys, &a, &b))?;
        let f = &sep.function;
        ensure(*f.value(x) == a, || format!("trial {trial}: f(x) != a"))?;
        for &y in &ys {
            ensure(*f.value(y) == b, || format!("trial {trial}: f({y}) != b"))?;
        }
        let mut seen: HashMap<(u64, u64), &LElem> = HashMap::new();
        for i in 0..ball.len() {
            let v = f.value(i);
            let first = *seen.entry(coset_key(&ball, i, sep.radius)).or_insert(v);
            ensure(first == v, || format!("trial {trial}: not constant on the coset of {i} mod p^{}", sep.radius))?;
        }
    }

    let n = ball.precision() as i64;
    for trial in 0..100 {
        let f = FiniteFunction::random(&ball, &mut r);
        let poly = e2s(ball.interpolate(&f))?;
        ensure(poly.coeffs().len() < ball.len() + 1, || format!("trial {trial}: degree too large"))?;
        // Representatives as exact integers, with room for the denominators.
        let rel = ball.precision() + poly.max_denominator_exponent();
        for i in 0..ball.len() {
            let y = e2s(eval_poly(&field, &poly, &ball.exact_point(i, rel)))?;
            let want = f.value(i);
            let ok = e2s(y.a.eq_mod(&want.a, n))? && e2s(y.b.eq_mod(&want.b, n))?;
            ensure(ok, || format!("trial {trial}: interpolant misses representative {i}"))?;
        }
    }
    Ok("100 separators, 100 interpolants at N = 2".into())
}

fn product_formula() -> Outcome {
    const PRIMES: [u64; 25] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
    let mut r = rng(9);
    for _ in 0..1000 {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for _ in 0..r.gen_range(0..5) {
            num *= PRIMES[r.gen_range(0..PRIMES.len())];
        }
        for _ in 0..r.gen_range(0..5) {
            den *= PRIMES[r.gen_range(0..PRIMES.len())];
        }
        if r.gen_bool(0.5) {
            num = -num;
        }
        let q = BigRational::new(num, den);
        let res = e2s(product_formula_residual(&q, 100))?;
        ensure(res.is_one(), || format!("residual {res} for {q}"))?;
        // Oracle: |q| * prod_p p^(-nu_p(q)) over primes below 100.
        let mut oracle = q.abs();
        for &p in &PRIMES {
            let v = nu_q(&q, p);
            let pv = BigRational::from_integer(BigInt::from(p).pow(v.unsigned_abs() as u32));
            oracle = if v >= 0 { oracle / pv } else { oracle * pv };
        }
        ensure(oracle.is_one(), || format!("oracle residual {oracle} for {q}"))?;
    }
    Ok("1000 rationals".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("expansion fidelity", 1, expansion_fidelity),
        ("sqrt obstruction", 5, sqrt_obstruction),
        ("valuation axioms", 30, valuation_axioms),
        ("unramified omega", 10, unramified_omega),
        ("H5 algebra", 60, h5_algebra),
        ("division criterion", 5, division_criterion),
        ("involutions and membership", 30, involutions_and_membership),
        ("urysohn and density", 60, urysohn_and_density),
        ("product formula", 5, product_formula),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) if !over => println!("PASS {name} ({secs:.2} s, limit {limit} s): {detail}"),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2} s, limit {limit} s): over time limit; {detail}");
            }
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2} s, limit {limit} s): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
