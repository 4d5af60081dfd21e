//! Text reports behind the `nonarch` binary.
//!
//! Every report starts with a `key=value` block (one pair per line, the full
//! parameter set first), then a line `---`, then free text for humans. The
//! same flags and seed always give byte-identical output.
//!
//! Exit codes: `0` success, `1` a verification suite failed, `2` usage error
//! or invalid input.

mod calc;
mod verify;

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::funcalg::{in_cx_tau, Automorphism, BallModel, FiniteFunction, PolynomialL, Tau};
use crate::laurent::LaurentSeries;
use crate::padic::{periodicity, sqrt_exists, NonSquareReason, Padic, SqrtOutcome};
use crate::quadext::{QuadElement, QuadField};
use crate::quaternion::{division_evidence, QuaternionAlgebra, Verdict, Witness};
use crate::valcore::{product_formula_residual, rational_abs_p, rational_nu, trivial_valuation};

pub use verify::{run_suite, Suite, SuiteOutcome};

pub const DEFAULT_SEED: u64 = 0x6e6f_6e61_7263_6801;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nonarch", version, about = "Exact arithmetic over non-Archimedean fields and algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn rational_arg(s: &str) -> std::result::Result<BigRational, String> {
    s.trim().parse::<BigRational>().map_err(|e| format!("{s:?} is not a rational: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-adic expansion of NUM/DEN
    #[command(allow_negative_numbers = true)]
    Expand {
        num: i64,
        den: i64,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 10)]
        digits: u32,
    },
    /// p-adic valuation, absolute values and the product formula for NUM/DEN
    #[command(allow_negative_numbers = true)]
    Valuation {
        num: i64,
        #[arg(default_value_t = 1)]
        den: i64,
        #[arg(long)]
        p: u32,
        /// Largest prime in the product formula (default: max(|NUM|, |DEN|))
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Whether NUM/DEN is a square in Q_p, with a lifted root or the obstruction
    #[command(allow_negative_numbers = true)]
    Sqrt {
        num: i64,
        #[arg(default_value_t = 1)]
        den: i64,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
    /// Laurent series over F_p, e.g. "1 + 3·T + O(T^4)"
    Laurent {
        series: String,
        #[arg(long)]
        p: u32,
        /// Radix r of |f|_T = r^(-ord f), display only
        #[arg(long, default_value_t = 2)]
        radix: u64,
    },
    /// Calculator in Q(sqrt u) with exact rational coefficients, read over Q_p
    Ext {
        expr: String,
        #[arg(long)]
        p: u32,
        #[arg(long, value_parser = rational_arg)]
        u: BigRational,
    },
    /// Calculator in the quaternion algebra (s,t) with exact rational coefficients
    Quat {
        expr: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        s: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        t: BigRational,
        #[arg(long)]
        p: u32,
    },
    /// Division-algebra evidence for (s,t / Q_p)
    Division {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        s: BigRational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        t: BigRational,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Finite model of the closed unit ball of Q_p(sqrt u) modulo p^N
    Ball {
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long, value_parser = rational_arg, default_value = "2")]
        u: BigRational,
        #[arg(short = 'N', long = "precision", visible_alias = "N", default_value_t = 1)]
        n: u32,
        /// Print every representative
        #[arg(long)]
        dump: bool,
        /// Membership of FUNC in C(ball, tau, g): identity, conj, const:C or x^K
        #[arg(long)]
        member: Option<String>,
        #[arg(long, default_value = "tau1")]
        tau: String,
    },
    /// Run a property suite
    Verify {
        #[arg(value_enum, required_unless_present = "suite_flag")]
        suite: Option<Suite>,
        #[arg(long = "suite", value_enum, conflicts_with = "suite")]
        suite_flag: Option<Suite>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long)]
        tau: Option<String>,
        #[arg(short = 'N', long = "precision", visible_alias = "N", default_value_t = 2)]
        n: u32,
    },
}

/// A finished report and its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub text: Vec<String>,
    pub code: i32,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { fields: vec![("command".into(), command.into())], ..Report::default() }
    }

    fn kv(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.fields.push((k.into(), v.to_string()));
        self
    }

    fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}={v}");
        }
        out.push_str("---\n");
        for l in &self.text {
            let _ = writeln!(out, "{l}");
        }
        out
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the text for stdout, or for stderr when the exit code is 2.
pub fn run_args<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(&cli.command) {
            Ok(r) => (r.render(), r.code),
            Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
        },
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            (e.render().to_string(), code)
        }
    }
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Expand { num, den, p, digits } => expand(*num, *den, *p, *digits),
        Command::Valuation { num, den, p, bound } => valuation(*num, *den, *p, *bound),
        Command::Sqrt { num, den, p, digits } => sqrt(*num, *den, *p, *digits),
        Command::Laurent { series, p, radix } => laurent(series, *p, *radix),
        Command::Ext { expr, p, u } => calc::ext(expr, *p, u),
        Command::Quat { expr, s, t, p } => calc::quat(expr, s, t, *p),
        Command::Division { s, t, p, trials } => division(s, t, *p, *trials),
        Command::Ball { p, u, n, dump, member, tau } => ball(*p, u, *n, *dump, member.as_deref(), tau),
        Command::Verify { suite, suite_flag, seed, trials, p, tau, n } => {
            let suite = suite.or(*suite_flag).ok_or_else(|| Error::InvalidInput("no suite given".into()))?;
            let tau = tau.as_deref().map(str::parse::<Tau>).transpose()?;
            let out = run_suite(suite, *seed, *trials, *p, tau, *n)?;
            Ok(out.report())
        }
    }
}

fn expand(num: i64, den: i64, p: u32, digits: u32) -> Result<Report> {
    let x = Padic::from_rational(num, den, p, digits)?;
    let mut r = Report::new("expand");
    r.kv("num", num).kv("den", den).kv("p", p).kv("digits", digits);
    r.kv("valuation", x.nu());
    let list: Vec<String> = x.digits().iter().map(u32::to_string).collect();
    r.kv("digit_list", list.join(","));
    r.kv("series", x.to_series_string()).kv("compact", x.to_compact_string());
    let q = BigRational::new(num.into(), den.into());
    if let Ok(per) = periodicity(&q, p) {
        r.kv("preperiod", per.preperiod).kv("period", per.period);
    }
    r.line(format!("{num}/{den} in Q_{p}, {digits} digits:"));
    r.line(format!("  {}", x.to_series_string()));
    r.line(format!("  {}", x.to_compact_string()));
    Ok(r)
}

fn valuation(num: i64, den: i64, p: u32, bound: Option<u64>) -> Result<Report> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    crate::padic::check_prime(p)?;
    let q = BigRational::new(num.into(), den.into());
    let bound = match bound {
        Some(b) => b,
        None => q.numer().abs().max(q.denom().clone()).to_u64().filter(|&b| b <= 10_000_000).ok_or_else(|| {
            Error::InvalidInput("pass --bound for inputs above 10^7".into())
        })?,
    }
    .max(2);
    let mut r = Report::new("valuation");
    r.kv("num", num).kv("den", den).kv("p", p).kv("bound", bound);
    r.kv("nu", rational_nu(&q, p as u64));
    r.kv("abs_p", rational_abs_p(&q, p as u64));
    r.kv("trivial", trivial_valuation(&q));
    match product_formula_residual(&q, bound) {
        Ok(res) => {
            r.kv("product_formula", res);
        }
        Err(e) => {
            r.kv("product_formula", format!("error: {e}"));
        }
    }
    r.line(format!("nu_{p}({q}) = {}, |{q}|_{p} = {}", rational_nu(&q, p as u64), rational_abs_p(&q, p as u64)));
    Ok(r)
}

fn sqrt(num: i64, den: i64, p: u32, digits: u32) -> Result<Report> {
    let x = Padic::from_rational(num, den, p, digits)?;
    let out = sqrt_exists(&x, digits)?;
    let mut r = Report::new("sqrt");
    r.kv("num", num).kv("den", den).kv("p", p).kv("digits", digits);
    r.kv("square", out.is_square());
    match &out {
        SqrtOutcome::Square { witness } => {
            r.kv("witness", witness.to_compact_string());
            r.line(format!("{num}/{den} is a square in Q_{p}; root {}", witness.to_series_string()));
        }
        SqrtOutcome::NonSquare(NonSquareReason::OddValuation(v)) => {
            r.kv("reason", "odd valuation").kv("valuation", v);
            r.line(format!("no square root in Q_{p}: valuation {v} is odd"));
        }
        SqrtOutcome::NonSquare(NonSquareReason::NonResidue { residue, squares }) => {
            let sq: Vec<String> = squares.iter().map(u32::to_string).collect();
            r.kv("reason", "non-residue").kv("residue", residue).kv("squares", sq.join(","));
            r.line(format!(
                "no square root in Q_{p}: a leading digit a0 would need a0^2 = {residue} mod {p}, \
                 but the nonzero squares mod {p} are {{{}}}",
                sq.join(", ")
            ));
        }
    }
    Ok(r)
}

fn laurent(series: &str, p: u32, radix: u64) -> Result<Report> {
    let f = LaurentSeries::parse(series, p)?;
    let mut r = Report::new("laurent");
    r.kv("series", &f).kv("p", p).kv("radix", radix);
    r.kv("order", f.order()).kv("abs_t", f.val_t(radix)?);
    match f.inv() {
        Ok(g) => r.kv("inverse", g),
        Err(e) => r.kv("inverse", format!("error: {e}")),
    };
    r.line(format!("|f|_T = {} with r = {radix}", f.val_t(radix)?));
    Ok(r)
}

fn division(s: &BigRational, t: &BigRational, p: u32, trials: u64) -> Result<Report> {
    let ev = division_evidence(s, t, p, trials)?;
    let alg = QuaternionAlgebra::new(s.clone(), t.clone(), p)?;
    let mut r = Report::new("division");
    r.kv("s", s).kv("t", t).kv("p", p).kv("trials", trials);
    r.kv("verdict", ev.label());
    match &ev.verdict {
        Verdict::Division { criterion } => {
            r.kv("criterion", criterion);
        }
        Verdict::Split { witness: Witness::Rational(q) } => {
            r.kv("witness", alg.render(q)).kv("witness_norm", alg.norm(q)?);
        }
        Verdict::Split { witness: Witness::Padic(q) } => {
            r.kv("witness", alg.render(q)).kv("witness_norm", alg.norm(q)?);
        }
        Verdict::Inconclusive => {}
    }
    for l in &ev.transcript {
        r.line(l.clone());
    }
    Ok(r)
}

fn parse_member(ball: &BallModel, func: &str) -> Result<Box<dyn crate::funcalg::BallFunction>> {
    let p = ball.field().prime();
    if func == "identity" {
        return Ok(Box::new(FiniteFunction::identity(ball)));
    }
    if func == "conj" {
        return Ok(Box::new(FiniteFunction::conjugation(ball)));
    }
    if let Some(c) = func.strip_prefix("const:") {
        let c: i64 = c.parse().map_err(|_| Error::InvalidInput(format!("bad constant in {func:?}")))?;
        let v = QuadElement::embed(if c == 0 { Padic::zero(p)? } else { Padic::from_int(c, p, ball.precision())? });
        return Ok(Box::new(FiniteFunction::constant(ball, &v)?));
    }
    if let Some(k) = func.strip_prefix("x^") {
        let k: usize = k.parse().map_err(|_| Error::InvalidInput(format!("bad exponent in {func:?}")))?;
        return Ok(Box::new(PolynomialL::monomial(ball.field(), k, ball.precision() + 1)?));
    }
    Err(Error::InvalidInput(format!("unknown function {func:?}; expected identity, conj, const:C or x^K")))
}

fn ball(p: u32, u: &BigRational, n: u32, dump: bool, member: Option<&str>, tau: &str) -> Result<Report> {
    let field = QuadField::new(p, u.clone())?;
    let model = BallModel::new(field, n)?;
    let tau: Tau = tau.parse()?;
    let mut r = Report::new("ball");
    r.kv("p", p).kv("u", u).kv("N", n).kv("points", model.len());
    let counts: Vec<String> = (0..n)
        .map(|k| model.circle(k).map(|c| format!("C({k})={}", c.len())))
        .collect::<Result<_>>()?;
    r.kv("circles", counts.join(","));
    r.kv("zero_coset", 1);
    if let Some(func) = member {
        let f = parse_member(&model, func)?;
        let m = in_cx_tau(&model, f.as_ref(), tau, Automorphism::Conjugation);
        r.kv("member", func).kv("tau", tau).kv("holds", m.holds).kv("checked", m.checked);
        if let Some(v) = &m.violation {
            let (a, b) = model.coords(v.index);
            r.kv("witness_index", v.index).kv("witness", format!("{a} + {b}*sqrt({u})"));
            r.line(format!("violation at x = {a} + {b}*sqrt({u}): {}", v.reason));
        }
    }
    if dump {
        r.line("index a b omega");
        for i in 0..model.len() {
            let (a, b) = model.coords(i);
            r.line(format!("{i} {a} {b} {}", model.omega(i)));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (String, i32) {
        run_args(std::iter::once("nonarch").chain(args.iter().copied()))
    }

    #[test]
    fn report_layout() {
        let (out, code) = run(&["expand", "1", "2", "--p", "5", "--digits", "3"]);
        assert_eq!(code, EXIT_OK);
        let (head, body) = out.split_once("---\n").unwrap();
        assert!(head.starts_with("command=expand\nnum=1\nden=2\np=5\ndigits=3\n"));
        assert!(head.lines().all(|l| l.contains('=')));
        assert!(body.contains("1/2 in Q_5"));
    }

    #[test]
    fn errors_map_to_usage_code() {
        let (out, code) = run(&["quat", "1 +", "--s", "5", "--t", "2", "--p", "5"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.starts_with("error: "));
        assert_eq!(run(&["ball", "--member", "x^y"]).1, EXIT_USAGE);
        assert_eq!(run(&["ball", "--tau", "tau3"]).1, EXIT_USAGE);
    }

    #[test]
    fn member_functions() {
        let (out, _) = run(&["ball", "-N", "1", "--member", "const:3", "--tau", "tau2"]);
        assert!(out.contains("holds=true"));
        let (out, _) = run(&["ball", "-N", "1", "--member", "x^2", "--tau", "tau1"]);
        assert!(out.contains("holds=true"));
    }
}
