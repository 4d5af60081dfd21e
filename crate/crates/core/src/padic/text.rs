//! Text forms of p-adic numbers.
//!
//! Series form, one term per known digit, zeros included:
//!
//! ```text
//! series   := "0" | "O(" p "^" int ")" | term (" + " term)* " + ..."
//! term     := digit "·" p ("^" int)?          (exponent 1 is written bare)
//! ```
//!
//! Compact form:
//!
//! ```text
//! compact  := "0 (base " p ")"                 exact zero
//!           | "[" digits? "]@" int " (base " p ")"
//! ```
//!
//! In the compact form the integer after `@` is the valuation for a nonzero
//! value and the absolute precision for a zero known modulo `p^M` (the
//! digit list is then empty). Digits are little-endian.

use std::str::FromStr;

use super::{Padic, Repr};
use crate::error::{Error, Result};

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn power_text(p: u32, e: i64) -> String {
    if e == 1 {
        format!("{p}")
    } else {
        format!("{p}^{e}")
    }
}

impl Padic {
    /// `d_0·p^v + d_1·p^(v+1) + ... + ...`
    pub fn to_series_string(&self) -> String {
        match &self.repr {
            Repr::Zero { prec: None } => "0".to_string(),
            Repr::Zero { prec: Some(m) } => format!("O({}^{m})", self.p),
            Repr::Unit { val, .. } => {
                let mut terms: Vec<String> = self
                    .digits()
                    .iter()
                    .enumerate()
                    .map(|(i, d)| format!("{d}·{}", power_text(self.p, val + i as i64)))
                    .collect();
                terms.push("...".into());
                terms.join(" + ")
            }
        }
    }

    pub fn to_compact_string(&self) -> String {
        match &self.repr {
            Repr::Zero { prec: None } => format!("0 (base {})", self.p),
            Repr::Zero { prec: Some(m) } => format!("[]@{m} (base {})", self.p),
            Repr::Unit { val, .. } => {
                let ds: Vec<String> = self.digits().iter().map(u32::to_string).collect();
                format!("[{}]@{val} (base {})", ds.join(","), self.p)
            }
        }
    }

    /// Parses the series form over a known prime.
    pub fn parse_series(s: &str, p: u32) -> Result<Padic> {
        let s = s.trim();
        if s == "0" {
            return Padic::zero(p);
        }
        if let Some(inner) = s.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
            let (base, exp) = inner
                .split_once('^')
                .ok_or_else(|| parse_err(2, "expected p^M inside O(...)"))?;
            if base.trim().parse::<u32>().ok() != Some(p) {
                return Err(parse_err(2, format!("expected base {p}")));
            }
            let m = exp.trim().parse::<i64>().map_err(|_| parse_err(2, "bad precision exponent"))?;
            return Padic::zero_mod(p, m);
        }
        let body = s
            .strip_suffix("...")
            .and_then(|b| b.trim_end().strip_suffix('+'))
            .ok_or_else(|| parse_err(s.len(), "a truncated series must end with \" + ...\""))?;
        let mut digits = Vec::new();
        let mut first_exp = None;
        let mut pos = 0usize;
        for term in body.split('+') {
            let t = term.trim();
            let (d, power) = t
                .split_once('·')
                .or_else(|| t.split_once('*'))
                .ok_or_else(|| parse_err(pos, format!("term {t:?} is not d·p^e")))?;
            let d: u32 = d.trim().parse().map_err(|_| parse_err(pos, "bad digit"))?;
            let (base, e) = match power.trim().split_once('^') {
                Some((b, e)) => (b, e.trim().parse::<i64>().map_err(|_| parse_err(pos, "bad exponent"))?),
                None => (power.trim(), 1),
            };
            if base.trim().parse::<u32>().ok() != Some(p) {
                return Err(parse_err(pos, format!("expected powers of {p}")));
            }
            match first_exp {
                None => first_exp = Some(e),
                Some(v) if e != v + digits.len() as i64 => {
                    return Err(parse_err(pos, "exponents must be consecutive"));
                }
                Some(_) => {}
            }
            digits.push(d);
            pos += term.len() + 1;
        }
        Padic::from_digits(p, first_exp.unwrap_or(0), &digits)
    }
}

impl FromStr for Padic {
    type Err = Error;

    /// Parses the compact form.
    fn from_str(s: &str) -> Result<Padic> {
        let s = s.trim();
        let open = s.rfind("(base ").ok_or_else(|| parse_err(0, "missing \"(base p)\""))?;
        let p: u32 = s[open + 6..]
            .strip_suffix(')')
            .and_then(|b| b.trim().parse().ok())
            .ok_or_else(|| parse_err(open, "bad base"))?;
        let head = s[..open].trim();
        if head == "0" {
            return Padic::zero(p);
        }
        let rest = head.strip_prefix('[').ok_or_else(|| parse_err(0, "expected '['"))?;
        let (list, at) = rest.split_once("]@").ok_or_else(|| parse_err(1, "expected \"]@\""))?;
        let at: i64 = at.trim().parse().map_err(|_| parse_err(list.len() + 3, "bad exponent after '@'"))?;
        if list.trim().is_empty() {
            return Padic::zero_mod(p, at);
        }
        let digits = list
            .split(',')
            .map(|d| d.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| parse_err(1, "bad digit list"))?;
        Padic::from_digits(p, at, &digits)
    }
}
