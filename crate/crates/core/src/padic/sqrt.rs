//! Square roots in `Q_p` for odd `p` by digit-by-digit Hensel lifting.

use super::{Padic, Repr, Residue};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSquareReason {
    /// A square has even valuation.
    OddValuation(i64),
    /// The leading digit of the unit part is not a square mod `p`;
    /// `squares` lists the nonzero squares mod `p`.
    NonResidue { residue: u32, squares: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqrtOutcome {
    /// `witness^2 == u` to `max_lift` significant digits.
    Square { witness: Padic },
    NonSquare(NonSquareReason),
}

impl SqrtOutcome {
    pub fn is_square(&self) -> bool {
        matches!(self, SqrtOutcome::Square { .. })
    }

    pub fn witness(&self) -> Option<&Padic> {
        match self {
            SqrtOutcome::Square { witness } => Some(witness),
            SqrtOutcome::NonSquare(_) => None,
        }
    }
}

pub(crate) fn nonzero_squares(p: u32) -> Vec<u32> {
    let mut sq: Vec<u32> = (1..p).map(|x| ((x as u64 * x as u64) % p as u64) as u32).collect();
    sq.sort_unstable();
    sq.dedup();
    sq
}

/// Decides whether `u` is a square in `Q_p` and, if so, lifts a square root
/// to `max_lift` significant digits.
///
/// The leading digit `a_0` of a root must satisfy `a_0^2 == u_0 (mod p)`;
/// when no such digit exists the residue and the full list of squares mod
/// `p` are returned as the obstruction. Otherwise each further digit is the
/// unique solution of a linear congruence mod `p`, since `2 a_0` is a unit
/// for odd `p`.
pub fn sqrt_exists(u: &Padic, max_lift: u32) -> Result<SqrtOutcome> {
    let p = u.p;
    if p == 2 {
        return Err(Error::EvenPrime("square roots need an odd prime".into()));
    }
    if max_lift == 0 {
        return Err(Error::OutOfRange("max_lift must be at least 1".into()));
    }
    let (val, rel, unit) = match &u.repr {
        Repr::Zero { prec: None } => return Ok(SqrtOutcome::Square { witness: u.clone() }),
        Repr::Zero { prec: Some(m) } => {
            return Err(Error::InsufficientPrecision(format!(
                "value is zero modulo {p}^{m}; its valuation is undetermined"
            )));
        }
        Repr::Unit { val, rel, unit } => (*val, *rel, unit),
    };
    if val % 2 != 0 {
        return Ok(SqrtOutcome::NonSquare(NonSquareReason::OddValuation(val)));
    }
    if max_lift > rel {
        return Err(Error::InsufficientPrecision(format!(
            "{max_lift} digits requested but only {rel} are known"
        )));
    }
    let residue = unit.mod_p(p);
    let pp = p as u64;
    let Some(a0) = (1..p).find(|&x| (x as u64 * x as u64) % pp == residue as u64) else {
        return Ok(SqrtOutcome::NonSquare(NonSquareReason::NonResidue {
            residue,
            squares: nonzero_squares(p),
        }));
    };
    let target = unit.reduce(p, max_lift);
    let mut w = Residue::from_word(a0 as u64, p, max_lift);
    for k in 1..max_lift {
        // (w + d p^k)^2 == u mod p^(k+1)  <=>  2 w d == (u - w^2) / p^k mod p
        let err = target.add(&w.mul(&w, p, max_lift).neg(p, max_lift), p, max_lift);
        let c = err.reduce(p, k + 1).to_big() / super::residue::big_pow(p, k);
        let c = (c % p).to_u64_digits().first().copied().unwrap_or(0);
        let two_w_inv = Residue::from_word(2 * a0 as u64, p, 1).inv(p, 1);
        let Residue::Word(inv) = two_w_inv else { unreachable!("p fits a word") };
        let d = (c * inv) % pp;
        w = w.add(&Residue::from_word(d, p, max_lift).shl(k, p, max_lift), p, max_lift);
    }
    Ok(SqrtOutcome::Square {
        witness: Padic { p, repr: Repr::Unit { val: val / 2, rel: max_lift, unit: w } },
    })
}
