//! Residues modulo `p^k`.
//!
//! A residue is a machine word whenever `p^k` fits in a `u64` and a
//! `BigUint` otherwise; which one is used depends only on `(p, k)`, so two
//! equal residues at the same modulus always share a variant.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Residue {
    Word(u64),
    Big(BigUint),
}

/// `p^k` when it fits in a word.
#[inline]
pub(crate) fn word_modulus(p: u32, k: u32) -> Option<u64> {
    (p as u64).checked_pow(k)
}

pub(crate) fn big_pow(p: u32, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

fn inv_word(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "residue is not a unit");
    t0.rem_euclid(m as i128) as u64
}

impl Residue {
    pub(crate) fn zero(p: u32, k: u32) -> Residue {
        match word_modulus(p, k) {
            Some(_) => Residue::Word(0),
            None => Residue::Big(BigUint::zero()),
        }
    }

    pub(crate) fn from_big(b: &BigUint, p: u32, k: u32) -> Residue {
        match word_modulus(p, k) {
            Some(m) => Residue::Word((b % m).to_u64().expect("reduced below a word modulus")),
            None => Residue::Big(b % big_pow(p, k)),
        }
    }

    pub(crate) fn from_word(w: u64, p: u32, k: u32) -> Residue {
        match word_modulus(p, k) {
            Some(m) => Residue::Word(w % m),
            None => Residue::Big(BigUint::from(w)),
        }
    }

    pub(crate) fn to_big(&self) -> BigUint {
        match self {
            Residue::Word(w) => BigUint::from(*w),
            Residue::Big(b) => b.clone(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        match self {
            Residue::Word(w) => *w == 0,
            Residue::Big(b) => b.is_zero(),
        }
    }

    /// Reduces to the modulus `p^k`, which may be smaller than the one this
    /// residue was produced at.
    pub(crate) fn reduce(&self, p: u32, k: u32) -> Residue {
        match (self, word_modulus(p, k)) {
            (Residue::Word(w), Some(m)) => Residue::Word(w % m),
            (Residue::Word(w), None) => Residue::Big(BigUint::from(*w)),
            (Residue::Big(b), _) => Residue::from_big(b, p, k),
        }
    }

    pub(crate) fn add(&self, other: &Residue, p: u32, k: u32) -> Residue {
        match (self, other, word_modulus(p, k)) {
            (Residue::Word(a), Residue::Word(b), Some(m)) => {
                let (a, b) = (a % m, b % m);
                let (s, carry) = a.overflowing_add(b);
                Residue::Word(if carry || s >= m { s.wrapping_sub(m) } else { s })
            }
            _ => Residue::from_big(&(self.to_big() + other.to_big()), p, k),
        }
    }

    pub(crate) fn neg(&self, p: u32, k: u32) -> Residue {
        match (self, word_modulus(p, k)) {
            (Residue::Word(a), Some(m)) => Residue::Word((m - a % m) % m),
            _ => {
                let m = big_pow(p, k);
                let a = self.to_big() % &m;
                Residue::Big((&m - a) % &m)
            }
        }
    }

    pub(crate) fn mul(&self, other: &Residue, p: u32, k: u32) -> Residue {
        match (self, other, word_modulus(p, k)) {
            (Residue::Word(a), Residue::Word(b), Some(m)) => {
                Residue::Word(((*a as u128 * *b as u128) % m as u128) as u64)
            }
            _ => Residue::from_big(&(self.to_big() * other.to_big()), p, k),
        }
    }

    /// Inverse of a unit modulo `p^k`.
    pub(crate) fn inv(&self, p: u32, k: u32) -> Residue {
        match (self, word_modulus(p, k)) {
            (Residue::Word(a), Some(m)) => Residue::Word(inv_word(a % m, m)),
            _ => {
                let m = big_pow(p, k);
                // The unit group of Z/p^k has order p^(k-1) (p-1).
                let order = big_pow(p, k - 1) * BigUint::from(p - 1);
                let e = order - BigUint::one();
                Residue::Big(self.to_big().modpow(&e, &m))
            }
        }
    }

    /// `self * p^e mod p^k`.
    pub(crate) fn shl(&self, e: u32, p: u32, k: u32) -> Residue {
        if e >= k {
            return Residue::zero(p, k);
        }
        match (self, word_modulus(p, k)) {
            (Residue::Word(a), Some(m)) if e == 0 => Residue::Word(a % m),
            (Residue::Word(a), Some(m)) => {
                let pe = word_modulus(p, e).expect("p^e divides a word modulus");
                Residue::Word(((*a as u128 * pe as u128) % m as u128) as u64)
            }
            _ => Residue::from_big(&(self.to_big() * big_pow(p, e)), p, k),
        }
    }

    pub(crate) fn mod_p(&self, p: u32) -> u32 {
        match self {
            Residue::Word(w) => (w % p as u64) as u32,
            Residue::Big(b) => (b % p).to_u32().expect("below p"),
        }
    }

    /// Removes the factors of `p` from a nonzero residue held at modulus
    /// `p^k`, returning `(t, r)` with `self = p^t * r` and `r` reduced
    /// modulo `p^(k - t)`.
    pub(crate) fn strip(&self, p: u32, k: u32) -> (u32, Residue) {
        debug_assert!(!self.is_zero());
        match self {
            Residue::Word(w) => {
                let mut w = *w;
                let mut t = 0;
                while w % p as u64 == 0 {
                    w /= p as u64;
                    t += 1;
                }
                (t, Residue::from_word(w, p, k - t))
            }
            Residue::Big(b) => {
                let mut b = b.clone();
                let mut t = 0;
                let pb = BigUint::from(p);
                loop {
                    let (q, r) = b.div_rem(&pb);
                    if !r.is_zero() {
                        break;
                    }
                    b = q;
                    t += 1;
                }
                (t, Residue::from_big(&b, p, k - t))
            }
        }
    }

    /// Little-endian base-`p` digits, exactly `k` of them.
    pub(crate) fn digits(&self, p: u32, k: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(k as usize);
        match self {
            Residue::Word(w) => {
                let mut w = *w;
                for _ in 0..k {
                    out.push((w % p as u64) as u32);
                    w /= p as u64;
                }
            }
            Residue::Big(b) => {
                let mut b = b.clone();
                let pb = BigUint::from(p);
                for _ in 0..k {
                    let (q, r) = b.div_rem(&pb);
                    out.push(r.to_u32().expect("digit below p"));
                    b = q;
                }
            }
        }
        out
    }

    pub(crate) fn from_digits(digits: &[u32], p: u32) -> Residue {
        let k = digits.len() as u32;
        let mut acc = BigUint::zero();
        for &d in digits.iter().rev() {
            acc = acc * p + d;
        }
        Residue::from_big(&acc, p, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_big_paths_agree() {
        // 5^27 fits a word, 5^28 does not.
        assert!(word_modulus(5, 27).is_some());
        assert!(word_modulus(5, 28).is_none());
        let a = BigUint::from(123456789123456789u64);
        let b = BigUint::from(987654321987u64);
        for k in [20u32, 27, 28, 40] {
            let ra = Residue::from_big(&a, 5, k);
            let rb = Residue::from_big(&b, 5, k);
            let m = big_pow(5, k);
            assert_eq!(ra.mul(&rb, 5, k).to_big(), (&a * &b) % &m);
            assert_eq!(ra.add(&rb, 5, k).to_big(), (&a + &b) % &m);
            let inv = rb.inv(5, k);
            assert_eq!(inv.mul(&rb, 5, k).to_big(), BigUint::one());
            assert_eq!(ra.neg(5, k).add(&ra, 5, k).to_big(), BigUint::zero());
        }
    }

    #[test]
    fn digits_round_trip() {
        let r = Residue::from_digits(&[3, 2, 2, 2, 2], 5);
        assert_eq!(r.digits(5, 5), vec![3, 2, 2, 2, 2]);
        assert_eq!(r.to_big(), BigUint::from(3u32 + 10 + 50 + 250 + 1250));
    }

    #[test]
    fn strip_factors() {
        let r = Residue::from_word(50, 5, 6);
        let (t, u) = r.strip(5, 6);
        assert_eq!(t, 2);
        assert_eq!(u, Residue::Word(2));
    }
}
