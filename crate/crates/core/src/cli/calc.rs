//! Expression calculators for `ext` and `quat`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Report;
use crate::error::{Error, Result};
use crate::expr::{eval, parse, Algebra};
use crate::quadext::{QuadElement, QuadField};
use crate::quaternion::{Quaternion, QuaternionAlgebra};

type QElem = QuadElement<BigRational>;
type HElem = Quaternion<BigRational>;

fn q0() -> BigRational {
    BigRational::zero()
}

fn unary<'a, T>(name: &str, args: &'a [T]) -> Result<&'a T> {
    match args {
        [x] => Ok(x),
        _ => Err(Error::InvalidInput(format!("{name} takes one argument, got {}", args.len()))),
    }
}

struct Ext<'a>(&'a QuadField);

impl Algebra for Ext<'_> {
    type Value = QElem;

    fn int(&self, n: &BigInt) -> Result<QElem> {
        Ok(QuadElement::embed(BigRational::from_integer(n.clone())))
    }
    fn name(&self, name: &str) -> Option<QElem> {
        (name == "sqrtu").then(|| self.0.sqrt_u(&q0()))
    }
    fn add(&self, x: &QElem, y: &QElem) -> Result<QElem> {
        self.0.add(x, y)
    }
    fn sub(&self, x: &QElem, y: &QElem) -> Result<QElem> {
        self.0.sub(x, y)
    }
    fn mul(&self, x: &QElem, y: &QElem) -> Result<QElem> {
        self.0.mul(x, y)
    }
    fn div(&self, x: &QElem, y: &QElem) -> Result<QElem> {
        self.0.div(x, y)
    }
    fn neg(&self, x: &QElem) -> Result<QElem> {
        Ok(self.0.neg(x))
    }
    fn inv(&self, x: &QElem) -> Result<QElem> {
        self.0.inv(x)
    }
    fn one(&self) -> Result<QElem> {
        Ok(QuadElement::embed(BigRational::one()))
    }
    fn call(&self, name: &str, args: &[QElem]) -> Option<Result<QElem>> {
        let f = self.0;
        Some(match name {
            "conj" => unary(name, args).map(|x| f.conj(x)),
            "norm" => unary(name, args).and_then(|x| f.norm(x)).map(QuadElement::embed),
            "inv" => unary(name, args).and_then(|x| f.inv(x)),
            _ => return None,
        })
    }
}

pub(super) fn ext(src: &str, p: u32, u: &BigRational) -> Result<Report> {
    let field = QuadField::new(p, u.clone())?;
    let x = eval(&Ext(&field), &parse(src)?)?;
    let mut r = Report::new("ext");
    r.kv("expr", src).kv("p", p).kv("u", u);
    r.kv("value", field.render(&x)).kv("norm", field.norm(&x)?);
    r.kv("omega", field.omega(&x)?).kv("abs", field.abs_l(&x)?);
    r.line(format!("{src} = {} in {field}", field.render(&x)));
    Ok(r)
}

struct Quat<'a>(&'a QuaternionAlgebra);

impl Algebra for Quat<'_> {
    type Value = HElem;

    fn int(&self, n: &BigInt) -> Result<HElem> {
        Ok(Quaternion::scalar(BigRational::from_integer(n.clone())))
    }
    /// `i`, `j`, `k` and juxtaposed words in them such as `ij` or `kji`.
    fn name(&self, name: &str) -> Option<HElem> {
        let mut acc = Quaternion::scalar(BigRational::one());
        for c in name.chars() {
            let idx = match c {
                'i' => 1,
                'j' => 2,
                'k' => 3,
                _ => return None,
            };
            acc = self.0.mul(&acc, &Quaternion::basis(idx, &q0())).ok()?;
        }
        Some(acc)
    }
    fn add(&self, x: &HElem, y: &HElem) -> Result<HElem> {
        self.0.add(x, y)
    }
    fn sub(&self, x: &HElem, y: &HElem) -> Result<HElem> {
        self.0.sub(x, y)
    }
    fn mul(&self, x: &HElem, y: &HElem) -> Result<HElem> {
        self.0.mul(x, y)
    }
    fn div(&self, x: &HElem, y: &HElem) -> Result<HElem> {
        self.0.div(x, y)
    }
    fn neg(&self, x: &HElem) -> Result<HElem> {
        Ok(self.0.neg(x))
    }
    fn inv(&self, x: &HElem) -> Result<HElem> {
        self.0.inv(x)
    }
    fn one(&self) -> Result<HElem> {
        Ok(Quaternion::scalar(BigRational::one()))
    }
    fn call(&self, name: &str, args: &[HElem]) -> Option<Result<HElem>> {
        let h = self.0;
        Some(match name {
            "conj" => unary(name, args).map(|x| h.conj(x)),
            "norm" => unary(name, args).and_then(|x| h.norm(x)).map(Quaternion::scalar),
            "inv" => unary(name, args).and_then(|x| h.inv(x)),
            _ => return None,
        })
    }
}

pub(super) fn quat(src: &str, s: &BigRational, t: &BigRational, p: u32) -> Result<Report> {
    let alg = QuaternionAlgebra::new(s.clone(), t.clone(), p)?;
    let x = eval(&Quat(&alg), &parse(src)?)?;
    let mut r = Report::new("quat");
    r.kv("expr", src).kv("s", s).kv("t", t).kv("p", p);
    r.kv("value", alg.render(&x)).kv("norm", alg.norm(&x)?).kv("abs", alg.abs(&x)?);
    r.line(format!("{src} = {} in {alg}", alg.render(&x)));
    Ok(r)
}
