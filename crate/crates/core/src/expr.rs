//! A small infix expression language for the calculators.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary | unary)*     juxtaposition multiplies
//! unary   := "-" unary | power
//! power   := primary ("^" "-"? integer)?
//! primary := integer | name | name "(" expr ("," expr)* ")" | "(" expr ")"
//! ```
//!
//! Names are ASCII identifiers; which names and calls are meaningful is up to
//! the evaluator. Errors carry the byte offset of the offending token.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Name { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call { name: String, args: Vec<Expr>, pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(src[start..i].parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(Error::Parse { pos: i, msg: format!("unexpected character {ch:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_)) | Some(Tok::Sym('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let e: i64 = match i64::try_from(&n) {
                    Ok(e) if e <= 1_000_000 => e,
                    _ => return self.err("exponent too large"),
                };
                self.at += 1;
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if !self.eat('(') {
                    return Ok(Expr::Name { name, pos });
                }
                let mut args = vec![self.expr()?];
                while self.eat(',') {
                    args.push(self.expr()?);
                }
                if !self.eat(')') {
                    return self.err("expected ')' to close the argument list");
                }
                Ok(Expr::Call { name, args, pos })
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("name {s:?}"),
        Tok::Sym(c) => format!("{c:?}"),
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0, end: src.len() };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err(format!("unexpected {}", describe(&p.toks[p.at].0)));
    }
    Ok(e)
}

/// Operations an evaluator supplies for [`eval`].
pub trait Algebra {
    type Value: Clone;

    fn int(&self, n: &BigInt) -> Result<Self::Value>;
    fn name(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value>;
    fn sub(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value>;
    fn div(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value>;
    fn neg(&self, x: &Self::Value) -> Result<Self::Value>;
    fn inv(&self, x: &Self::Value) -> Result<Self::Value>;
    fn one(&self) -> Result<Self::Value>;
    fn call(&self, name: &str, args: &[Self::Value]) -> Option<Result<Self::Value>>;
}

pub fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::Value> {
    match e {
        Expr::Int(n) => alg.int(n),
        Expr::Name { name, pos } => alg
            .name(name)
            .ok_or_else(|| Error::Parse { pos: *pos, msg: format!("unknown name {name:?}") }),
        Expr::Neg(x) => alg.neg(&eval(alg, x)?),
        Expr::Add(x, y) => alg.add(&eval(alg, x)?, &eval(alg, y)?),
        Expr::Sub(x, y) => alg.sub(&eval(alg, x)?, &eval(alg, y)?),
        Expr::Mul(x, y) => alg.mul(&eval(alg, x)?, &eval(alg, y)?),
        Expr::Div(x, y) => alg.div(&eval(alg, x)?, &eval(alg, y)?),
        Expr::Pow(x, k) => {
            let base = eval(alg, x)?;
            let base = if *k < 0 { alg.inv(&base)? } else { base };
            let mut acc = alg.one()?;
            for _ in 0..k.unsigned_abs() {
                acc = alg.mul(&acc, &base)?;
            }
            Ok(acc)
        }
        Expr::Call { name, args, pos } => {
            let vals = args.iter().map(|a| eval(alg, a)).collect::<Result<Vec<_>>>()?;
            alg.call(name, &vals)
                .unwrap_or_else(|| Err(Error::Parse { pos: *pos, msg: format!("unknown function {name:?}") }))
        }
    }
}
