//! Expressions over F_q(b): + - * / ^, parentheses, integer literals and
//! identifiers (with optional trailing primes).
//!
//! Exponents are integers, `p`, `(p^k)`, or for the field generator also
//! `(n/p^j)`. Division is only by nonzero constants.

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec, FQ_GENERATOR};
use crate::poly::{Monomial, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(
                text.parse().map_err(|_| format!("integer {text} is too large"))?,
            ));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// An exponent n / p^j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Exponent {
    num: i64,
    root: u32,
}

struct ExprParser<'a> {
    field: &'a FieldSpec,
    vars: &'a [String],
    ring: PolyRing,
    toks: Vec<Tok>,
    pos: usize,
}

/// Parse `text` as a polynomial in `vars` over `field`.
pub fn parse_poly(field: &FieldSpec, vars: &[String], text: &str) -> std::result::Result<Poly, String> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut parser = ExprParser {
        field,
        vars,
        ring: PolyRing::new(field, vars.len()),
        toks,
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(format!("unexpected {:?} after expression", parser.toks[parser.pos]));
    }
    Ok(value)
}

/// Parse a field element (an expression without variables).
pub fn parse_elem(field: &FieldSpec, text: &str) -> Result<FieldElem> {
    let p = parse_poly(field, &[], text).map_err(Error::Input)?;
    p.constant_value()
        .ok_or_else(|| Error::Input(format!("{text} is not a field element")))
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected {c:?}"))
        }
    }

    fn expr(&mut self) -> std::result::Result<Poly, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Poly, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let inv = d
                    .constant_value()
                    .ok_or("division by a non-constant")?
                    .inv()
                    .ok_or("division by zero")?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Poly, String> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Poly, String> {
        let (mut value, mut is_gen) = self.atom()?;
        while self.eat('^') {
            let e = self.exponent()?;
            value = self.raise(&value, e, is_gen)?;
            is_gen = false;
        }
        Ok(value)
    }

    fn raise(&self, base: &Poly, e: Exponent, is_gen: bool) -> std::result::Result<Poly, String> {
        if e.root > 0 {
            if !is_gen {
                return Err(format!("fractional exponents apply only to {}", self.field.gen_name()));
            }
            let root = FieldElem::gen_root(self.field, e.root).map_err(|err| err.to_string())?;
            let x = root.pow(e.num).ok_or("zero to a negative power")?;
            return Ok(Poly::constant(&self.ring, x));
        }
        if e.num >= 0 {
            return Ok(base.pow(e.num as u64));
        }
        let c = base.constant_value().ok_or("negative exponent on a non-constant")?;
        let x = c.pow(e.num).ok_or("zero to a negative power")?;
        Ok(Poly::constant(&self.ring, x))
    }

    /// `p`, `p^k` or an integer.
    fn exponent_atom(&mut self) -> std::result::Result<(i64, Option<u32>), String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((n, None))
            }
            Some(Tok::Ident(s)) if s == "p" => {
                self.pos += 1;
                let k = if self.eat('^') {
                    match self.peek().cloned() {
                        Some(Tok::Num(k)) => {
                            self.pos += 1;
                            u32::try_from(k).map_err(|_| "bad power of p")?
                        }
                        _ => return Err("expected an integer after p^".into()),
                    }
                } else {
                    1
                };
                let value = (self.field.p() as i64).checked_pow(k).ok_or("power of p overflows")?;
                Ok((value, Some(k)))
            }
            other => Err(format!("bad exponent {other:?}")),
        }
    }

    fn exponent(&mut self) -> std::result::Result<Exponent, String> {
        if !self.eat('(') {
            let (n, _) = self.exponent_atom()?;
            return Ok(Exponent { num: n, root: 0 });
        }
        let negative = self.eat('-');
        let (mut num, _) = self.exponent_atom()?;
        let mut root = 0;
        if self.eat('/') {
            let (den, k) = self.exponent_atom()?;
            root = match k {
                Some(k) => k,
                None => crate::poly::p_log(self.field.p(), u32::try_from(den).map_err(|_| "bad exponent")?)
                    .ok_or("exponent denominators must be powers of p")?,
            };
        }
        self.expect(')')?;
        if negative {
            num = -num;
        }
        Ok(Exponent { num, root })
    }

    fn atom(&mut self) -> std::result::Result<(Poly, bool), String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((Poly::constant(&self.ring, FieldElem::from_int(self.field, n)), false))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    return Ok((
                        Poly::term(
                            &self.ring,
                            Monomial::var(self.vars.len(), i, 1),
                            FieldElem::one(self.field),
                        ),
                        false,
                    ));
                }
                if name == self.field.gen_name() {
                    return Ok((Poly::constant(&self.ring, FieldElem::gen(self.field)), true));
                }
                if name == FQ_GENERATOR && self.field.e() > 1 {
                    let z = FieldElem::from_fq(self.field, self.field.fq().generator());
                    return Ok((Poly::constant(&self.ring, z), false));
                }
                Err(format!("unknown symbol {name}"))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok((v, false))
            }
            other => Err(format!("unexpected {other:?}")),
        }
    }
}
