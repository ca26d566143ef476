//! Recursive-descent parser for Laurent polynomials with coefficients in Q
//! or Q(z).
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] int | '^' '(' ['-'] int ')']
//! atom   := int | 'z' | 'x' int | '(' expr ')'
//! ```
//!
//! Division and negative powers are only allowed for single-term operands.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalars::{Field, Poly, Rational, RationalFunction, Scalar};

type Terms = BTreeMap<Vec<i64>, Scalar>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
    field: Field,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, rank: usize, field: Field) -> Self {
        Parser { src: text.as_bytes(), pos: 0, rank, field }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn small_int(&mut self) -> Result<i64> {
        let pos = self.pos;
        let neg = self.eat(b'-');
        let Some(d) = self.digits() else {
            return err(pos, "expected an integer exponent");
        };
        let v: i64 = i64::try_from(d).or_else(|_| err(pos, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn constant(&self, r: Rational) -> Terms {
        let mut t = Terms::new();
        if !r.is_zero() {
            t.insert(vec![0; self.rank], Scalar::from_rational_in(r, self.field));
        }
        t
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = if self.eat(b'-') {
            negate(&self.term()?)
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = add(&acc, &t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = add(&acc, &negate(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = mul(&acc, &rhs);
            } else if self.peek() == Some(b'/') {
                let pos = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                let inv = invert(&rhs).or_else(|m| err(pos, m))?;
                acc = mul(&acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Terms> {
        if self.eat(b'-') {
            return Ok(negate(&self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let pos = self.pos;
        let k = if self.eat(b'(') {
            let k = self.small_int()?;
            if !self.eat(b')') {
                return err(self.pos, "expected `)`");
            }
            k
        } else {
            self.small_int()?
        };
        let (b, k) = if k < 0 {
            (invert(&base).or_else(|m| err(pos, m))?, -k)
        } else {
            (base, k)
        };
        let one = self.constant(Rational::one());
        Ok((0..k).fold(one, |acc, _| mul(&acc, &b)))
    }

    fn atom(&mut self) -> Result<Terms> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().unwrap();
                Ok(self.constant(Rational::from_integer(n)))
            }
            Some(b'z') => {
                self.pos += 1;
                if self.field == Field::Rationals {
                    return err(pos, "`z` is not allowed in polynomials over Q");
                }
                let mut t = Terms::new();
                t.insert(vec![0; self.rank], Scalar::Function(RationalFunction::z()));
                Ok(t)
            }
            Some(b'x') => {
                self.pos += 1;
                let Some(idx) = self.digits() else {
                    return err(self.pos, "expected a variable index after `x`");
                };
                let idx = usize::try_from(idx).unwrap_or(usize::MAX);
                if idx == 0 {
                    return err(pos, "variables are numbered from x1");
                }
                if idx > self.rank {
                    return Err(Error::RankMismatch { index: idx, rank: self.rank });
                }
                let mut e = vec![0; self.rank];
                e[idx - 1] = 1;
                let mut t = Terms::new();
                t.insert(e, Scalar::one_in(self.field));
                Ok(t)
            }
            Some(c) => err(pos, format!("unexpected character `{}`", c as char)),
            None => err(pos, "unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => err(self.pos, format!("unexpected trailing `{}`", c as char)),
        }
    }
}

fn negate(t: &Terms) -> Terms {
    t.iter().map(|(e, c)| (e.clone(), c.neg())).collect()
}

fn add(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        let sum = match out.get(e) {
            Some(prev) => prev.add(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            out.remove(e);
        } else {
            out.insert(e.clone(), sum);
        }
    }
    out
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let single: Terms = [(e, ca.mul(cb))].into();
            out = add(&out, &single);
        }
    }
    out
}

fn invert(t: &Terms) -> std::result::Result<Terms, String> {
    match t.len() {
        0 => Err("division by zero".into()),
        1 => {
            let (e, c) = t.iter().next().unwrap();
            let one = match c {
                Scalar::Rational(_) => Scalar::from_int(1),
                Scalar::Function(_) => Scalar::Function(RationalFunction::constant(Rational::one())),
            };
            Ok([(e.iter().map(|x| -x).collect(), one.div(c))].into())
        }
        _ => Err("can only divide by a single term".into()),
    }
}

/// Parses a Laurent polynomial in `x1..x{rank}` over `field`.
pub fn parse_polynomial(text: &str, rank: usize, field: Field) -> Result<LaurentPoly> {
    let mut p = Parser::new(text, rank, field);
    let terms = p.expr()?;
    p.finish()?;
    LaurentPoly::from_terms(rank, field, terms)
}

/// Parses a scalar of `field`; zero is allowed.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    let mut p = Parser::new(text, 0, field);
    let terms = p.expr()?;
    p.finish()?;
    Ok(terms
        .into_values()
        .next()
        .unwrap_or_else(|| Scalar::zero_in(field)))
}

/// Parses a polynomial in `z` (no denominators).
pub fn parse_z_polynomial(text: &str) -> Result<Poly> {
    match parse_scalar(text, Field::FunctionField)? {
        Scalar::Function(f) if f.denominator().is_one() => Ok(f.numerator().clone()),
        Scalar::Rational(r) => Ok(Poly::constant(r)),
        _ => err(0, "expected a polynomial in z"),
    }
}
