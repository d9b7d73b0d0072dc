//! Parser for ring-element strings such as `"3/2*t^-2 + 1"` or `"a^2+b*c-1"`.

use super::poly::{Exponents, Poly};
use super::rational::Rational;
use crate::error::{Error, Result};

pub(crate) struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    laurent: bool,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, vars: &'a [String], laurent: bool) -> Self {
        Parser { src, chars: src.chars().collect(), pos: 0, vars, laurent }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn parse(mut self) -> Result<Poly> {
        if self.peek().is_none() {
            return Err(self.err("empty expression"));
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly> {
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

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| self.err("division by a non-constant or zero"))?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let k: u32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
        let n = self.vars.len();
        if !neg {
            return Ok(base.pow(k, n));
        }
        if let Some(c) = base.as_constant() {
            if c.is_zero() {
                return Err(self.err("zero to a negative power"));
            }
            return Ok(Poly::constant(c.pow(-(k as i32)), n));
        }
        match base.terms() {
            [(e, c)] if self.laurent => {
                let exps: Exponents = e.iter().map(|&x| -x * k as i32).collect();
                Ok(Poly::monomial(exps, c.pow(-(k as i32))))
            }
            _ => Err(self.err("negative exponents are only allowed on Laurent monomials")),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let q: Rational = digits.parse().map_err(|_| self.err("bad number"))?;
                Ok(Poly::constant(q, n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Poly::var(i, n)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable {name:?}")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Formats a polynomial with the given variable names, terms descending in `order`.
pub(crate) fn format_poly(p: &Poly, vars: &[String], order: super::poly::MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (v, &k) in vars.iter().zip(e.iter()) {
            match k {
                0 => {}
                1 => factors.push(v.clone()),
                _ => factors.push(format!("{v}^{k}")),
            }
        }
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}
