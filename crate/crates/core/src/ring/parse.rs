//! Expression grammar shared by polynomials and rational functions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! `i` is the imaginary unit. Juxtaposition is not multiplication. In a
//! polynomial context `/` only accepts a nonzero constant divisor.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{GaussRat, Poly, RingError, Vars};
use crate::fractions::RatFunc;

/// Parsed expression tree; byte offsets are kept for error messages.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    I,
    Ident { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn syntax(pos: usize, msg: impl Into<String>) -> RingError {
    RingError::SyntaxError { pos, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, RingError> {
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
            let n: BigInt = src[start..i].parse().map_err(|_| syntax(start, "bad integer"))?;
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(syntax(i, alloc::format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, RingError> {
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

    fn term(&mut self) -> Result<Expr, RingError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.here();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, RingError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, RingError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.here();
            match self.toks.get(self.pos) {
                Some((Tok::Int(n), _)) => {
                    let e: u32 = n.try_into().map_err(|_| syntax(at, "exponent too large"))?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(syntax(at, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, RingError> {
        let at = self.here();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Int(n), _)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some((Tok::Ident(name), p)) => {
                self.pos += 1;
                if name == "i" {
                    Ok(Expr::I)
                } else {
                    Ok(Expr::Ident { name, pos: p })
                }
            }
            Some((Tok::Sym('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.here(), "expected `)`"));
                }
                Ok(e)
            }
            Some((Tok::Sym(c), _)) => Err(syntax(at, alloc::format!("unexpected `{c}`"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses text into an expression tree without resolving identifiers.
pub fn parse_expr(src: &str) -> Result<Expr, RingError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates to a polynomial. Identifiers are looked up in `lookup` first, then in `vars`.
    pub fn eval_poly(&self, vars: &Vars, lookup: &dyn Fn(&str) -> Option<Poly>) -> Result<Poly, RingError> {
        Ok(match self {
            Expr::Int(n) => Poly::constant(vars, GaussRat::from_bigint(n.clone())),
            Expr::I => Poly::constant(vars, GaussRat::i()),
            Expr::Ident { name, .. } => match lookup(name) {
                Some(p) => p.embed(vars)?,
                None => Poly::var_named(vars, name)?,
            },
            Expr::Neg(a) => -&a.eval_poly(vars, lookup)?,
            Expr::Add(a, b) => a.eval_poly(vars, lookup)?.checked_add(&b.eval_poly(vars, lookup)?)?,
            Expr::Sub(a, b) => a.eval_poly(vars, lookup)?.checked_sub(&b.eval_poly(vars, lookup)?)?,
            Expr::Mul(a, b) => a.eval_poly(vars, lookup)?.checked_mul(&b.eval_poly(vars, lookup)?)?,
            Expr::Div(a, b, at) => {
                let d = b.eval_poly(vars, lookup)?;
                let c = d.constant_value().ok_or_else(|| syntax(*at, "division by a non-constant in a polynomial"))?;
                let inv = c.inv().ok_or(RingError::DivideByZero)?;
                a.eval_poly(vars, lookup)?.scale(&inv)
            }
            Expr::Pow(a, e) => a.eval_poly(vars, lookup)?.pow(*e),
        })
    }

    /// Evaluates to a rational function; `/` is field division.
    pub fn eval_ratfunc(&self, vars: &Vars, lookup: &dyn Fn(&str) -> Option<RatFunc>) -> Result<RatFunc, RingError> {
        Ok(match self {
            Expr::Int(n) => RatFunc::from_poly(Poly::constant(vars, GaussRat::from_bigint(n.clone()))),
            Expr::I => RatFunc::from_poly(Poly::constant(vars, GaussRat::i())),
            Expr::Ident { name, .. } => match lookup(name) {
                Some(r) => r.embed(vars)?,
                None => RatFunc::from_poly(Poly::var_named(vars, name)?),
            },
            Expr::Neg(a) => -&a.eval_ratfunc(vars, lookup)?,
            Expr::Add(a, b) => a.eval_ratfunc(vars, lookup)?.checked_add(&b.eval_ratfunc(vars, lookup)?)?,
            Expr::Sub(a, b) => a.eval_ratfunc(vars, lookup)?.checked_sub(&b.eval_ratfunc(vars, lookup)?)?,
            Expr::Mul(a, b) => a.eval_ratfunc(vars, lookup)?.checked_mul(&b.eval_ratfunc(vars, lookup)?)?,
            Expr::Div(a, b, _) => a.eval_ratfunc(vars, lookup)?.checked_div(&b.eval_ratfunc(vars, lookup)?)?,
            Expr::Pow(a, e) => a.eval_ratfunc(vars, lookup)?.pow(*e),
        })
    }

    /// Identifiers occurring in the expression, in first-occurrence order.
    pub fn identifiers(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) | Expr::I => {}
            Expr::Ident { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_idents(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.collect_idents(out);
                b.collect_idents(out);
            }
        }
    }
}

/// Parses and expands a polynomial over `vars`.
pub fn parse_poly(src: &str, vars: &Vars) -> Result<Poly, RingError> {
    parse_expr(src)?.eval_poly(vars, &|_| None)
}

/// Parses a rational function over `vars`.
pub fn parse_ratfunc(src: &str, vars: &Vars) -> Result<RatFunc, RingError> {
    parse_expr(src)?.eval_ratfunc(vars, &|_| None)
}
