//! Arithmetic expressions in x, t, h, u with O(t^k) precision terms.

use ramcc_core::algebra::{RationalFunction, Var};
use ramcc_core::local::{LaurentSeries, EXACT};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected {}", self.line, self.col, self.expected)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(char, usize),
    BigO(i64, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(char),
    BigO,
    Op(char),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

/// Parses `text`, reporting columns relative to `offset` on `line`.
pub fn parse_expr(text: &str, line: usize, offset: usize) -> Result<Expr, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse().map_err(|_| ParseError { line, col, expected: "an integer that fits in 64 bits".into() })?;
            toks.push((Tok::Int(v), col));
        } else if matches!(c, 'x' | 't' | 'h' | 'u') {
            toks.push((Tok::Ident(c), col));
            i += 1;
        } else if c == 'O' {
            toks.push((Tok::BigO, col));
            i += 1;
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ParseError { line, col, expected: "one of + - * / ^ ( ) an integer or x t h u O".into() });
        }
    }
    let mut p = Parser { toks, pos: 0, line, end: offset + chars.len() };
    let e = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(p.err("an operator or the end of the expression"));
    }
    Ok(e)
}

impl Parser {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }
    fn err(&self, expected: &str) -> ParseError {
        ParseError { line: self.line, col: self.col(), expected: expected.into() }
    }
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }
    fn expect_op(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("'{c}'")))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.product()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let r = self.product()?;
            e = if c == '+' { Expr::Add(e.into(), r.into()) } else { Expr::Sub(e.into(), r.into()) };
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            let col = self.col();
            self.pos += 1;
            let r = self.unary()?;
            e = if c == '*' { Expr::Mul(e.into(), r.into()) } else { Expr::Div(e.into(), r.into(), col) };
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(self.unary()?.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            let col = self.col();
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(Expr::Pow(base.into(), e, col));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = self.peek_op() == Some('-');
        if neg {
            self.pos += 1;
        }
        match self.toks.get(self.pos) {
            Some((Tok::Int(v), _)) => {
                self.pos += 1;
                Ok(if neg { -v } else { *v })
            }
            _ => Err(self.err("an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, col) = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("a term"))?;
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::Ident(c) => Ok(Expr::Var(c, col)),
            Tok::BigO => {
                self.expect_op('(')?;
                match self.toks.get(self.pos) {
                    Some((Tok::Ident('t'), _)) => self.pos += 1,
                    _ => return Err(self.err("t inside O(...)")),
                }
                let k = if self.peek_op() == Some('^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                self.expect_op(')')?;
                Ok(Expr::BigO(k, col))
            }
            Tok::Op('(') => {
                let e = self.sum()?;
                self.expect_op(')')?;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("a term"))
            }
        }
    }
}

/// A ring in which expressions are evaluated.
pub trait Algebra {
    type V: Clone;
    fn int(&self, v: i64) -> Self::V;
    fn var(&self, c: char) -> Option<Self::V>;
    fn big_o(&self, _k: i64) -> Option<Self::V> {
        None
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V, String>;
    fn pow(&self, a: &Self::V, e: i64) -> Result<Self::V, String>;
    fn names(&self) -> &'static str;
}

pub fn eval<A: Algebra>(alg: &A, e: &Expr, line: usize) -> Result<A::V, ParseError> {
    let err = |col: usize, expected: String| ParseError { line, col, expected };
    Ok(match e {
        Expr::Int(v) => alg.int(*v),
        Expr::Var(c, col) => alg.var(*c).ok_or_else(|| err(*col, format!("one of the variables {}", alg.names())))?,
        Expr::BigO(k, col) => alg.big_o(*k).ok_or_else(|| err(*col, "no precision term here".into()))?,
        Expr::Neg(a) => alg.neg(&eval(alg, a, line)?),
        Expr::Add(a, b) => alg.add(&eval(alg, a, line)?, &eval(alg, b, line)?),
        Expr::Sub(a, b) => alg.add(&eval(alg, a, line)?, &alg.neg(&eval(alg, b, line)?)),
        Expr::Mul(a, b) => alg.mul(&eval(alg, a, line)?, &eval(alg, b, line)?),
        Expr::Div(a, b, col) => alg.div(&eval(alg, a, line)?, &eval(alg, b, line)?).map_err(|m| err(*col, m))?,
        Expr::Pow(a, k, col) => alg.pow(&eval(alg, a, line)?, *k).map_err(|m| err(*col, m))?,
    })
}

/// Laurent series in t over F_p(x).
pub struct Series {
    pub p: u32,
}

impl Algebra for Series {
    type V = LaurentSeries;
    fn int(&self, v: i64) -> LaurentSeries {
        LaurentSeries::constant(RationalFunction::constant(self.p, v, Var::X), EXACT)
    }
    fn var(&self, c: char) -> Option<LaurentSeries> {
        match c {
            'x' => Some(LaurentSeries::constant(RationalFunction::gen(self.p, Var::X), EXACT)),
            't' => Some(LaurentSeries::t_power(self.p, 1, EXACT)),
            _ => None,
        }
    }
    fn big_o(&self, k: i64) -> Option<LaurentSeries> {
        Some(LaurentSeries::zero(self.p, k))
    }
    fn add(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.add(b)
    }
    fn neg(&self, a: &LaurentSeries) -> LaurentSeries {
        a.neg()
    }
    fn mul(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.mul(b)
    }
    fn div(&self, a: &LaurentSeries, b: &LaurentSeries) -> Result<LaurentSeries, String> {
        Ok(a.mul(&b.inverse().map_err(|e| format!("an invertible divisor ({e})"))?))
    }
    fn pow(&self, a: &LaurentSeries, e: i64) -> Result<LaurentSeries, String> {
        let b = if e < 0 { a.inverse().map_err(|e| format!("an invertible base ({e})"))? } else { a.clone() };
        Ok(b.pow(e.unsigned_abs() as u32))
    }
    fn names(&self) -> &'static str {
        "x, t"
    }
}

/// Polynomials in h with Laurent series coefficients, unreduced.
pub struct HPoly {
    pub p: u32,
}

impl Algebra for HPoly {
    type V = Vec<LaurentSeries>;
    fn int(&self, v: i64) -> Vec<LaurentSeries> {
        vec![Series { p: self.p }.int(v)]
    }
    fn var(&self, c: char) -> Option<Vec<LaurentSeries>> {
        if c == 'h' {
            return Some(vec![LaurentSeries::zero(self.p, EXACT), LaurentSeries::one(self.p, EXACT)]);
        }
        Series { p: self.p }.var(c).map(|s| vec![s])
    }
    fn big_o(&self, k: i64) -> Option<Vec<LaurentSeries>> {
        Some(vec![LaurentSeries::zero(self.p, k)])
    }
    fn add(&self, a: &Vec<LaurentSeries>, b: &Vec<LaurentSeries>) -> Vec<LaurentSeries> {
        let n = a.len().max(b.len());
        let z = LaurentSeries::zero(self.p, EXACT);
        (0..n).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect()
    }
    fn neg(&self, a: &Vec<LaurentSeries>) -> Vec<LaurentSeries> {
        a.iter().map(|s| s.neg()).collect()
    }
    fn mul(&self, a: &Vec<LaurentSeries>, b: &Vec<LaurentSeries>) -> Vec<LaurentSeries> {
        let mut out = vec![LaurentSeries::zero(self.p, EXACT); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    }
    fn div(&self, a: &Vec<LaurentSeries>, b: &Vec<LaurentSeries>) -> Result<Vec<LaurentSeries>, String> {
        if b.len() != 1 {
            return Err("a divisor free of h".into());
        }
        let inv = Series { p: self.p }.div(&Series { p: self.p }.int(1), &b[0])?;
        Ok(a.iter().map(|s| s.mul(&inv)).collect())
    }
    fn pow(&self, a: &Vec<LaurentSeries>, e: i64) -> Result<Vec<LaurentSeries>, String> {
        if e < 0 {
            return Err("a nonnegative exponent".into());
        }
        Ok((0..e).fold(self.int(1), |acc, _| self.mul(&acc, a)))
    }
    fn names(&self) -> &'static str {
        "x, t, h"
    }
}

/// Rational functions of u with u^(p^n) = x.
pub struct Residue {
    pub p: u32,
    pub n: u32,
}

impl Algebra for Residue {
    type V = RationalFunction;
    fn int(&self, v: i64) -> RationalFunction {
        RationalFunction::constant(self.p, v, Var::u(self.n))
    }
    fn var(&self, c: char) -> Option<RationalFunction> {
        match c {
            'u' => Some(RationalFunction::gen(self.p, Var::u(self.n))),
            'x' => RationalFunction::gen(self.p, Var::X).embed(Var::u(self.n)).ok(),
            _ => None,
        }
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        -a
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }
    fn div(&self, a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction, String> {
        a.try_div(b).map_err(|_| "a nonzero divisor".to_string())
    }
    fn pow(&self, a: &RationalFunction, e: i64) -> Result<RationalFunction, String> {
        a.pow(e).map_err(|_| "a nonzero base for a negative power".to_string())
    }
    fn names(&self) -> &'static str {
        if self.n == 0 {
            "x"
        } else {
            "x, u"
        }
    }
}
