//! Polynomials whose coefficients are rational functions of one fixed tag.

use super::factor::monic_divisors;
use super::poly::Poly;
use super::ratfun::{RationalFunction, Var};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EPoly {
    p: u32,
    var: Var,
    c: Vec<RationalFunction>,
}

impl EPoly {
    pub fn new(p: u32, var: Var, mut c: Vec<RationalFunction>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        debug_assert!(c.iter().all(|a| a.var() == var));
        EPoly { p, var, c }
    }

    pub fn zero(p: u32, var: Var) -> Self {
        EPoly { p, var, c: Vec::new() }
    }

    pub fn constant(a: RationalFunction) -> Self {
        EPoly::new(a.p(), a.var(), vec![a])
    }

    /// T + a.
    pub fn linear(a: RationalFunction) -> Self {
        let one = RationalFunction::one(a.p(), a.var());
        EPoly::new(a.p(), a.var(), vec![a, one])
    }

    /// T^k.
    pub fn monomial(p: u32, var: Var, k: usize) -> Self {
        let mut c = vec![RationalFunction::zero(p, var); k + 1];
        c[k] = RationalFunction::one(p, var);
        EPoly { p, var, c }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn var(&self) -> Var {
        self.var
    }
    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> RationalFunction {
        self.c.get(i).cloned().unwrap_or_else(|| RationalFunction::zero(self.p, self.var))
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn add(&self, o: &EPoly) -> EPoly {
        let n = self.c.len().max(o.c.len());
        EPoly::new(self.p, self.var, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &EPoly) -> EPoly {
        let n = self.c.len().max(o.c.len());
        EPoly::new(self.p, self.var, (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, a: &RationalFunction) -> EPoly {
        EPoly::new(self.p, self.var, self.c.iter().map(|c| c * a).collect())
    }

    pub fn mul(&self, o: &EPoly) -> EPoly {
        if self.is_zero() || o.is_zero() {
            return EPoly::zero(self.p, self.var);
        }
        let mut c = vec![RationalFunction::zero(self.p, self.var); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        EPoly::new(self.p, self.var, c)
    }

    pub fn pow(&self, e: u32) -> EPoly {
        (0..e).fold(EPoly::constant(RationalFunction::one(self.p, self.var)), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &RationalFunction) -> RationalFunction {
        self.c
            .iter()
            .rev()
            .fold(RationalFunction::zero(self.p, self.var), |acc, a| &(&acc * x) + a)
    }

    /// self(g(T)).
    pub fn compose(&self, g: &EPoly) -> EPoly {
        self.c
            .iter()
            .rev()
            .fold(EPoly::zero(self.p, self.var), |acc, a| acc.mul(g).add(&EPoly::constant(a.clone())))
    }

    /// Division by a monic-or-not nonzero divisor.
    pub fn div_rem(&self, d: &EPoly) -> Result<(EPoly, EPoly)> {
        let dn = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.c[dn].inv()?;
        let mut r = self.c.clone();
        if r.len() <= dn {
            return Ok((EPoly::zero(self.p, self.var), self.clone()));
        }
        let mut q = vec![RationalFunction::zero(self.p, self.var); r.len() - dn];
        for k in (0..q.len()).rev() {
            let top = r[k + dn].clone();
            if top.is_zero() {
                continue;
            }
            let f = &top * &lead_inv;
            for (i, di) in d.c.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&f * di);
            }
            q[k] = f;
        }
        r.truncate(dn);
        Ok((EPoly::new(self.p, self.var, q), EPoly::new(self.p, self.var, r)))
    }

    /// Only T^(p^k) monomials occur.
    pub fn is_additive(&self) -> bool {
        let p = self.p as usize;
        self.c.iter().enumerate().all(|(i, a)| a.is_zero() || is_power_of(i, p))
    }

    /// Roots in the coefficient field with multiplicities, by the rational root
    /// theorem over GF(p)[var]. Roots outside the field are not reported.
    pub fn roots(&self) -> Result<Vec<(RationalFunction, usize)>> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut out = Vec::new();
        let mut rest = self.clone();
        let zero = RationalFunction::zero(self.p, self.var);
        let mut k = 0;
        while rest.coeff(0).is_zero() && rest.degree().unwrap_or(0) > 0 {
            rest = EPoly::new(self.p, self.var, rest.c[1..].to_vec());
            k += 1;
        }
        if k > 0 {
            out.push((zero, k));
        }
        if rest.degree().unwrap_or(0) == 0 || n == k {
            return Ok(out);
        }
        let ints = rest.integral_coefficients();
        let c0 = &ints[0];
        let ct = ints.last().unwrap();
        let tops = monic_divisors(ct)?;
        let bottoms = monic_divisors(c0)?;
        for a in &bottoms {
            for b in &tops {
                if !a.gcd(b).is_one() {
                    continue;
                }
                for lam in 1..self.p {
                    let cand = RationalFunction::new(a.scale(lam), b.clone(), self.var)?;
                    let mut mult = 0;
                    loop {
                        if rest.degree().unwrap_or(0) == 0 || !rest.eval(&cand).is_zero() {
                            break;
                        }
                        let (q, r) = rest.div_rem(&EPoly::linear(-&cand))?;
                        debug_assert!(r.is_zero());
                        rest = q;
                        mult += 1;
                    }
                    if mult > 0 {
                        out.push((cand, mult));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Coefficients scaled by the common denominator into GF(p)[var].
    fn integral_coefficients(&self) -> Vec<Poly> {
        let mut l = Poly::one(self.p);
        for a in &self.c {
            let g = l.gcd(a.den());
            l = l.mul(&a.den().div_exact(&g));
        }
        self.c.iter().map(|a| a.num().mul(&l.div_exact(a.den()))).collect()
    }
}

pub fn is_power_of(mut i: usize, p: usize) -> bool {
    if i == 0 {
        return false;
    }
    while i % p == 0 {
        i /= p;
    }
    i == 1
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{i}"),
            };
            let coef = if a.den().is_one() && a.num().coeffs().iter().filter(|&&c| c != 0).count() == 1 {
                a.to_string()
            } else {
                format!("({a})")
            };
            parts.push(match (a.is_one(), i) {
                (_, 0) => coef,
                (true, _) => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}
