//! Rational functions over GF(p) in a tagged variable.
//!
//! `Var::X` is the coordinate x of F = F_p(x). `Var::U(n)` is the
//! coordinate u of F_p(u) with u^(p^n) = x; each level is its own field and
//! values of different tags never mix implicitly. `embed` and `descend`
//! move between levels along the inseparable inclusions.

use super::poly::Poly;
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    U(u32),
}

impl Var {
    /// Level-n variable; level 0 is x itself.
    pub fn u(level: u32) -> Var {
        if level == 0 {
            Var::X
        } else {
            Var::U(level)
        }
    }

    pub fn level(&self) -> u32 {
        match self {
            Var::X => 0,
            Var::U(n) => *n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Var::X => "x",
            Var::U(_) => "u",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::U(n) => write!(f, "u[{n}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    var: Var,
}

pub fn ratfun_normalize(num: Poly, den: Poly, var: Var) -> Result<RationalFunction> {
    RationalFunction::new(num, den, var)
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly, var: Var) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = den.p();
        if num.is_zero() {
            return Ok(Self::zero(p, var));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g), den.div_exact(&g));
        let lc = d.lead();
        if lc != 1 {
            let inv = super::prime::inv_mod(lc, p);
            n = n.scale(inv);
            d = d.scale(inv);
        }
        Ok(RationalFunction { num: n, den: d, var })
    }

    pub fn from_poly(num: Poly, var: Var) -> Self {
        let p = num.p();
        RationalFunction { num, den: Poly::one(p), var }
    }

    pub fn zero(p: u32, var: Var) -> Self {
        RationalFunction { num: Poly::zero(p), den: Poly::one(p), var }
    }

    pub fn one(p: u32, var: Var) -> Self {
        Self::constant(p, 1, var)
    }

    pub fn constant(p: u32, c: i64, var: Var) -> Self {
        Self::from_poly(Poly::constant(p, c), var)
    }

    /// The variable itself.
    pub fn gen(p: u32, var: Var) -> Self {
        Self::from_poly(Poly::x(p), var)
    }

    pub fn p(&self) -> u32 {
        self.den.p()
    }
    pub fn var(&self) -> Var {
        self.var
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    /// Constant value in GF(p) if this is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return Err(Error::VariableMismatch(self.var.to_string(), o.var.to_string()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone(), self.var);
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
            self.var,
        )
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.p(), self.var));
        }
        // Cross-cancel first to keep degrees small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).mul(&o.num.div_exact(&g2));
        let d = self.den.div_exact(&g2).mul(&o.den.div_exact(&g1));
        Self::new(n, d, self.var)
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone(), self.var)
    }

    fn neg_ref(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone(), var: self.var }
    }

    pub fn scale(&self, k: u32) -> Self {
        if k % self.p() == 0 {
            return Self::zero(self.p(), self.var);
        }
        RationalFunction { num: self.num.scale(k), den: self.den.clone(), var: self.var }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k), var: self.var })
    }

    /// Derivative with respect to the own variable.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den), self.var).expect("nonzero denominator")
    }

    /// Image under the inclusion into a level >= the current one.
    pub fn embed(&self, to: Var) -> Result<Self> {
        let (a, b) = (self.var.level(), to.level());
        if b < a {
            return Err(Error::VariableMismatch(self.var.to_string(), to.to_string()));
        }
        let k = (self.p() as usize).pow(b - a);
        Ok(RationalFunction { num: self.num.inflate(k), den: self.den.inflate(k), var: to })
    }

    /// Preimage under `embed` if this lies in the smaller field.
    pub fn descend(&self, to: Var) -> Option<Self> {
        let (a, b) = (self.var.level(), to.level());
        if b > a {
            return None;
        }
        let k = (self.p() as usize).pow(a - b);
        Some(RationalFunction { num: self.num.deflate(k)?, den: self.den.deflate(k)?, var: to })
    }

    /// Same coefficients, different tag.
    pub fn retag(&self, to: Var) -> Self {
        RationalFunction { num: self.num.clone(), den: self.den.clone(), var: to }
    }

    /// True iff this is a p-th power in its own field.
    pub fn is_pth_power(&self) -> bool {
        let p = self.p() as usize;
        self.num.deflate(p).is_some() && self.den.deflate(p).is_some()
    }

    /// Order of vanishing at var = 0.
    pub fn ord_at_zero(&self) -> Result<i64> {
        let n = self.num.trailing_zeros().ok_or(Error::ZeroTensor)?;
        let d = self.den.trailing_zeros().expect("nonzero denominator");
        Ok(n as i64 - d as i64)
    }

    /// Evaluate at a point of GF(p); `None` at a pole.
    pub fn eval(&self, a: u32) -> Option<u32> {
        let d = self.den.eval(a);
        (d != 0).then(|| super::prime::mul_mod(self.num.eval(a), super::prime::inv_mod(d, self.p()), self.p()))
    }
}

/// x-variable root: g(u) with g^(p^n) = f(u^(p^n)), realized by renaming.
pub fn pn_th_root(f: &RationalFunction, n: u32) -> Result<RationalFunction> {
    if f.var() != Var::X {
        return Err(Error::VariableMismatch(f.var().to_string(), Var::X.to_string()));
    }
    Ok(f.retag(Var::u(n)))
}

/// Embeds both to the larger level.
pub fn unify(a: &RationalFunction, b: &RationalFunction) -> Result<(RationalFunction, RationalFunction)> {
    let v = if a.var().level() >= b.var().level() { a.var() } else { b.var() };
    Ok((a.embed(v)?, b.embed(v)?))
}

impl Ord for RationalFunction {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.var, &self.num, &self.den).cmp(&(o.var, &o.num, &o.den))
    }
}

impl PartialOrd for RationalFunction {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        if self.den.is_one() {
            write!(f, "{}", self.num.to_string_var(v))
        } else {
            write!(f, "({})/({})", self.num.to_string_var(v), self.den.to_string_var(v))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                self.$try(o).expect(concat!("rational function ", stringify!($m)))
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(p: u32, n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_coeffs(p, n), Poly::from_coeffs(p, d), Var::X).unwrap()
    }

    #[test]
    fn normalize_cancels() {
        let r = rf(3, &[-1, 0, 1], &[-1, 1]);
        assert_eq!(r, rf(3, &[1, 1], &[1]));
        assert!(rf(3, &[0], &[0, 1]).is_zero());
        assert_eq!(rf(3, &[0], &[0, 1]).den(), &Poly::one(3));
    }

    #[test]
    fn normalize_scales_denominator() {
        // Oracle: a*d = b*c against the unnormalized pair (2x, 2).
        let r = rf(5, &[0, 2], &[2]);
        let (a, b) = (Poly::from_coeffs(5, &[0, 2]), Poly::from_coeffs(5, &[2]));
        assert_eq!(a.mul(r.den()), b.mul(r.num()));
        assert_eq!(r, rf(5, &[0, 1], &[1]));
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(
            RationalFunction::new(Poly::x(3), Poly::zero(3), Var::X),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixing_tags_is_an_error() {
        let a = RationalFunction::gen(3, Var::X);
        let b = RationalFunction::gen(3, Var::U(1));
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch(..))));
    }

    #[test]
    fn root_oracle() {
        // u^2 + u raised to p and u^p replaced by x.
        let f = rf(2, &[0, 1, 1], &[1]);
        let g = pn_th_root(&f, 1).unwrap();
        assert_eq!(g.to_string(), "u^2 + u");
        let back = g.pow(2).unwrap().descend(Var::X).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn embed_descend() {
        let x = RationalFunction::gen(3, Var::X);
        let e = x.embed(Var::U(2)).unwrap();
        assert_eq!(e.num().degree(), Some(9));
        assert_eq!(e.descend(Var::X), Some(x));
        assert_eq!(RationalFunction::gen(3, Var::U(2)).descend(Var::U(1)), None);
    }

    #[test]
    fn ord_and_display() {
        let r = rf(5, &[0, 0, 1], &[0, 1, 1]);
        assert_eq!(r.ord_at_zero().unwrap(), 1);
        assert_eq!(r.to_string(), "(x)/(x + 1)");
    }
}
