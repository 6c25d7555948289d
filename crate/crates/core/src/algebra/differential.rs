//! One-dimensional differential modules: c·(dx)^⊗m.

use super::ratfun::{unify, RationalFunction, Var};
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DifferentialForm {
    coefficient: RationalFunction,
    power: i64,
}

/// Elements of (Ω¹_F)^⊗m, possibly base-changed to F_p(u).
pub type DifferentialTensor = DifferentialForm;

impl DifferentialForm {
    pub fn new(coefficient: RationalFunction, power: i64) -> Self {
        DifferentialForm { coefficient, power }
    }

    pub fn scalar(c: RationalFunction) -> Self {
        Self::new(c, 0)
    }

    pub fn coefficient(&self) -> &RationalFunction {
        &self.coefficient
    }
    pub fn power(&self) -> i64 {
        self.power
    }
    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn tensor(&self, o: &Self) -> Result<Self> {
        let (a, b) = unify(&self.coefficient, &o.coefficient)?;
        Ok(Self::new(a.try_mul(&b)?, self.power + o.power))
    }

    pub fn tensor_power(&self, e: i64) -> Result<Self> {
        Ok(Self::new(self.coefficient.pow(e)?, self.power * e))
    }

    pub fn scale(&self, c: &RationalFunction) -> Result<Self> {
        let (a, b) = unify(&self.coefficient, c)?;
        Ok(Self::new(a.try_mul(&b)?, self.power))
    }

    pub fn embed(&self, to: Var) -> Result<Self> {
        Ok(Self::new(self.coefficient.embed(to)?, self.power))
    }

    /// Coefficient moved down to F = F_p(x) if possible.
    pub fn descend_to_base(&self) -> Option<Self> {
        Some(Self::new(self.coefficient.descend(Var::X)?, self.power))
    }

    /// Equality after embedding both into a common level.
    pub fn same_as(&self, o: &Self) -> bool {
        self.power == o.power
            && unify(&self.coefficient, &o.coefficient).map(|(a, b)| a == b).unwrap_or(false)
    }

    /// Order of vanishing at x = 0; dx contributes nothing.
    pub fn ord(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroTensor);
        }
        let lvl = self.coefficient.var().level();
        let o = self.coefficient.ord_at_zero()?;
        let q = (self.coefficient.p() as i64).pow(lvl);
        if o % q != 0 {
            return Err(Error::NotInBaseField);
        }
        Ok(o / q)
    }
}

/// df = f'·dx.
pub fn differential(f: &RationalFunction) -> Result<DifferentialForm> {
    if f.var() != Var::X {
        return Err(Error::VariableMismatch(f.var().to_string(), Var::X.to_string()));
    }
    Ok(DifferentialForm::new(f.derivative(), 1))
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coefficient;
        let basis = match self.power {
            0 => return write!(f, "{c}"),
            1 => "dx".to_string(),
            m => format!("(dx)^{m}"),
        };
        let p = c.p();
        if c.is_one() {
            write!(f, "{basis}")
        } else if c.as_constant() == Some(p - 1) {
            write!(f, "-{basis}")
        } else if c.den().is_one() && c.num().coeffs().iter().filter(|&&a| a != 0).count() == 1 {
            write!(f, "{c}*{basis}")
        } else {
            write!(f, "({c})*{basis}")
        }
    }
}

#[derive(Serialize)]
struct FormJson<'a> {
    numerator: String,
    denominator: String,
    variable: &'a str,
    level: u32,
    power: i64,
    display: String,
}

impl Serialize for DifferentialForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = &self.coefficient;
        let v = c.var();
        FormJson {
            numerator: c.num().to_string_var(v.name()),
            denominator: c.den().to_string_var(v.name()),
            variable: v.name(),
            level: v.level(),
            power: self.power,
            display: self.to_string(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    #[test]
    fn basic() {
        let x = RationalFunction::gen(5, Var::X);
        assert_eq!(differential(&x).unwrap().to_string(), "dx");
        let xp = x.pow(5).unwrap();
        assert!(differential(&xp).unwrap().is_zero());
        let f = RationalFunction::from_poly(Poly::from_coeffs(5, &[0, 1, 0, 1]), Var::X);
        assert_eq!(differential(&f).unwrap().coefficient(), &RationalFunction::from_poly(Poly::from_coeffs(5, &[1, 0, 3]), Var::X));
    }

    #[test]
    fn ord() {
        let x = RationalFunction::gen(3, Var::X);
        let t = DifferentialForm::new(x.pow(2).unwrap(), 2);
        assert_eq!(t.ord().unwrap(), 2);
        assert_eq!(DifferentialForm::new(x.inv().unwrap(), 1).ord().unwrap(), -1);
        assert_eq!(DifferentialForm::new(RationalFunction::constant(3, -1, Var::X), 1).to_string(), "-dx");
        assert_eq!(DifferentialForm::new(RationalFunction::zero(3, Var::X), 1).ord(), Err(Error::ZeroTensor));
    }
}
