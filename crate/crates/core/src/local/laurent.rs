//! Truncated Laurent series over F = F_p(x) with explicit precision.
//!
//! A series is a sparse map from exponents to nonzero coefficients together
//! with a precision N: coefficients at exponents >= N are unknown. `EXACT`
//! marks literals carrying no truncation; those only occur at input
//! boundaries and are truncated to a working precision before use.

use crate::algebra::{RationalFunction, Var};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    p: u32,
    terms: BTreeMap<i64, RationalFunction>,
    prec: i64,
}

impl LaurentSeries {
    pub fn zero(p: u32, prec: i64) -> Self {
        LaurentSeries { p, terms: BTreeMap::new(), prec }
    }

    pub fn one(p: u32, prec: i64) -> Self {
        Self::monomial(RationalFunction::one(p, Var::X), 0, prec)
    }

    /// c·t^k.
    pub fn monomial(c: RationalFunction, k: i64, prec: i64) -> Self {
        let mut s = Self::zero(c.p(), prec);
        s.insert(k, c);
        s
    }

    pub fn t_power(p: u32, k: i64, prec: i64) -> Self {
        Self::monomial(RationalFunction::one(p, Var::X), k, prec)
    }

    pub fn constant(c: RationalFunction, prec: i64) -> Self {
        Self::monomial(c, 0, prec)
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (i64, RationalFunction)>, prec: i64) -> Self {
        let mut s = Self::zero(p, prec);
        for (k, c) in terms {
            let cur = s.coefficient(k);
            s.insert(k, &cur + &c);
        }
        s
    }

    fn insert(&mut self, k: i64, c: RationalFunction) {
        debug_assert_eq!(c.var(), Var::X);
        if k >= self.prec || c.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, c);
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn precision(&self) -> i64 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }
    pub fn terms(&self) -> &BTreeMap<i64, RationalFunction> {
        &self.terms
    }

    pub fn coefficient(&self, k: i64) -> RationalFunction {
        self.terms.get(&k).cloned().unwrap_or_else(|| RationalFunction::zero(self.p, Var::X))
    }

    /// No stored terms (zero as far as the precision can tell).
    pub fn is_zero_mod_precision(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn laurent_valuation(&self) -> Result<i64> {
        self.min_exponent()
            .ok_or_else(|| Error::PrecisionExhausted(format!("no known terms below t^{}", self.prec)))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Certified lower bound for the valuation.
    pub fn valuation_bound(&self) -> i64 {
        self.min_exponent().unwrap_or(self.prec)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        LaurentSeries {
            p: self.p,
            terms: self.terms.range(..prec).map(|(k, c)| (*k, c.clone())).collect(),
            prec,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let mut r = self.truncate(prec);
        for (k, c) in o.terms.range(..prec) {
            let cur = r.coefficient(*k);
            r.insert(*k, &cur + c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { p: self.p, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = sat_add(self.prec, o.valuation_bound()).min(sat_add(o.prec, self.valuation_bound()));
        let mut acc: BTreeMap<i64, RationalFunction> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                let k = i + j;
                if k >= prec {
                    break;
                }
                let t = a * b;
                match acc.get_mut(&k) {
                    Some(c) => *c = &*c + &t,
                    None => {
                        acc.insert(k, t);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentSeries { p: self.p, terms: acc, prec }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.p, self.prec);
        }
        LaurentSeries { p: self.p, terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(), prec: self.prec }
    }

    /// Multiplication by t^k (exact, shifts the precision too).
    pub fn mul_t(&self, k: i64) -> Self {
        LaurentSeries {
            p: self.p,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            prec: sat_add(self.prec, k),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.p, EXACT);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Inverse of a series with a certified leading term.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.laurent_valuation()?;
        let lead_inv = self.terms[&v].inv()?;
        // Relative precision carries over: result known below prec - 2v.
        let rel = self.prec - v;
        if rel >= EXACT / 2 {
            return if self.terms.len() == 1 {
                Ok(Self::monomial(lead_inv, -v, EXACT))
            } else {
                Err(Error::Precondition("inverse of a non-monomial exact series needs a precision".into()))
            };
        }
        let unit = self.mul_t(-v);
        let mut inv = BTreeMap::new();
        for k in 0..rel {
            let mut s = if k == 0 { RationalFunction::one(self.p, Var::X) } else { RationalFunction::zero(self.p, Var::X) };
            for (i, a) in unit.terms.range(1..k + 1) {
                if let Some(b) = inv.get(&(k - i)) {
                    s = &s - &(a * b);
                }
            }
            let c = &s * &lead_inv;
            if !c.is_zero() {
                inv.insert(k, c);
            }
        }
        Ok(LaurentSeries { p: self.p, terms: inv, prec: rel }.mul_t(-v))
    }

    /// Difference vanishes to the joint precision.
    pub fn eq_within(&self, o: &Self) -> bool {
        self.sub(o).is_zero_mod_precision()
    }
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT.max(a.saturating_add(b).min(EXACT))
    } else {
        a + b
    }
}

pub fn laurent_valuation(s: &LaurentSeries) -> Result<i64> {
    s.laurent_valuation()
}

/// Formats a coefficient so that the literal grammar reads it back.
pub(crate) fn coeff_atom(c: &RationalFunction) -> String {
    let s = c.to_string();
    let simple = c.den().is_one() && c.num().coeffs().iter().filter(|&&a| a != 0).count() == 1;
    if simple {
        s
    } else if c.den().is_one() {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in &self.terms {
            let t = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            parts.push(match (c.is_one(), *k) {
                (_, 0) => coeff_atom(c),
                (true, _) => t,
                _ => format!("{}*{t}", coeff_atom(c)),
            });
        }
        if !self.is_exact() {
            parts.push(format!("O(t^{})", self.prec));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn x(p: u32) -> RationalFunction {
        RationalFunction::gen(p, Var::X)
    }

    #[test]
    fn valuations() {
        let s = LaurentSeries::t_power(3, 2, 10).add(&LaurentSeries::t_power(3, 3, 10));
        assert_eq!(s.laurent_valuation().unwrap(), 2);
        let one = RationalFunction::one(3, Var::X);
        let c = RationalFunction::new(Poly::x(3), Poly::x(3).add(&Poly::one(3)), Var::X).unwrap();
        assert_eq!(LaurentSeries::monomial(c, -1, 10).laurent_valuation().unwrap(), -1);
        let z = LaurentSeries::zero(3, 5);
        assert!(matches!(z.laurent_valuation(), Err(Error::PrecisionExhausted(_))));
        let _ = one;
    }

    #[test]
    fn precision_propagation() {
        let a = LaurentSeries::t_power(5, 1, 10);
        let b = LaurentSeries::t_power(5, 2, 6);
        let c = a.mul(&b);
        assert_eq!(c.precision(), 7);
        assert_eq!(a.add(&b).precision(), 6);
    }

    #[test]
    fn inverse_roundtrip() {
        let p = 3;
        let s = LaurentSeries::from_terms(p, [(0, RationalFunction::one(p, Var::X)), (1, x(p))], 12);
        let inv = s.inverse().unwrap();
        let prod = s.mul(&inv);
        assert!(prod.sub(&LaurentSeries::one(p, 100)).is_zero_mod_precision());
        assert_eq!(prod.precision(), 12);
    }

    #[test]
    fn display() {
        let p = 3;
        let s = LaurentSeries::from_terms(
            p,
            [(-1, x(p)), (0, RationalFunction::one(p, Var::X)), (3, x(p).scale(2))],
            6,
        );
        assert_eq!(s.to_string(), "x*t^-1 + 1 + 2*x*t^3 + O(t^6)");
    }
}
