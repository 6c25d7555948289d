//! Graded symbols E^× ⊕ Z[t] ⊕ Z[dh̄] with Z[ζ_q] coefficients and their canonical form.
//!
//! A unit is presented through unique factorization in GF(p)[u]: its constant
//! factor contributes a discrete log (base the least primitive root, modulo
//! p - 1) and every monic irreducible factor gets its own coordinate.

use crate::algebra::factor::factor_with_seed;
use crate::algebra::prime::{discrete_log, primitive_root};
use crate::algebra::{CyclotomicInteger, Poly, RationalFunction, Var};
use crate::error::{Error, Result};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// [unit] + e_t·[t] + e_dh·[dh̄].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSymbol {
    pub unit: RationalFunction,
    pub t: i64,
    pub dh: i64,
}

impl GradedSymbol {
    pub fn new(unit: RationalFunction, t: i64, dh: i64) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::Precondition("symbols of zero are undefined".into()));
        }
        Ok(GradedSymbol { unit, t, dh })
    }

    pub fn unit(unit: RationalFunction) -> Result<Self> {
        Self::new(unit, 0, 0)
    }

    /// [x] + [y] = [xy].
    pub fn combine(&self, o: &Self) -> Result<Self> {
        Self::new(self.unit.try_mul(&o.unit)?, self.t + o.t, self.dh + o.dh)
    }
}

/// Σ coefficient·symbol, the raw form before canonicalization.
#[derive(Clone, Debug)]
pub struct SymbolSum {
    pub p: u32,
    pub m: u32,
    pub terms: Vec<(CyclotomicInteger, GradedSymbol)>,
}

impl SymbolSum {
    pub fn new(p: u32, m: u32) -> Self {
        SymbolSum { p, m, terms: Vec::new() }
    }

    pub fn push(&mut self, c: CyclotomicInteger, s: GradedSymbol) {
        self.terms.push((c, s));
    }

    pub fn canonicalize(&self, var: Var, seed: u64) -> Result<CanonicalSymbolForm> {
        let mut out = CanonicalSymbolForm::zero(self.p, self.m, var);
        for (c, s) in &self.terms {
            out = out.add(&CanonicalSymbolForm::from_symbol(self.p, self.m, var, c, s, seed)?);
        }
        Ok(out)
    }
}

/// Unique presentation of an element of (E^× ⊕ Z[t] ⊕ Z[dh̄]) ⊗ Z[ζ_q].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSymbolForm {
    p: u32,
    m: u32,
    var: Var,
    /// Coefficient of the primitive root, reduced modulo p - 1.
    torsion: CyclotomicInteger,
    factors: BTreeMap<Poly, CyclotomicInteger>,
    t: CyclotomicInteger,
    dh: CyclotomicInteger,
}

impl CanonicalSymbolForm {
    pub fn zero(p: u32, m: u32, var: Var) -> Self {
        let z = CyclotomicInteger::zero(p, m);
        CanonicalSymbolForm { p, m, var, torsion: z.clone(), factors: BTreeMap::new(), t: z.clone(), dh: z }
    }

    /// c·[unit] in canonical form.
    pub fn from_unit(p: u32, m: u32, var: Var, c: &CyclotomicInteger, unit: &RationalFunction, seed: u64) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::Precondition("symbols of zero are undefined".into()));
        }
        let unit = unit.embed(var)?;
        let mut out = Self::zero(p, m, var);
        let num = factor_with_seed(unit.num(), seed)?;
        let den = factor_with_seed(unit.den(), seed)?;
        let lead = crate::algebra::prime::mul_mod(num.unit, crate::algebra::prime::inv_mod(den.unit, p), p);
        out.torsion = c.scale_i64(discrete_log(lead, p) as i64).reduce_mod(p - 1);
        for (f, e) in num.factors {
            out.add_factor(f, &c.scale_i64(e as i64));
        }
        for (f, e) in den.factors {
            out.add_factor(f, &c.scale_i64(-(e as i64)));
        }
        Ok(out)
    }

    pub fn from_symbol(p: u32, m: u32, var: Var, c: &CyclotomicInteger, s: &GradedSymbol, seed: u64) -> Result<Self> {
        let mut out = Self::from_unit(p, m, var, c, &s.unit, seed)?;
        out.t = c.scale_i64(s.t);
        out.dh = c.scale_i64(s.dh);
        Ok(out)
    }

    /// c·[t].
    pub fn t_symbol(p: u32, m: u32, var: Var, c: &CyclotomicInteger) -> Self {
        let mut out = Self::zero(p, m, var);
        out.t = c.clone();
        out
    }

    /// c·[dh̄].
    pub fn dh_symbol(p: u32, m: u32, var: Var, c: &CyclotomicInteger) -> Self {
        let mut out = Self::zero(p, m, var);
        out.dh = c.clone();
        out
    }

    fn add_factor(&mut self, f: Poly, c: &CyclotomicInteger) {
        let cur = self.factors.remove(&f).unwrap_or_else(|| CyclotomicInteger::zero(self.p, self.m));
        let s = cur.add(c);
        if !s.is_zero() {
            self.factors.insert(f, s);
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn var(&self) -> Var {
        self.var
    }
    pub fn torsion(&self) -> &CyclotomicInteger {
        &self.torsion
    }
    pub fn factors(&self) -> &BTreeMap<Poly, CyclotomicInteger> {
        &self.factors
    }
    pub fn t_coefficient(&self) -> &CyclotomicInteger {
        &self.t
    }
    pub fn dh_coefficient(&self) -> &CyclotomicInteger {
        &self.dh
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.is_zero() && self.factors.is_empty() && self.t.is_zero() && self.dh.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.p, self.m, self.var), (o.p, o.m, o.var), "symbol forms over different rings");
        let mut out = self.clone();
        out.torsion = self.torsion.add(&o.torsion).reduce_mod(self.p - 1);
        for (f, c) in &o.factors {
            out.add_factor(f.clone(), c);
        }
        out.t = self.t.add(&o.t);
        out.dh = self.dh.add(&o.dh);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&CyclotomicInteger::from_int(self.p, self.m, -1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &CyclotomicInteger) -> Self {
        let mut out = Self::zero(self.p, self.m, self.var);
        out.torsion = self.torsion.mul(k).reduce_mod(self.p - 1);
        for (f, c) in &self.factors {
            out.add_factor(f.clone(), &c.mul(k));
        }
        out.t = self.t.mul(k);
        out.dh = self.dh.mul(k);
        out
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&CyclotomicInteger::from_int(self.p, self.m, k))
    }

    /// The same element over E' ⊃ E with tag `to`: factors P(u) become P(u')^(p^k).
    pub fn embed_units(&self, to: Var) -> Result<Self> {
        let k = to
            .level()
            .checked_sub(self.var.level())
            .ok_or_else(|| Error::VariableMismatch(self.var.to_string(), to.to_string()))?;
        let mut out = self.clone();
        out.var = to;
        if k > 0 {
            let e = (self.p as i64).pow(k);
            out.factors = self.factors.iter().map(|(f, c)| (f.clone(), c.scale_i64(e))).collect();
        }
        Ok(out)
    }

    /// The unit part with rational-integer exponents, as an element of E.
    pub fn unit_value(&self) -> Option<RationalFunction> {
        let g = primitive_root(self.p);
        let tor = self.torsion.as_i64()?;
        let mut num = Poly::constant(self.p, crate::algebra::prime::pow_mod(g, tor.rem_euclid((self.p - 1).max(1) as i64) as u64, self.p) as i64);
        let mut den = Poly::one(self.p);
        for (f, c) in &self.factors {
            let e = c.as_i64()?;
            if e > 0 {
                num = num.mul(&f.pow(e as u64));
            } else {
                den = den.mul(&f.pow((-e) as u64));
            }
        }
        RationalFunction::new(num, den, self.var).ok()
    }

    fn coeff_str(c: &CyclotomicInteger) -> String {
        let s = c.to_string();
        if s.contains(' ') {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for CanonicalSymbolForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let v = self.var.name();
        if !self.torsion.is_zero() {
            parts.push(format!("{}[{}]", Self::coeff_str(&self.torsion), primitive_root(self.p)));
        }
        for (q, c) in &self.factors {
            parts.push(format!("{}[{}]", Self::coeff_str(c), q.to_string_var(v)));
        }
        if !self.t.is_zero() {
            parts.push(format!("{}[t]", Self::coeff_str(&self.t)));
        }
        if !self.dh.is_zero() {
            parts.push(format!("{}[dh]", Self::coeff_str(&self.dh)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

struct Factors<'a>(&'a BTreeMap<Poly, CyclotomicInteger>, &'a str);

impl Serialize for Factors<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (f, c) in self.0 {
            m.serialize_entry(&f.to_string_var(self.1), c)?;
        }
        m.end()
    }
}

impl Serialize for CanonicalSymbolForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CanonicalSymbolForm", 6)?;
        st.serialize_field("display", &self.to_string())?;
        st.serialize_field("torsion", &self.torsion)?;
        st.serialize_field("factors", &Factors(&self.factors, self.var.name()))?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("dh", &self.dh)?;
        st.serialize_field("level", &self.var.level())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_canonicalize() {
        let p = 3;
        let v = Var::U(1);
        let one = CyclotomicInteger::one(p, 1);
        let u = RationalFunction::gen(p, v);
        let two = RationalFunction::constant(p, 2, v);
        // [2u] - [u] = [2]
        let a = CanonicalSymbolForm::from_unit(p, 1, v, &one, &(&two * &u), 0).unwrap();
        let b = CanonicalSymbolForm::from_unit(p, 1, v, &one, &u, 0).unwrap();
        let d = a.sub(&b);
        assert!(d.factors().is_empty());
        assert_eq!(d.torsion().as_i64(), Some(1));
        // 2·[2] = [4] = [1] = 0
        assert!(d.scale_i64(2).is_zero());
        assert_eq!(d.unit_value().unwrap(), two);
    }

    #[test]
    fn embedding_multiplies_exponents() {
        let p = 2;
        let one = CyclotomicInteger::one(p, 1);
        let x1 = &RationalFunction::gen(p, Var::U(1)) + &RationalFunction::one(p, Var::U(1));
        let a = CanonicalSymbolForm::from_unit(p, 1, Var::U(1), &one, &x1, 0).unwrap();
        let b = a.embed_units(Var::U(2)).unwrap();
        let direct = CanonicalSymbolForm::from_unit(p, 1, Var::U(2), &one, &x1.embed(Var::U(2)).unwrap(), 0).unwrap();
        assert_eq!(b, direct);
    }
}
