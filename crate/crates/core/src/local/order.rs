//! Elements of the monogenic order O_L = O_K[h], stored in the basis 1, h, ..., h^(d-1).

use super::extension::ExtensionSpec;
use super::laurent::{LaurentSeries, EXACT};
use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct OrderElement {
    spec: Arc<ExtensionSpec>,
    c: Vec<LaurentSeries>,
}

impl PartialEq for OrderElement {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &o.spec) && self.c == o.c
    }
}

impl OrderElement {
    pub fn from_coords(spec: &Arc<ExtensionSpec>, c: Vec<LaurentSeries>) -> Result<Self> {
        if c.len() != spec.degree() {
            return Err(Error::Precondition(format!(
                "expected {} coordinates, got {}",
                spec.degree(),
                c.len()
            )));
        }
        let prec = spec.precision();
        Ok(OrderElement { spec: spec.clone(), c: c.into_iter().map(|s| s.truncate(prec)).collect() })
    }

    /// Coefficients of a polynomial in h of any degree, reduced mod f.
    pub fn from_poly(spec: &Arc<ExtensionSpec>, c: &[LaurentSeries]) -> Self {
        let h = Self::gen(spec);
        let mut acc = Self::zero(spec);
        for a in c.iter().rev() {
            acc = acc.mul(&h).add(&Self::from_base(spec, a.clone()));
        }
        acc
    }

    pub fn zero(spec: &Arc<ExtensionSpec>) -> Self {
        let p = spec.p();
        let prec = spec.precision();
        OrderElement { spec: spec.clone(), c: vec![LaurentSeries::zero(p, prec); spec.degree()] }
    }

    pub fn from_base(spec: &Arc<ExtensionSpec>, s: LaurentSeries) -> Self {
        let mut z = Self::zero(spec);
        z.c[0] = s.truncate(spec.precision());
        z
    }

    pub fn one(spec: &Arc<ExtensionSpec>) -> Self {
        Self::from_base(spec, LaurentSeries::one(spec.p(), EXACT))
    }

    /// The generator h.
    pub fn gen(spec: &Arc<ExtensionSpec>) -> Self {
        let mut z = Self::zero(spec);
        if spec.degree() == 1 {
            z.c[0] = spec.coeffs()[0].neg();
        } else {
            z.c[1] = LaurentSeries::one(spec.p(), spec.precision());
        }
        z
    }

    pub fn spec(&self) -> &Arc<ExtensionSpec> {
        &self.spec
    }
    pub fn coords(&self) -> &[LaurentSeries] {
        &self.c
    }

    fn same(&self, o: &Self) {
        assert!(Arc::ptr_eq(&self.spec, &o.spec), "order elements from different extensions");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same(o);
        OrderElement { spec: self.spec.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same(o);
        OrderElement { spec: self.spec.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        OrderElement { spec: self.spec.clone(), c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, s: &LaurentSeries) -> Self {
        OrderElement { spec: self.spec.clone(), c: self.c.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn scale_f(&self, r: &RationalFunction) -> Self {
        OrderElement { spec: self.spec.clone(), c: self.c.iter().map(|a| a.scale(r)).collect() }
    }

    pub fn mul_t(&self, k: i64) -> Self {
        OrderElement { spec: self.spec.clone(), c: self.c.iter().map(|a| a.mul_t(k)).collect() }
    }

    /// Product reduced modulo f.
    pub fn mul(&self, o: &Self) -> Self {
        self.same(o);
        let d = self.spec.degree();
        let p = self.spec.p();
        let mut r = vec![LaurentSeries::zero(p, EXACT); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] = r[i + j].add(&a.mul(b));
            }
        }
        let f = self.spec.coeffs();
        for k in (d..2 * d - 1).rev() {
            let top = std::mem::replace(&mut r[k], LaurentSeries::zero(p, EXACT));
            for (i, ai) in f.iter().enumerate() {
                if ai.is_zero_mod_precision() && ai.precision() >= top.precision() {
                    continue;
                }
                r[k - d + i] = r[k - d + i].sub(&top.mul(ai));
            }
        }
        r.truncate(d);
        let prec = self.spec.precision();
        OrderElement { spec: self.spec.clone(), c: r.into_iter().map(|s| s.truncate(prec)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.spec);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// This element's coordinate polynomial evaluated at `x` (so σ(a) = a.evaluate_at(σ(h))).
    pub fn evaluate_at(&self, x: &Self) -> Self {
        let mut acc = Self::zero(&x.spec);
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&Self::from_base(&x.spec, a.clone()));
        }
        acc
    }

    pub fn is_zero_mod_precision(&self) -> bool {
        self.c.iter().all(|a| a.is_zero_mod_precision())
    }

    pub fn eq_within(&self, o: &Self) -> bool {
        self.sub(o).is_zero_mod_precision()
    }

    /// Valuation via the coordinate minimum (e = 1 with an F-free residue basis).
    pub fn order_valuation(&self) -> Result<i64> {
        let m = self
            .c
            .iter()
            .filter_map(|a| a.min_exponent())
            .min()
            .ok_or_else(|| Error::PrecisionExhausted("element vanishes to working precision".into()))?;
        if self.c.iter().any(|a| a.valuation_bound() < m) {
            return Err(Error::PrecisionExhausted("coordinate precision below the valuation".into()));
        }
        Ok(m)
    }

    /// Residue in F_p(u), u^(p^n) = x.
    pub fn residue(&self) -> Result<RationalFunction> {
        if self.c.iter().any(|a| a.valuation_bound() < 0) {
            return Err(Error::NotIntegral);
        }
        if self.c.iter().any(|a| a.precision() <= 0) {
            return Err(Error::PrecisionExhausted("residue needs the constant terms".into()));
        }
        let v = self.spec.residue_var();
        let hbar = self.spec.hbar();
        let mut acc = RationalFunction::zero(self.spec.p(), v);
        for a in self.c.iter().rev() {
            let c0 = a.coefficient(0).embed(v)?;
            acc = &(&acc * hbar) + &c0;
        }
        Ok(acc)
    }

    pub fn truncate(&self, prec: i64) -> Self {
        OrderElement { spec: self.spec.clone(), c: self.c.iter().map(|a| a.truncate(prec)).collect() }
    }

    /// The element of O_K if every coordinate above 0 vanishes.
    pub fn as_base(&self) -> Option<LaurentSeries> {
        self.c[1..].iter().all(|a| a.is_zero_mod_precision()).then(|| self.c[0].clone())
    }
}

pub fn order_multiply(a: &OrderElement, b: &OrderElement) -> OrderElement {
    a.mul(b)
}

pub fn order_valuation(a: &OrderElement) -> Result<i64> {
    a.order_valuation()
}

pub fn residue(a: &OrderElement) -> Result<RationalFunction> {
    a.residue()
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_mod_precision() {
                continue;
            }
            let s = LaurentSeries::from_terms(a.p(), a.terms().iter().map(|(k, c)| (*k, c.clone())), EXACT).to_string();
            parts.push(match i {
                0 => s,
                1 if s == "1" => "h".into(),
                1 => format!("({s})*h"),
                _ if s == "1" => format!("h^{i}"),
                _ => format!("({s})*h^{i}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        let prec = self.c.iter().map(|a| a.precision()).min().unwrap_or(EXACT);
        if prec < EXACT {
            parts.push(format!("O(t^{prec})"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    fn x(p: u32) -> RationalFunction {
        RationalFunction::gen(p, Var::X)
    }

    fn as_p2() -> Arc<ExtensionSpec> {
        let p = 2;
        let a0 = LaurentSeries::constant(-x(p), EXACT);
        let a1 = LaurentSeries::t_power(p, 1, EXACT).neg();
        ExtensionSpec::new(p, 1, vec![a0, a1], None).unwrap()
    }

    #[test]
    fn h_squared() {
        let s = as_p2();
        let h = OrderElement::gen(&s);
        let h2 = h.mul(&h);
        assert!(h2.coords()[0].eq_within(&s.coeffs()[0].neg()));
        assert!(h2.coords()[1].eq_within(&s.coeffs()[1].neg()));
        assert_eq!(h.mul(&OrderElement::one(&s)), h);
    }

    #[test]
    fn conjugate_product() {
        // (h+t)(h-t) = h^2 - t^2 = x + t h - t^2 over GF(2); oracle: the
        // symmetric functions of the roots h, h+t of T^2 - tT - x.
        let s = as_p2();
        let p = 2;
        let h = OrderElement::gen(&s);
        let t = OrderElement::from_base(&s, LaurentSeries::t_power(p, 1, EXACT));
        let prod = h.add(&t).mul(&h.sub(&t));
        let expect0 = LaurentSeries::constant(x(p), EXACT).add(&LaurentSeries::t_power(p, 2, EXACT));
        assert!(prod.coords()[0].eq_within(&expect0));
        assert!(prod.coords()[1].eq_within(&LaurentSeries::t_power(p, 1, EXACT)));
    }

    #[test]
    fn valuations_and_residues() {
        let s = as_p2();
        let p = 2;
        let h = OrderElement::gen(&s);
        let t = OrderElement::from_base(&s, LaurentSeries::t_power(p, 1, EXACT));
        assert_eq!(h.order_valuation().unwrap(), 0);
        assert_eq!(t.mul(&h).add(&t.mul(&t)).order_valuation().unwrap(), 1);
        let u = RationalFunction::gen(p, Var::U(1));
        assert_eq!(h.residue().unwrap(), u);
        assert!(t.residue().unwrap().is_zero());
        let a = h.mul(&h).add(&OrderElement::from_base(&s, LaurentSeries::constant(x(p), EXACT)));
        assert!(a.residue().unwrap().is_zero());
        let tinv = OrderElement::from_base(&s, LaurentSeries::t_power(p, -1, EXACT));
        assert_eq!(tinv.residue(), Err(Error::NotIntegral));
    }

    #[test]
    fn lift_residue_roundtrip() {
        let s = as_p2();
        let u = RationalFunction::gen(2, Var::U(1));
        let r = &u / &(&u + &RationalFunction::one(2, Var::U(1)));
        assert_eq!(s.lift_residue(&r).unwrap().residue().unwrap(), r);
    }
}
