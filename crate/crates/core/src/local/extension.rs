//! Monic integral minimal polynomials defining type (II) extensions L = K[h]/(f).

use super::laurent::LaurentSeries;
use super::order::OrderElement;
use crate::algebra::factor::DEFAULT_SEED;
use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{pn_th_root, Poly, RationalFunction, Var};
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Debug)]
pub struct ExtensionSpec {
    p: u32,
    n: u32,
    degree: usize,
    input: Vec<LaurentSeries>,
    coeffs: Vec<LaurentSeries>,
    abar0: RationalFunction,
    hbar: RationalFunction,
    precision: i64,
    seed: u64,
    residue_inverse: Matrix,
}

impl ExtensionSpec {
    /// `coeffs` are a_0, ..., a_(p^n - 1); the leading coefficient 1 is implicit.
    pub fn new(p: u32, n: u32, coeffs: Vec<LaurentSeries>, precision: Option<i64>) -> Result<Arc<Self>> {
        Self::build(p, n, coeffs, precision, DEFAULT_SEED)
    }

    pub fn build(p: u32, n: u32, coeffs: Vec<LaurentSeries>, precision: Option<i64>, seed: u64) -> Result<Arc<Self>> {
        crate::algebra::PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::Precondition("trivial extension (n = 0)".into()));
        }
        let degree = (p as usize).pow(n);
        if coeffs.len() != degree {
            return Err(Error::InvalidSpec(format!("expected {degree} coefficients, got {}", coeffs.len())));
        }
        if coeffs.iter().any(|c| c.p() != p) {
            return Err(Error::InvalidSpec("coefficient characteristic mismatch".into()));
        }
        for (i, a) in coeffs.iter().enumerate() {
            if a.valuation_bound() < 0 {
                return Err(Error::InvalidSpec(format!("a_{i} is not integral")));
            }
            if i > 0 && a.valuation_bound() < 1 {
                return Err(Error::InvalidSpec(format!(
                    "residue of f is not T^{degree} + a0: a_{i} has nonzero residue"
                )));
            }
        }
        if (1..degree).filter(|i| i % p as usize != 0).all(|i| coeffs[i].is_zero_mod_precision()) {
            return Err(Error::InvalidSpec("f is inseparable".into()));
        }
        let abar0 = coeffs[0].coefficient(0);
        if abar0.is_zero() {
            return Err(Error::InvalidSpec("a_0 has zero residue".into()));
        }
        if abar0.is_pth_power() {
            return Err(Error::InvalidSpec(format!("residue of a_0 = {abar0} is a p-th power in F")));
        }
        let prec = precision.unwrap_or_else(|| default_precision(p, n, &coeffs));
        if prec < 2 {
            return Err(Error::InvalidSpec("working precision must be at least 2".into()));
        }
        let truncated: Vec<LaurentSeries> = coeffs.iter().map(|a| a.truncate(prec)).collect();
        // f̄ = T^(p^n) + ā₀ = (T - h̄)^(p^n), so h̄^(p^n) = -ā₀.
        let hbar = pn_th_root(&-&abar0, n)?;
        let cols: Vec<Vec<RationalFunction>> = (0..degree)
            .map(|i| u_coordinates(&hbar.pow(i as i64).expect("nonnegative power"), n))
            .collect();
        let m: Matrix = (0..degree).map(|j| (0..degree).map(|i| cols[i][j].clone()).collect()).collect();
        let residue_inverse = linalg::inverse(&m)
            .ok_or_else(|| Error::InvalidSpec("residues of 1, h, ..., h^(d-1) are dependent".into()))?;
        Ok(Arc::new(ExtensionSpec {
            p,
            n,
            degree,
            input: coeffs,
            coeffs: truncated,
            abar0,
            hbar,
            precision: prec,
            seed,
            residue_inverse,
        }))
    }

    /// Same polynomial at another working precision.
    pub fn with_precision(&self, prec: i64) -> Result<Arc<Self>> {
        Self::build(self.p, self.n, self.input.clone(), Some(prec), self.seed)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    /// a_0, ..., a_(d-1) at working precision.
    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.coeffs
    }
    pub fn input_coeffs(&self) -> &[LaurentSeries] {
        &self.input
    }
    pub fn abar0(&self) -> &RationalFunction {
        &self.abar0
    }
    /// Residue of h in F_p(u).
    pub fn hbar(&self) -> &RationalFunction {
        &self.hbar
    }
    pub fn precision(&self) -> i64 {
        self.precision
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn residue_var(&self) -> Var {
        Var::U(self.n)
    }

    /// Coordinates over F of a residue in the basis 1, h̄, ..., h̄^(d-1).
    pub fn residue_coordinates(&self, r: &RationalFunction) -> Result<Vec<RationalFunction>> {
        let r = r.embed(self.residue_var())?;
        let v = u_coordinates(&r, self.n);
        Ok(linalg::mat_vec(&self.residue_inverse, &v))
    }

    /// An element of O_L with the given residue.
    pub fn lift_residue(self: &Arc<Self>, r: &RationalFunction) -> Result<OrderElement> {
        let c = self.residue_coordinates(r)?;
        let coords = c.into_iter().map(|a| LaurentSeries::constant(a, self.precision)).collect();
        OrderElement::from_coords(self, coords)
    }

    /// Rank of the residues of 1, h, ..., h^(d-1) over F.
    pub fn residue_rank(&self) -> usize {
        let m: Matrix = (0..self.degree)
            .map(|i| u_coordinates(&self.hbar.pow(i as i64).expect("nonnegative"), self.n))
            .collect();
        linalg::rank(&m)
    }
}

/// 4·p^n·(1 + max ⌈v(a_i)⌉) + 8 over the nonzero coefficients.
pub fn default_precision(p: u32, n: u32, coeffs: &[LaurentSeries]) -> i64 {
    let d = (p as i64).pow(n);
    let vmax = coeffs.iter().filter_map(|a| a.min_exponent()).max().unwrap_or(0).max(0);
    4 * d * (1 + vmax) + 8
}

/// Coordinates of r ∈ F_p(u), u^(p^n) = x, in the basis 1, u, ..., u^(p^n - 1) over F.
pub fn u_coordinates(r: &RationalFunction, n: u32) -> Vec<RationalFunction> {
    let p = r.p();
    let d = (p as usize).pow(n);
    let den = r.den();
    // D(u)^(p^n) = D(x), so r = N·D^(p^n - 1) / D(x).
    let num = r.num().mul(&den.pow(d as u64 - 1));
    let dx = den.clone();
    (0..d)
        .map(|j| {
            let c: Vec<u32> = num.coeffs().iter().skip(j).step_by(d).copied().collect();
            RationalFunction::new(Poly::from_raw(p, c), dx.clone(), Var::X).expect("nonzero denominator")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(p: u32) -> RationalFunction {
        RationalFunction::gen(p, Var::X)
    }

    pub(crate) fn as_p2() -> Arc<ExtensionSpec> {
        // T^2 - tT - x over GF(2)
        let p = 2;
        let a0 = LaurentSeries::constant(-x(p), crate::local::EXACT);
        let a1 = LaurentSeries::t_power(p, 1, crate::local::EXACT).neg();
        ExtensionSpec::new(p, 1, vec![a0, a1], None).unwrap()
    }

    #[test]
    fn validates() {
        let s = as_p2();
        assert_eq!(s.degree(), 2);
        assert_eq!(s.hbar(), &RationalFunction::gen(2, Var::U(1)));
        assert_eq!(s.residue_rank(), 2);
        assert_eq!(s.precision(), 4 * 2 * 2 + 8);
    }

    #[test]
    fn rejects_inseparable() {
        let p = 2;
        let a0 = LaurentSeries::constant(-x(p), crate::local::EXACT);
        let a1 = LaurentSeries::zero(p, crate::local::EXACT);
        assert!(matches!(ExtensionSpec::new(p, 1, vec![a0, a1], None), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn rejects_pth_power_residue() {
        let p = 3;
        let e = crate::local::EXACT;
        let a0 = LaurentSeries::constant(x(p).pow(3).unwrap(), e);
        let a1 = LaurentSeries::t_power(p, 2, e);
        let a2 = LaurentSeries::zero(p, e);
        assert!(ExtensionSpec::new(p, 1, vec![a0, a1, a2], None).is_err());
    }

    #[test]
    fn rejects_trivial() {
        let p = 3;
        assert!(matches!(ExtensionSpec::new(p, 0, vec![], None), Err(Error::Precondition(_))));
    }

    #[test]
    fn coordinates_roundtrip() {
        let p = 3;
        let u = RationalFunction::gen(p, Var::U(1));
        let r = &u / &(&u + &RationalFunction::one(p, Var::U(1)));
        let c = u_coordinates(&r, 1);
        let back = c.iter().enumerate().fold(RationalFunction::zero(p, Var::U(1)), |acc, (j, a)| {
            &acc + &(&a.embed(Var::U(1)).unwrap() * &u.pow(j as i64).unwrap())
        });
        assert_eq!(back, r);
    }
}
