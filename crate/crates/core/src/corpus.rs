//! The built-in example extensions.

use crate::algebra::{RationalFunction, Var};
use crate::error::Result;
use crate::galois::additive::tuples;
use crate::local::{ExtensionSpec, LaurentSeries, EXACT};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub p: u32,
    pub n: u32,
    /// a_0, …, a_(p^n - 1) as exact series.
    pub coeffs: Vec<LaurentSeries>,
}

impl CorpusEntry {
    pub fn spec(&self, precision: Option<i64>) -> Result<Arc<ExtensionSpec>> {
        ExtensionSpec::new(self.p, self.n, self.coeffs.clone(), precision)
    }
}

fn x(p: u32) -> RationalFunction {
    RationalFunction::gen(p, Var::X)
}

/// The three constant terms of the Artin-Schreier family.
pub fn artin_schreier_constants(p: u32) -> Vec<(&'static str, RationalFunction)> {
    let one = RationalFunction::one(p, Var::X);
    vec![
        ("x", -x(p)),
        ("x3x", -(&x(p).pow(3).expect("power") + &x(p))),
        ("xx1", -(&x(p) / &(&x(p) + &one))),
    ]
}

/// f = T^p - t^(p-1) T + a0.
pub fn artin_schreier(p: u32, a0: RationalFunction) -> Vec<LaurentSeries> {
    let mut c = vec![LaurentSeries::zero(p, EXACT); p as usize];
    c[0] = LaurentSeries::constant(a0, EXACT);
    c[1] = LaurentSeries::t_power(p, p as i64 - 1, EXACT).neg();
    c
}

/// Monic product ∏ (T + r) over K, coefficients from the constant term.
pub fn poly_from_roots(p: u32, roots: &[LaurentSeries]) -> Vec<LaurentSeries> {
    let mut f = vec![LaurentSeries::one(p, EXACT)];
    for r in roots {
        let mut g = vec![LaurentSeries::zero(p, EXACT); f.len() + 1];
        for (i, a) in f.iter().enumerate() {
            g[i + 1] = g[i + 1].add(a);
            g[i] = g[i].add(&a.mul(r));
        }
        f = g;
    }
    f
}

/// f = A(T) - x with A = ∏ (T + j1 t + j2 x t²) over (j1, j2) ∈ F_p².
/// Jumps 1 and 2; the roots are h + j1 t + j2 x t².
pub fn elementary_square(p: u32) -> Vec<LaurentSeries> {
    let t = LaurentSeries::t_power(p, 1, EXACT);
    let xt2 = LaurentSeries::monomial(x(p), 2, EXACT);
    let roots: Vec<LaurentSeries> = tuples(p, 2)
        .into_iter()
        .map(|j| {
            let a = t.scale(&RationalFunction::constant(p, j[0] as i64, Var::X));
            a.add(&xt2.scale(&RationalFunction::constant(p, j[1] as i64, Var::X)))
        })
        .collect();
    let mut a = poly_from_roots(p, &roots);
    a.pop();
    a[0] = a[0].sub(&LaurentSeries::constant(x(p), EXACT));
    a
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for p in [2, 3, 5] {
        for (tag, a0) in artin_schreier_constants(p) {
            out.push(CorpusEntry { name: format!("as-p{p}-{tag}"), p, n: 1, coeffs: artin_schreier(p, a0) });
        }
    }
    for p in [2, 3] {
        out.push(CorpusEntry { name: format!("sq-p{p}"), p, n: 2, coeffs: elementary_square(p) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_additive_plus_constant() {
        for p in [2u32, 3] {
            let c = elementary_square(p);
            assert_eq!(c.len(), (p * p) as usize);
            for (i, a) in c.iter().enumerate().skip(1) {
                let additive = i == 1 || i == p as usize;
                assert_eq!(!a.is_zero_mod_precision(), additive, "p = {p}, i = {i}");
            }
            assert_eq!(c[0].coefficient(0), -x(p));
        }
    }

    #[test]
    fn eleven_entries() {
        let c = corpus();
        assert_eq!(c.len(), 11);
        assert!(c.iter().all(|e| e.spec(None).is_ok()));
    }
}
