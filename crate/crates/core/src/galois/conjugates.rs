//! Roots of f in O_L by Newton polygon lifting.
//!
//! g(S) = f(h + S) has all its roots in the maximal ideal. Each negative
//! segment of slope -λ of the Newton polygon gives the residual polynomial
//! whose roots ρ ∈ E are the leading coefficients of the roots S = t^λ(ρ + …);
//! substituting S = t^λ(ρ̃ + Y) and dividing by the segment height yields a
//! node of the same shape one level down.

use crate::algebra::{EPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::local::{ExtensionSpec, OrderElement, EXACT};
use std::sync::Arc;

/// All p^n roots of f, h first. Retries once at doubled precision when the
/// working precision runs out; the returned roots then belong to the
/// refined spec (reachable through [`OrderElement::spec`]).
pub fn find_conjugates(spec: &Arc<ExtensionSpec>) -> Result<Vec<OrderElement>> {
    match roots_at(spec) {
        Err(Error::PrecisionExhausted(_)) => {
            let wider = spec.with_precision(2 * spec.precision())?;
            roots_at(&wider)
        }
        r => r,
    }
}

fn roots_at(spec: &Arc<ExtensionSpec>) -> Result<Vec<OrderElement>> {
    let d = spec.degree();
    let mut g: Vec<OrderElement> = spec.coeffs().iter().map(|a| OrderElement::from_base(spec, a.clone())).collect();
    g.push(OrderElement::one(spec));
    taylor_shift(&mut g, &OrderElement::gen(spec));
    let mut out = Vec::with_capacity(d);
    solve(spec, g, OrderElement::zero(spec), 0, d, &mut out)?;
    if out.len() != d {
        return Err(Error::RootsNotFound(format!("found {} of {d} roots", out.len())));
    }
    let h = OrderElement::gen(spec);
    let mut roots: Vec<OrderElement> = out.into_iter().map(|s| h.add(&s)).collect();
    let zero = roots
        .iter()
        .position(|r| r.eq_within(&h))
        .ok_or_else(|| Error::RootsNotFound("h itself was not recovered".into()))?;
    roots.swap(0, zero);
    Ok(roots)
}

fn shift_mul(c: &OrderElement, a: &OrderElement) -> OrderElement {
    match a.as_base() {
        Some(b) => c.scale(&b),
        None => c.mul(a),
    }
}

/// g(S) ← g(S + a), coefficients listed from the constant term.
fn taylor_shift(g: &mut [OrderElement], a: &OrderElement) {
    let n = g.len() - 1;
    for i in 0..n {
        for j in (i..n).rev() {
            let t = shift_mul(&g[j + 1], a);
            g[j] = g[j].add(&t);
        }
    }
}

fn valuation(a: &OrderElement) -> Result<Option<i64>> {
    if a.is_zero_mod_precision() {
        return Ok(None);
    }
    a.order_valuation().map(Some)
}

/// Vertices of the lower convex hull of the given points, left to right.
fn lower_hull(pts: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &q in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the segment a-q
            let cross = (b.0 as i64 - a.0 as i64) * (q.1 - a.1) - (b.1 - a.1) * (q.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    hull
}

fn residue_shifted(a: &OrderElement, shift: i64) -> Result<RationalFunction> {
    let s = a.mul_t(shift);
    if s.coords().iter().any(|c| c.precision() <= 0) {
        return Err(Error::PrecisionExhausted("residual coefficient beyond precision".into()));
    }
    s.residue()
}

fn solve(
    spec: &Arc<ExtensionSpec>,
    g: Vec<OrderElement>,
    acc: OrderElement,
    scale: i64,
    expected: usize,
    out: &mut Vec<OrderElement>,
) -> Result<()> {
    let vals: Vec<Option<i64>> = g.iter().map(valuation).collect::<Result<_>>()?;
    let k0 = vals
        .iter()
        .position(|v| v.is_some())
        .ok_or_else(|| Error::PrecisionExhausted("all coefficients vanish to precision".into()))?;
    if k0 >= 2 {
        return Err(Error::PrecisionExhausted("roots not separated at working precision".into()));
    }
    let vmin = vals.iter().flatten().min().copied().expect("some finite valuation");
    let top = vals.iter().position(|v| *v == Some(vmin)).expect("minimum attained");
    if top != expected {
        return Err(Error::RootsNotFound(format!(
            "expected {expected} roots near the current approximation, Newton polygon shows {top}"
        )));
    }
    if k0 == 1 {
        // S = 0 is a root of this node: the accumulated approximation is exact
        // up to what the constant coefficient certifies.
        let v1 = vals[1].expect("finite");
        let p0 = g[0].coords().iter().map(|c| c.precision()).min().unwrap_or(EXACT);
        let prec = scale.saturating_add(p0 - v1);
        out.push(if prec < spec.precision() { acc.truncate(prec) } else { acc.clone() });
    }
    let pts: Vec<(usize, i64)> = (k0..=top).filter_map(|k| vals[k].map(|v| (k, v))).collect();
    let hull = lower_hull(&pts);
    for w in hull.windows(2) {
        let ((k1, v1), (k2, v2)) = (w[0], w[1]);
        let rise = v1 - v2;
        let run = (k2 - k1) as i64;
        if rise % run != 0 {
            return Err(Error::RootsNotFound(format!("fractional slope {rise}/{run}: not of ramification index one")));
        }
        let lambda = rise / run;
        let m = v1 + lambda * k1 as i64;
        let residual: Vec<RationalFunction> = (k1..=k2)
            .map(|k| residue_shifted(&g[k], lambda * k as i64 - m))
            .collect::<Result<_>>()?;
        let r = EPoly::new(spec.p(), spec.residue_var(), residual);
        let roots = r.roots()?;
        let found: usize = roots.iter().map(|(_, k)| k).sum();
        if found != k2 - k1 {
            return Err(Error::RootsNotFound(format!("residual polynomial {r} does not split over E")));
        }
        for (rho, mult) in roots {
            let lift = spec.lift_residue(&rho)?;
            let shift = lift.mul_t(lambda);
            let mut child = g.clone();
            taylor_shift(&mut child, &shift);
            let child: Vec<OrderElement> =
                child.into_iter().enumerate().map(|(k, c)| c.mul_t(lambda * k as i64 - m)).collect();
            let next = acc.add(&lift.mul_t(scale + lambda));
            solve(spec, child, next, scale + lambda, mult, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;
    use crate::galois::verify_conjugates;
    use crate::local::LaurentSeries;

    fn as_spec(p: u32) -> Arc<ExtensionSpec> {
        let mut c = vec![LaurentSeries::zero(p, EXACT); p as usize];
        c[0] = LaurentSeries::constant(-RationalFunction::gen(p, Var::X), EXACT);
        c[1] = LaurentSeries::t_power(p, p as i64 - 1, EXACT).neg();
        ExtensionSpec::new(p, 1, c, None).unwrap()
    }

    #[test]
    fn artin_schreier_roots() {
        for p in [2, 3, 5] {
            let s = as_spec(p);
            let roots = find_conjugates(&s).unwrap();
            let g = verify_conjugates(roots[0].spec(), &roots).unwrap();
            assert_eq!(g.order(), p as usize);
            for e in &g.elements()[1..] {
                let d = OrderElement::gen(g.spec()).sub(e.image());
                let base = d.as_base().unwrap();
                assert_eq!(base.terms().len(), 1);
                assert_eq!(base.min_exponent(), Some(1));
            }
        }
    }

    #[test]
    fn elementary_square_roots() {
        for p in [2, 3] {
            let e = crate::corpus::corpus().into_iter().find(|e| e.name == format!("sq-p{p}")).unwrap();
            let s = e.spec(None).unwrap();
            let t0 = std::time::Instant::now();
            let roots = find_conjugates(&s).unwrap();
            let g = verify_conjugates(roots[0].spec(), &roots).unwrap();
            eprintln!("p = {p}: precision {}, {:?}", s.precision(), t0.elapsed());
            let mut jumps: Vec<i64> = g.elements()[1..].iter().map(|e| e.jump().unwrap()).collect();
            jumps.dedup();
            assert_eq!(jumps, vec![1, 2]);
        }
    }

    #[test]
    fn hull() {
        assert_eq!(lower_hull(&[(1, 9), (2, 6), (3, 3), (4, 0)]), vec![(1, 9), (4, 0)]);
        assert_eq!(lower_hull(&[(1, 5), (2, 2), (3, 1), (4, 0)]), vec![(1, 5), (2, 2), (4, 0)]);
    }
}
