//! Fixed fields L^H of normal subgroups, with a verified monogenic generator.

use super::conjugates::find_conjugates;
use super::group::{verify_conjugates, GaloisGroup};
use super::ramification::{ramification_data, RamificationData};
use crate::algebra::Var;
use crate::error::{Error, Result};
use crate::local::{ExtensionSpec, LaurentSeries, OrderElement};
use std::sync::Arc;

/// L' = L^H presented as K[h']/(f') together with G → G/H.
#[derive(Clone, Debug)]
pub struct QuotientField {
    /// h' as an element of O_L.
    pub generator: OrderElement,
    /// Which elementary symmetric function of {σ(h)}_{σ∈H} produced h'.
    pub candidate: usize,
    pub group: GaloisGroup,
    pub data: RamificationData,
    /// Index in `group` of the image of each element of the parent group.
    pub projection: Vec<usize>,
}

impl QuotientField {
    pub fn spec(&self) -> &Arc<ExtensionSpec> {
        self.group.spec()
    }
}

/// Coefficients e_0 = 1, e_1, …, e_k of ∏ (T + x_i), read as elementary symmetric functions.
fn elementary_symmetric(spec: &Arc<ExtensionSpec>, xs: &[OrderElement]) -> Vec<OrderElement> {
    let mut f = vec![OrderElement::one(spec)];
    for x in xs {
        let mut g = vec![OrderElement::zero(spec); f.len() + 1];
        for (i, a) in f.iter().enumerate() {
            g[i + 1] = g[i + 1].add(a);
            g[i] = g[i].add(&a.mul(x));
        }
        f = g;
    }
    // f[j] is the coefficient of T^j, which is e_(k-j)
    f.reverse();
    f
}

pub fn fixed_field(g: &GaloisGroup, h: &[usize]) -> Result<QuotientField> {
    let table = g.table();
    if !table.is_normal(h) {
        return Err(Error::Unsupported("fixed fields of non-normal subgroups".into()));
    }
    let spec = g.spec();
    let p = spec.p() as usize;
    let k = h.len();
    let mut s = 0;
    while p.pow(s) < k {
        s += 1;
    }
    if s >= spec.n() {
        return Err(Error::Precondition("L^H = K for H = G".into()));
    }
    let n1 = spec.n() - s;
    let images: Vec<OrderElement> = h.iter().map(|&i| g.element(i).image().clone()).collect();
    let e = elementary_symmetric(spec, &images);
    let order: Vec<usize> = [1, k].into_iter().chain(2..k).collect();
    let mut last = Error::IntermediateFieldUnavailable(format!("no candidate generator for a subgroup of order {k}"));
    for j in order {
        match try_candidate(g, h, n1, &e[j]) {
            Ok(mut q) => {
                q.candidate = j;
                return Ok(q);
            }
            Err(err @ Error::IntermediateFieldUnavailable(_)) => last = err,
            Err(err @ (Error::NotIntegral | Error::InvalidSpec(_) | Error::RootsNotFound(_))) => {
                last = Error::IntermediateFieldUnavailable(format!("candidate e_{j}: {err}"))
            }
            Err(err) => return Err(err),
        }
    }
    Err(last)
}

fn try_candidate(g: &GaloisGroup, h: &[usize], n1: u32, cand: &OrderElement) -> Result<QuotientField> {
    let spec = g.spec();
    let table = g.table();
    let unavailable = |m: &str| Error::IntermediateFieldUnavailable(m.to_string());
    let r = cand.residue()?;
    if r.descend(Var::u(n1)).is_none() || r.descend(Var::u(n1 - 1)).is_some() {
        return Err(unavailable("residue does not generate the residue field of L^H"));
    }
    let cosets = table.left_cosets(h);
    let conj: Vec<OrderElement> = cosets.iter().map(|c| g.apply(c[0], cand)).collect();
    // f'(T) = ∏ (T - τ(h')) has its coefficients in O_K
    let neg: Vec<OrderElement> = conj.iter().map(|x| x.neg()).collect();
    let mut coeffs = elementary_symmetric(spec, &neg);
    coeffs.reverse();
    coeffs.pop();
    let base: Vec<LaurentSeries> = coeffs
        .iter()
        .map(|a| a.as_base().ok_or_else(|| unavailable("minimal polynomial is not defined over K")))
        .collect::<Result<_>>()?;
    let spec1 = ExtensionSpec::build(spec.p(), n1, base, Some(spec.precision()), spec.seed())?;
    let roots = find_conjugates(&spec1)?;
    let g1 = verify_conjugates(roots[0].spec(), &roots)?;
    if spec1.hbar().embed(spec.residue_var())? != r {
        return Err(unavailable("residue of h' disagrees with the quotient's h̄'"));
    }
    // τ'(h') rewritten in O_L through its coordinates in 1, h', h'^2, …
    let in_l: Vec<OrderElement> = g1
        .elements()
        .iter()
        .map(|e| OrderElement::from_poly(spec, e.image().coords()).evaluate_at(cand))
        .collect();
    let mut projection = Vec::with_capacity(g.order());
    for i in 0..g.order() {
        let img = g.apply(i, cand);
        let j = in_l
            .iter()
            .position(|x| x.eq_within(&img))
            .ok_or_else(|| unavailable("σ(h') is not a conjugate of h' in O_L"))?;
        projection.push(j);
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if projection[table.mul(a, b)] != g1.table().mul(projection[a], projection[b]) {
                return Err(unavailable("projection to G/H is not a homomorphism"));
            }
        }
    }
    let kernel: Vec<usize> = (0..g.order()).filter(|&i| projection[i] == 0).collect();
    if kernel != h {
        return Err(unavailable("projection kernel differs from H"));
    }
    let data = ramification_data(&g1)?;
    for (i, coset) in cosets.iter().enumerate().skip(1) {
        let sum: i64 = coset.iter().map(|&s| g.element(s).jump().expect("non-identity")).sum();
        let tau = projection[coset[0]];
        if data.jump(tau) != Some(sum) {
            return Err(unavailable(&format!("quotient jump of coset {i} is not the sum over the coset")));
        }
    }
    Ok(QuotientField { generator: cand.clone(), candidate: 0, group: g1, data, projection })
}
