//! s_G, the different, Swan conductors with differential values and kcc.

use super::symbol::CanonicalSymbolForm;
use crate::algebra::prime::inv_mod;
use crate::algebra::{CyclotomicInteger, DifferentialTensor, EPoly, Poly, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::galois::characters::log_p;
use crate::galois::{characters, Character1, ClassFunction, RamificationData, VirtualRep};
use serde::Serialize;

/// m with q = p^m the exponent of the group of `d`.
pub fn cyclotomic_level(d: &RamificationData) -> u32 {
    log_p(d.p(), d.group().exponent() as u32)
}

fn int(d: &RamificationData, m: u32, k: i64) -> CyclotomicInteger {
    CyclotomicInteger::from_int(d.p(), m, k)
}

/// c·[x] for a unit x of E.
fn unit_form(d: &RamificationData, m: u32, c: &CyclotomicInteger, x: &RationalFunction) -> Result<CanonicalSymbolForm> {
    CanonicalSymbolForm::from_unit(d.p(), m, d.var(), c, x, d.seed())
}

/// s_G(σ) = [dh̄] - [h - σ(h)]; s_G(1) = -Σ_{σ≠1} s_G(σ).
pub fn sg(d: &RamificationData, sigma: usize, m: u32) -> Result<CanonicalSymbolForm> {
    if d.degree() < 2 {
        return Err(Error::Precondition("trivial group".into()));
    }
    if sigma == 0 {
        let mut acc = CanonicalSymbolForm::zero(d.p(), m, d.var());
        for s in 1..d.degree() {
            acc = acc.sub(&sg(d, s, m)?);
        }
        return Ok(acc);
    }
    let one = int(d, m, 1);
    let jump = d.jump(sigma).expect("non-identity");
    let dh = CanonicalSymbolForm::dh_symbol(d.p(), m, d.var(), &one);
    let diff = unit_form(d, m, &one, &d.u_value(sigma))?.add(&CanonicalSymbolForm::t_symbol(d.p(), m, d.var(), &int(d, m, jump)));
    Ok(dh.sub(&diff))
}

/// d(L/K) = s_G(1).
pub fn kato_different(d: &RamificationData, m: u32) -> Result<CanonicalSymbolForm> {
    sg(d, 0, m)
}

/// d(L/L^H) = -Σ_{σ∈H-1} s_G(σ): the symbols of L/L^H are those of L/K restricted to H.
pub fn relative_different(d: &RamificationData, h: &[usize], m: u32) -> Result<CanonicalSymbolForm> {
    let mut acc = CanonicalSymbolForm::zero(d.p(), m, d.var());
    for &s in h.iter().filter(|&&s| s != 0) {
        acc = acc.sub(&sg(d, s, m)?);
    }
    Ok(acc)
}

/// ε(ξ) = Σ_{r∈F_p^×} ξ^r [r] with ξ = ζ_p^a.
pub fn epsilon(p: u32, m: u32, a: u32, var: Var, seed: u64) -> Result<CanonicalSymbolForm> {
    let q = p.pow(m) as i64;
    let mut acc = CanonicalSymbolForm::zero(p, m, var);
    for r in 1..p {
        let c = CyclotomicInteger::zeta_power(p, m, (a as i64) * (r as i64) * (q / p as i64));
        acc = acc.add(&CanonicalSymbolForm::from_unit(p, m, var, &c, &RationalFunction::constant(p, r as i64, var), seed)?);
    }
    Ok(acc)
}

/// s_G(χ) = Σ s_G(σ)·χ(σ).
pub fn sg_of(d: &RamificationData, chi: &ClassFunction, m: u32) -> Result<CanonicalSymbolForm> {
    let mut acc = CanonicalSymbolForm::zero(d.p(), m, d.var());
    let s1 = sg(d, 0, m)?;
    for (s, v) in chi.values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let term = if s == 0 { s1.clone() } else { sg(d, s, m)? };
        acc = acc.add(&term.scale(v));
    }
    Ok(acc)
}

/// sw_ξ(χ) = s_G(χ) + (dim χ - ⟨χ,1⟩) ε(ξ) for a class function with known dim and ⟨χ,1⟩.
pub fn swan_of(d: &RamificationData, chi: &ClassFunction, m: u32, a: u32) -> Result<CanonicalSymbolForm> {
    let dim = chi.dim().ok_or(Error::NonIntegralInnerProduct)?;
    let triv = chi.trivial_multiplicity()?;
    let eps = epsilon(d.p(), m, a, d.var(), d.seed())?;
    Ok(sg_of(d, chi, m)?.add(&eps.scale_i64(dim - triv)))
}

/// Swan conductor of a virtual representation; also checks the ξ-shift law
/// sw_(ξ^2) = sw_ξ + (dim - ⟨χ,1⟩)[2] when p > 2.
pub fn swan_diffval(d: &RamificationData, rep: &VirtualRep, m: u32, a: u32) -> Result<CanonicalSymbolForm> {
    let chi = rep.character(d.group(), d.p(), m);
    let triv = chi.trivial_multiplicity()?;
    if triv != rep.trivial_multiplicity() || chi.dim() != Some(rep.dim(d.degree())) {
        return Err(Error::IdentityViolated("dimension or ⟨χ,1⟩ disagrees with its character".into()));
    }
    let sw = swan_of(d, &chi, m, a)?;
    if d.p() > 2 {
        let shifted = swan_of(d, &chi, m, (2 * a) % d.p())?;
        let two = unit_form(d, m, &int(d, m, chi.dim().expect("integral") - triv), &RationalFunction::constant(d.p(), 2, d.var()))?;
        if shifted != sw.add(&two) {
            return Err(Error::IdentityViolated(format!("ξ-shift law fails: {shifted} vs {sw} + {two}")));
        }
    }
    Ok(sw)
}

/// Data of the central character of χ on G^c: the F_p-valued χ̄ = ψ₀^(-1)∘χ.
#[derive(Clone, Debug)]
pub struct CentralCharacter {
    /// χ̄(σ) for σ in G^c, in the order of `RamificationData::gc`.
    pub values: Vec<u32>,
    /// ker χ̄.
    pub kernel: Vec<usize>,
    /// Lifts τ of 1 ∈ F_p.
    pub lifts: Vec<usize>,
}

pub fn central_character(d: &RamificationData, chi: &Character1, a: u32) -> Result<CentralCharacter> {
    let p = d.p();
    let step = chi.q() / p;
    let ainv = inv_mod(a % p, p);
    let mut values = Vec::with_capacity(d.gc().len());
    for &s in d.gc() {
        let e = chi.exponent(s).ok_or_else(|| Error::Precondition("character is not defined on G^c".into()))?;
        if e % step != 0 {
            return Err(Error::IdentityViolated("character of G^c of order above p".into()));
        }
        values.push(((e / step) * ainv) % p);
    }
    CentralCharacter::from_values(d, values)
}

impl CentralCharacter {
    /// From χ̄(σ) for σ in G^c, listed in the order of `RamificationData::gc`.
    pub fn from_values(d: &RamificationData, values: Vec<u32>) -> Result<Self> {
        if values.iter().all(|&v| v == 0) {
            return Err(Error::CharacterNotWild);
        }
        let kernel = d.gc().iter().zip(&values).filter(|(_, &v)| v == 0).map(|(&s, _)| s).collect();
        let lifts = d.gc().iter().zip(&values).filter(|(_, &v)| v == 1).map(|(&s, _)| s).collect();
        Ok(CentralCharacter { values, kernel, lifts })
    }
}

/// f̄_(c,χ)(T) = ∏_{σ∈ker χ̄} (T + u_σ).
pub fn fbar_c_chi(d: &RamificationData, kernel: &[usize]) -> EPoly {
    kernel
        .iter()
        .fold(EPoly::constant(RationalFunction::one(d.p(), d.var())), |f, &s| f.mul(&EPoly::linear(d.u_value(s))))
}

/// [π^c] + [-f̄^p_(c,χ)(u_τ)] + Σ_{σ∈G-G^c} [u_σ] - [dā₀], with [dā₀] = p^n [dh̄].
pub fn swan_rank1_closed(d: &RamificationData, chi: &Character1, m: u32, a: u32) -> Result<CanonicalSymbolForm> {
    let cc = central_character(d, chi, a)?;
    let tau = cc.lifts[0];
    let f = fbar_c_chi(d, &cc.kernel);
    let val = -&f.eval(&d.u_value(tau)).pow(d.p() as i64)?;
    let one = int(d, m, 1);
    let pn = (d.p() as i64).pow(d.n());
    Ok(CanonicalSymbolForm::t_symbol(d.p(), m, d.var(), &int(d, m, d.conductor()))
        .add(&unit_form(d, m, &one, &val)?)
        .add(&unit_form(d, m, &one, &d.outside_product())?)
        .sub(&CanonicalSymbolForm::dh_symbol(d.p(), m, d.var(), &int(d, m, pn))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub integral: bool,
    pub witness: Option<String>,
}

/// sw ∈ S_(K,L): rational coefficients, units from F^× (exponents divisible
/// by p^n) and a [dh̄]-coefficient divisible by p^n.
pub fn integrality_check(s: &CanonicalSymbolForm, n: u32) -> IntegralityReport {
    let pn = (s.p() as i64).pow(n);
    let fail = |w: String| IntegralityReport { integral: false, witness: Some(w) };
    if s.torsion().as_i64().is_none() {
        return fail(format!("torsion coefficient {} is not rational", s.torsion()));
    }
    if s.t_coefficient().as_i64().is_none() {
        return fail(format!("[t] coefficient {} is not rational", s.t_coefficient()));
    }
    match s.dh_coefficient().as_i64() {
        Some(k) if k % pn == 0 => {}
        _ => return fail(format!("[dh] coefficient {} is not a multiple of {pn}", s.dh_coefficient())),
    }
    for (f, c) in s.factors() {
        match c.as_i64() {
            Some(k) if k % pn == 0 => {}
            _ => return fail(format!("{c}[{}]", f.to_string_var(s.var().name()))),
        }
    }
    IntegralityReport { integral: true, witness: None }
}

/// sw = [π^c] + [Δ] - m[dā₀] read off the canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwanParts {
    pub conductor: i64,
    pub delta: RationalFunction,
    pub m: i64,
}

pub fn swan_parts(s: &CanonicalSymbolForm, n: u32) -> Result<SwanParts> {
    let p = s.p();
    let pn = (p as i64).pow(n);
    let report = integrality_check(s, n);
    let conductor = s.t_coefficient().as_i64().ok_or(Error::NonIntegerConductorPart)?;
    if !report.integral {
        return Err(Error::IntegralityFailure(report.witness.unwrap_or_default()));
    }
    let m = -s.dh_coefficient().as_i64().expect("checked") / pn;
    let g = crate::algebra::prime::primitive_root(p);
    let tor = s.torsion().as_i64().expect("checked").rem_euclid((p as i64 - 1).max(1));
    let mut num = Poly::constant(p, crate::algebra::prime::pow_mod(g, tor as u64, p) as i64);
    let mut den = Poly::one(p);
    for (f, c) in s.factors() {
        let e = c.as_i64().expect("checked") / pn;
        if e > 0 {
            num = num.mul(&f.pow(e as u64));
        } else {
            den = den.mul(&f.pow((-e) as u64));
        }
    }
    let delta = RationalFunction::new(num, den, Var::X)?;
    Ok(SwanParts { conductor, delta, m })
}

/// kcc_ξ = Δ^(-1)·(dā₀)^⊗m for sw = [π^c] + [Δ] - m[dā₀].
pub fn kcc_from_swan(s: &CanonicalSymbolForm, d: &RamificationData) -> Result<DifferentialTensor> {
    let parts = swan_parts(s, d.n())?;
    let da = d.abar0().derivative();
    let coeff = &parts.delta.inv()? * &da.pow(parts.m)?;
    Ok(DifferentialTensor::new(coeff, parts.m))
}

pub fn kcc(d: &RamificationData, rep: &VirtualRep, m: u32, a: u32) -> Result<DifferentialTensor> {
    let sw = swan_diffval(d, rep, m, a)?;
    let parts = swan_parts(&sw, d.n())?;
    let expect = rep.dim(d.degree()) - rep.trivial_multiplicity();
    if parts.m != expect {
        return Err(Error::IdentityViolated(format!("[dā] multiplicity {} but dim - ⟨M,1⟩ = {expect}", parts.m)));
    }
    kcc_from_swan(&sw, d)
}

/// Image in S_(L/K) of a symbol of S_(L'/K) for L' ⊂ L with data `low`:
/// units embed, [dh̄'] = [dh̄'/dā'] + p^(n-n')[dh̄] with ā' = h̄^(p^(n-n')).
pub fn transit(s: &CanonicalSymbolForm, low: &RamificationData, top: &RamificationData) -> Result<CanonicalSymbolForm> {
    let p = top.p();
    let k = top.n() - low.n();
    let pk = (p as i64).pow(k);
    let a1 = top
        .hbar()
        .pow(pk)?
        .descend(low.var())
        .ok_or_else(|| Error::IdentityViolated("h̄^(p^k) does not lie in the residue field of L'".into()))?;
    let ratio = &low.hbar().derivative() / &a1.derivative();
    let mut out = s.embed_units(top.var())?;
    let c = s.dh_coefficient().clone();
    out = out.sub(&CanonicalSymbolForm::dh_symbol(p, s.m(), top.var(), &c));
    out = out.add(&CanonicalSymbolForm::dh_symbol(p, s.m(), top.var(), &c.scale_i64(pk)));
    out = out.add(&CanonicalSymbolForm::from_unit(p, s.m(), low.var(), &c, &ratio, top.seed())?.embed_units(top.var())?);
    Ok(out)
}

/// s_(G/H)(τ) = Σ_{σ↦τ} s_G(σ) for all τ, and sw_G(φ∘π) = sw_(G/H)(φ) for all φ.
pub fn quotient_check(top: &RamificationData, low: &RamificationData, projection: &[usize], m: u32, a: u32) -> Result<()> {
    for tau in 0..low.degree() {
        let lhs = transit(&sg(low, tau, m)?, low, top)?;
        let mut rhs = CanonicalSymbolForm::zero(top.p(), m, top.var());
        for s in (0..top.degree()).filter(|&s| projection[s] == tau) {
            rhs = rhs.add(&sg(top, s, m)?);
        }
        if lhs != rhs {
            return Err(Error::IdentityViolated(format!("s_(G/H)({tau}) = {lhs} but the fiber sum is {rhs}")));
        }
    }
    let q = top.p().pow(m);
    let all: Vec<usize> = (0..low.degree()).collect();
    for phi in characters(low.group(), &all, q) {
        let values = (0..top.degree()).map(|s| phi.exponent(projection[s]).expect("onto")).collect();
        let lifted = Character1::new(top.group(), (0..top.degree()).collect(), values, q)?;
        let lhs = swan_diffval(top, &VirtualRep::single(lifted), m, a)?;
        let rhs = transit(&swan_diffval(low, &VirtualRep::single(phi.clone()), m, a)?, low, top)?;
        if lhs != rhs {
            return Err(Error::IdentityViolated(format!("inflated Swan conductor {lhs} vs {rhs}")));
        }
    }
    Ok(())
}

/// d(L/K) = d(L/L') + d(L'/K).
pub fn tower_law(top: &RamificationData, low: &RamificationData, kernel: &[usize], m: u32) -> Result<()> {
    let lhs = kato_different(top, m)?;
    let rhs = relative_different(top, kernel, m)?.add(&transit(&kato_different(low, m)?, low, top)?);
    if lhs != rhs {
        return Err(Error::IdentityViolated(format!("d(L/K) = {lhs} but d(L/L') + d(L'/K) = {rhs}")));
    }
    Ok(())
}

/// sw of θ viewed as a character of H for the extension L/L^H.
pub fn swan_restricted(d: &RamificationData, theta: &Character1, m: u32, a: u32) -> Result<CanonicalSymbolForm> {
    let h = theta.subgroup();
    let mut s = relative_different(d, h, m)?;
    for (i, &sig) in h.iter().enumerate().filter(|(_, &s)| s != 0) {
        let v = CyclotomicInteger::zeta_power(d.p(), m, theta.values()[i] as i64);
        s = s.add(&sg(d, sig, m)?.scale(&v));
    }
    let eps = epsilon(d.p(), m, a, d.var(), d.seed())?;
    Ok(s.add(&eps.scale_i64(1 - theta.trivial_multiplicity())))
}

#[derive(Clone, Debug, Serialize)]
pub struct InductionReport {
    pub lhs: CanonicalSymbolForm,
    pub rhs: CanonicalSymbolForm,
    /// The uncorrected form [G:H](sw_H(θ) - (dim θ - ⟨θ,1⟩) Σ_{G-H} s_G(σ)), for wild θ.
    pub uncorrected: Option<CanonicalSymbolForm>,
}

/// sw(ind θ) = k·sw_H(θ) - k·Σ_{σ∈G-H} s_G(σ) + (k-1)⟨θ,1⟩ε, k = [G:H].
pub fn induction_check(d: &RamificationData, theta: &Character1, m: u32, a: u32) -> Result<InductionReport> {
    let h = theta.subgroup();
    let k = (d.degree() / h.len()) as i64;
    let lhs = swan_diffval(d, &VirtualRep::single(theta.clone()), m, a)?;
    let sw_h = swan_restricted(d, theta, m, a)?;
    let mut outside = CanonicalSymbolForm::zero(d.p(), m, d.var());
    for s in (0..d.degree()).filter(|s| !h.contains(s)) {
        outside = outside.add(&sg(d, s, m)?);
    }
    let triv = theta.trivial_multiplicity();
    let eps = epsilon(d.p(), m, a, d.var(), d.seed())?;
    let rhs = sw_h.scale_i64(k).sub(&outside.scale_i64(k)).add(&eps.scale_i64((k - 1) * triv));
    if lhs != rhs {
        return Err(Error::IdentityViolated(format!("sw(ind θ) = {lhs} but the induction formula gives {rhs}")));
    }
    let uncorrected = (triv == 0).then(|| sw_h.sub(&outside.scale_i64(1 - triv)).scale_i64(k));
    if let Some(u) = &uncorrected {
        if *u != lhs {
            return Err(Error::IdentityViolated(format!("sw(ind θ) = {lhs} but [G:H](…) gives {u}")));
        }
    }
    Ok(InductionReport { lhs, rhs, uncorrected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{artin_schreier, corpus};
    use crate::galois::{find_conjugates, ramification_data, verify_conjugates};
    use crate::local::ExtensionSpec;

    fn as_data(p: u32) -> RamificationData {
        let s = ExtensionSpec::new(p, 1, artin_schreier(p, -RationalFunction::gen(p, Var::X)), None).unwrap();
        let roots = find_conjugates(&s).unwrap();
        ramification_data(&verify_conjugates(roots[0].spec(), &roots).unwrap()).unwrap()
    }

    /// The character with χ(σ) = ζ_p for the σ: h ↦ h + t (u_σ = -1).
    fn faithful(d: &RamificationData) -> Character1 {
        let all: Vec<usize> = (0..d.degree()).collect();
        let minus_one = -RationalFunction::one(d.p(), d.var());
        let s = all.iter().copied().find(|&s| s != 0 && d.u_value(s) == minus_one).unwrap();
        characters(d.group(), &all, d.p()).into_iter().find(|c| c.exponent(s) == Some(1)).unwrap()
    }

    #[test]
    fn s1_cancels() {
        for e in corpus() {
            let s = e.spec(None).unwrap();
            let roots = find_conjugates(&s).unwrap();
            let d = ramification_data(&verify_conjugates(roots[0].spec(), &roots).unwrap()).unwrap();
            let m = cyclotomic_level(&d);
            let mut acc = CanonicalSymbolForm::zero(d.p(), m, d.var());
            for i in 0..d.degree() {
                acc = acc.add(&sg(&d, i, m).unwrap());
            }
            assert!(acc.is_zero(), "{}", e.name);
        }
    }

    #[test]
    fn p3_anchor_swan_and_kcc() {
        let d = as_data(3);
        let chi = faithful(&d);
        let sw = swan_diffval(&d, &VirtualRep::single(chi.clone()), 1, 1).unwrap();
        let closed = swan_rank1_closed(&d, &chi, 1, 1).unwrap();
        assert_eq!(sw, closed);
        assert_eq!(sw.to_string(), "3[t] + -3[dh]");
        let k = kcc(&d, &VirtualRep::single(chi), 1, 1).unwrap();
        assert_eq!(k.to_string(), "-dx");
    }

    #[test]
    fn p2_anchor_kcc() {
        let d = as_data(2);
        let chi = faithful(&d);
        assert_eq!(kcc(&d, &VirtualRep::single(chi), 1, 1).unwrap().to_string(), "dx");
    }

    #[test]
    fn trivial_character_is_zero() {
        let d = as_data(5);
        let triv = Character1::trivial((0..5).collect(), 5);
        let sw = swan_diffval(&d, &VirtualRep::single(triv.clone()), 1, 1).unwrap();
        assert!(sw.is_zero());
        let k = kcc(&d, &VirtualRep::single(triv), 1, 1).unwrap();
        assert_eq!((k.power(), k.coefficient().is_one()), (0, true));
    }

    #[test]
    fn epsilon_shapes() {
        let v = Var::U(1);
        assert!(epsilon(2, 1, 1, v, 0).unwrap().is_zero());
        let e3 = epsilon(3, 1, 1, v, 0).unwrap();
        // ζ[1] + ζ²[2]: torsion coefficient ζ² = -1 - ζ, reduced mod 2
        assert_eq!(e3.torsion(), &CyclotomicInteger::zeta_power(3, 1, 2).reduce_mod(2));
        assert!(e3.factors().is_empty());
    }

    #[test]
    fn integrality_witness() {
        let v = Var::U(1);
        let u = RationalFunction::gen(3, v);
        let s = CanonicalSymbolForm::from_unit(3, 1, v, &CyclotomicInteger::one(3, 1), &u, 0).unwrap();
        let r = integrality_check(&s, 1);
        assert!(!r.integral);
        assert_eq!(r.witness.as_deref(), Some("1[u]"));
        assert!(integrality_check(&CanonicalSymbolForm::zero(3, 1, v), 1).integral);
    }

    fn computed(name: &str) -> crate::galois::Tower {
        let e = corpus().into_iter().find(|e| e.name == name).unwrap();
        let s = e.spec(None).unwrap();
        let roots = find_conjugates(&s).unwrap();
        crate::galois::Tower::new(&verify_conjugates(roots[0].spec(), &roots).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_matches_definition_on_corpus() {
        for e in corpus() {
            let t = computed(&e.name);
            let d = t.top();
            let m = cyclotomic_level(d);
            let q = d.p().pow(m);
            let all: Vec<usize> = (0..d.degree()).collect();
            for chi in characters(d.group(), &all, q) {
                if matches!(t.wild_level(&chi).unwrap(), Some(0)) {
                    let sw = swan_diffval(d, &VirtualRep::single(chi.clone()), m, 1).unwrap();
                    assert_eq!(sw, swan_rank1_closed(d, &chi, m, 1).unwrap(), "{}", e.name);
                    assert!(integrality_check(&sw, d.n()).integral);
                }
            }
        }
    }

    #[test]
    fn quotient_tower_and_induction_on_squares() {
        for name in ["sq-p2", "sq-p3"] {
            let t = computed(name);
            let d = t.top();
            let m = cyclotomic_level(d);
            let low = t.level(1);
            quotient_check(d, &low.data, &low.projection, m, 1).unwrap();
            tower_law(d, &low.data, d.gc(), m).unwrap();
            // closed form at level 1, carried to the top
            let all: Vec<usize> = (0..d.degree()).collect();
            for chi in characters(d.group(), &all, d.p()) {
                if t.wild_level(&chi).unwrap() == Some(1) {
                    let c1 = t.level_character(1, &chi).unwrap();
                    let closed = transit(&swan_rank1_closed(&low.data, &c1, m, 1).unwrap(), &low.data, d).unwrap();
                    assert_eq!(swan_diffval(d, &VirtualRep::single(chi), m, 1).unwrap(), closed);
                }
            }
            for h in d.group().subgroups().into_iter().filter(|h| h.len() * d.p() as usize == d.degree()) {
                for theta in characters(d.group(), &h, d.p()) {
                    induction_check(d, &theta, m, 1).unwrap();
                }
            }
        }
    }
}
