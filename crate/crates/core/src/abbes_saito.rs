//! Abbes-Saito side: slope decomposition, the refined Swan conductor in
//! closed form, characteristic cycles and their comparison with kcc.

use crate::algebra::{DifferentialForm, DifferentialTensor, EPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::galois::{characters, Character1, RamificationData, Tower, VirtualRep};
use crate::kato::{fbar_c_chi, kcc, CentralCharacter};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Conductor of L^(ker χ)/K for a character χ of G; 0 for tame χ.
pub fn slope_of_character(tower: &Tower, chi: &Character1) -> Result<i64> {
    Ok(match tower.wild_level(chi)? {
        None => 0,
        Some(k) => tower.level(k).data.conductor(),
    })
}

/// Part of M on which the wild center of level `level` acts by `central`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeSlot {
    pub level: usize,
    pub slope: i64,
    /// χ̄(σ) ∈ F_p for σ in G_level^c, in the order of that level's `gc`.
    pub central: Vec<u32>,
    pub mult: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SlopeDecomposition {
    pub slots: Vec<SlopeSlot>,
    pub tame_dim: i64,
}

impl SlopeDecomposition {
    pub fn dim(&self) -> i64 {
        self.tame_dim + self.slots.iter().map(|s| s.mult).sum::<i64>()
    }

    /// Multiplicity by slope, slope 0 included.
    pub fn by_slope(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        if self.tame_dim != 0 {
            out.insert(0, self.tame_dim);
        }
        for s in &self.slots {
            *out.entry(s.slope).or_insert(0) += s.mult;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// θ on a subgroup of G_k read as a character of its preimage in G.
fn pull(tower: &Tower, k: usize, theta: &Character1) -> Result<Character1> {
    let proj = &tower.level(k).projection;
    let n = proj.len();
    let sub: Vec<usize> = (0..n).filter(|&s| theta.exponent(proj[s]).is_some()).collect();
    let values = sub.iter().map(|&s| theta.exponent(proj[s]).expect("in preimage")).collect();
    Character1::new(tower.top().group(), sub, values, theta.q())
}

/// A character of G trivial on ker(G → G_k), pushed to G_k.
fn push(tower: &Tower, k: usize, theta: &Character1) -> Result<Character1> {
    let lvl = tower.level(k);
    let mut values: BTreeMap<usize, u32> = BTreeMap::new();
    for (&s, &e) in theta.subgroup().iter().zip(theta.values()) {
        if *values.entry(lvl.projection[s]).or_insert(e) != e {
            return Err(Error::Precondition("character does not factor through the level".into()));
        }
    }
    let (sub, vals) = values.into_iter().unzip();
    Character1::new(lvl.data.group(), sub, vals, theta.q())
}

/// Restriction of ind_H^G θ to G^c, split by slope and central character.
pub fn decompose(tower: &Tower, rep: &VirtualRep, a: u32) -> Result<SlopeDecomposition> {
    let mut slots: BTreeMap<(usize, Vec<u32>), i64> = BTreeMap::new();
    let mut tame = 0;
    for t in &rep.terms {
        walk(tower, 0, &t.theta, t.mult, a, &mut slots, &mut tame)?;
    }
    let slots = slots
        .into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|((level, central), mult)| SlopeSlot { level, slope: tower.level(level).data.conductor(), central, mult })
        .collect();
    Ok(SlopeDecomposition { slots, tame_dim: tame })
}

fn walk(
    tower: &Tower,
    k: usize,
    theta: &Character1,
    mult: i64,
    a: u32,
    slots: &mut BTreeMap<(usize, Vec<u32>), i64>,
    tame: &mut i64,
) -> Result<()> {
    let d = &tower.level(k).data;
    let g = d.group();
    let th = push(tower, k, theta)?;
    let h = th.subgroup();
    if !d.gc().iter().all(|s| h.contains(s)) {
        if !g.is_abelian() {
            return Err(Error::Unsupported("induction from a subgroup not containing G^c in a non-abelian group".into()));
        }
        // ind θ is the sum of the characters of G_k extending θ
        let all: Vec<usize> = (0..d.degree()).collect();
        for chi in characters(g, &all, th.q()) {
            if chi.restrict(g, h)? == th {
                walk(tower, k, &pull(tower, k, &chi)?, mult, a, slots, tame)?;
            }
        }
        return Ok(());
    }
    if d.gc().iter().any(|&s| th.exponent(s) != Some(0)) {
        for coset in g.left_cosets(h) {
            let r = coset[0];
            let values = d.gc().iter().map(|&s| th.exponent(g.mul(g.mul(g.inv(r), s), r)).expect("normal")).collect();
            let conj = Character1::new(g, d.gc().to_vec(), values, th.q())?;
            let cc = crate::kato::central_character(d, &conj, a)?;
            *slots.entry((k, cc.values)).or_insert(0) += mult;
        }
        return Ok(());
    }
    let index = (d.degree() / h.len()) as i64;
    if d.gc().len() == d.degree() {
        *tame += mult * index;
        return Ok(());
    }
    if k + 1 >= tower.levels().len() {
        return Err(tower.unavailable());
    }
    walk(tower, k + 1, theta, mult, a, slots, tame)
}

/// rsw(χ) = coefficient·dx ⊗ t^twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedSwan {
    pub coefficient: RationalFunction,
    pub twist: i64,
}

impl RefinedSwan {
    pub fn form(&self) -> DifferentialForm {
        DifferentialForm::new(self.coefficient.clone(), 1)
    }
}

impl fmt::Display for RefinedSwan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗t^{}", self.form(), self.twist)
    }
}

impl Serialize for RefinedSwan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("display", &self.to_string())?;
        m.serialize_entry("form", &self.form())?;
        m.serialize_entry("twist", &self.twist)?;
        m.end()
    }
}

fn rsw_with_lift(d: &RamificationData, kernel: &[usize], tau: usize) -> Result<RationalFunction> {
    let f = fbar_c_chi(d, kernel);
    let val = f.eval(&d.u_value(tau)).pow(d.p() as i64)?;
    let den = &d.outside_product() * &val;
    if den.is_zero() {
        return Err(Error::IdentityViolated("refined Swan conductor has a zero denominator".into()));
    }
    let da = d.abar0().derivative().embed(d.var())?;
    Ok(-&(&da / &den))
}

/// f̃(f̄_(c,χ)(ξ)) = f̄_c(ξ) with f̃(ξ) = (∏_{G-G^c} u_σ)(ξ^p - f̄^(p-1)_(c,χ)(u_τ) ξ).
fn check_factorization(d: &RamificationData, kernel: &[usize], tau: usize) -> Result<()> {
    let p = d.p();
    let f = fbar_c_chi(d, kernel);
    let lin = f.eval(&d.u_value(tau)).pow(p as i64 - 1)?;
    let outer = EPoly::monomial(p, d.var(), p as usize)
        .sub(&EPoly::monomial(p, d.var(), 1).scale(&lin))
        .scale(&d.outside_product());
    let composed = outer.compose(&f);
    if &composed != d.fbar_c() {
        return Err(Error::IdentityViolated(format!("f̃∘f̄_(c,χ) = {composed} but f̄_c = {}", d.fbar_c())));
    }
    Ok(())
}

/// rsw(χ) = -dā₀ ⊗ t^(-c) / ((∏_{σ∈G-G^c} u_σ)·f̄^p_(c,χ)(u_τ)), checked
/// against the factorization of f̄_c and over every lift τ.
pub fn rsw_closed_form(d: &RamificationData, central: &[u32]) -> Result<RefinedSwan> {
    let cc = CentralCharacter::from_values(d, central.to_vec())?;
    let tau = cc.lifts[0];
    check_factorization(d, &cc.kernel, tau)?;
    let coefficient = rsw_with_lift(d, &cc.kernel, tau)?;
    for &s in &cc.kernel {
        let other = d.group().mul(tau, s);
        if rsw_with_lift(d, &cc.kernel, other)? != coefficient {
            return Err(Error::IdentityViolated(format!("rsw depends on the lift {other}")));
        }
    }
    Ok(RefinedSwan { coefficient, twist: -d.conductor() })
}

/// rsw of a character of G wild at its level.
pub fn rsw_of_character(tower: &Tower, chi: &Character1, a: u32) -> Result<RefinedSwan> {
    let k = tower.wild_level(chi)?.ok_or(Error::CharacterNotWild)?;
    let d = &tower.level(k).data;
    let cc = crate::kato::central_character(d, &tower.level_character(k, chi)?, a)?;
    rsw_closed_form(d, &cc.values)
}

/// cc(M) = ⊗ (rsw(χ)⊗t^r)^(dim M_χ^(r)), coefficient at the top residue field.
pub fn cc_of(tower: &Tower, dec: &SlopeDecomposition) -> Result<DifferentialTensor> {
    let top = tower.top();
    let mut out = DifferentialTensor::scalar(RationalFunction::one(top.p(), top.var()));
    for slot in &dec.slots {
        let r = rsw_closed_form(&tower.level(slot.level).data, &slot.central)?;
        out = out.tensor(&r.form().embed(top.var())?.tensor_power(slot.mult)?)?;
    }
    Ok(out)
}

pub fn cc(tower: &Tower, rep: &VirtualRep, a: u32) -> Result<DifferentialTensor> {
    cc_of(tower, &decompose(tower, rep, a)?)
}

/// cc ∈ (Ω¹_F)^⊗r: the coefficient is a rational function of x.
pub fn hasse_arf_check(t: &DifferentialTensor) -> bool {
    t.descend_to_base().is_some()
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub cc: DifferentialTensor,
    pub kcc: DifferentialTensor,
    pub decomposition: SlopeDecomposition,
    pub hasse_arf: bool,
}

/// Both characteristic cycles by their independent pipelines; a mismatch is an error.
pub fn compare_cc_kcc(tower: &Tower, rep: &VirtualRep, m: u32, a: u32) -> Result<Comparison> {
    let decomposition = decompose(tower, rep, a)?;
    let c = cc_of(tower, &decomposition)?;
    let k = kcc(tower.top(), rep, m, a)?;
    if !c.same_as(&k) {
        return Err(Error::IdentityViolated(format!("cc = {c} but kcc = {k}")));
    }
    let hasse_arf = hasse_arf_check(&c);
    let cc = c.descend_to_base().unwrap_or(c);
    let kcc = k.descend_to_base().unwrap_or(k);
    Ok(Comparison { cc, kcc, decomposition, hasse_arf })
}

#[derive(Clone, Debug, Serialize)]
pub struct CcInduction {
    pub lhs: DifferentialTensor,
    pub rhs: DifferentialTensor,
}

/// cc(ind_H^G θ) = cc(θ)^⊗k ⊗ (dā₀)^⊗(k-1) / (∏_{σ∈G-H} u_σ)^k for H ⊇ G^c,
/// with cc(θ) over L^H having scale λ = -1/((∏_{H-G^c} u_σ)·f̄^p(u_τ)).
pub fn cc_induction_check(tower: &Tower, theta: &Character1, a: u32) -> Result<CcInduction> {
    let d = tower.top();
    let g = d.group();
    let h = theta.subgroup();
    if !d.gc().iter().all(|s| h.contains(s)) {
        return Err(Error::Precondition("H must contain G^c".into()));
    }
    if d.gc().iter().all(|&s| theta.exponent(s) == Some(0)) {
        return Err(Error::CharacterNotWild);
    }
    let lhs = cc(tower, &VirtualRep::single(theta.clone()), a)?;
    let mut scale = RationalFunction::one(d.p(), d.var());
    let cosets = g.left_cosets(h);
    let inside = d.u_product(h.iter().copied().filter(|&s| !d.in_gc(s)));
    let outside = d.u_product((0..d.degree()).filter(|s| !h.contains(s)));
    for coset in &cosets {
        let r = coset[0];
        let values = d.gc().iter().map(|&s| theta.exponent(g.mul(g.mul(g.inv(r), s), r)).expect("normal")).collect();
        let conj = Character1::new(g, d.gc().to_vec(), values, theta.q())?;
        let cc = crate::kato::central_character(d, &conj, a)?;
        let f = fbar_c_chi(d, &cc.kernel).eval(&d.u_value(cc.lifts[0])).pow(d.p() as i64)?;
        let lambda = -&(&inside * &f).inv()?;
        scale = &scale * &(&lambda / &outside);
    }
    let k = cosets.len() as i64;
    let da = d.abar0().derivative().embed(d.var())?.pow(k)?;
    let rhs = DifferentialTensor::new(&scale * &da, k);
    if !lhs.same_as(&rhs) {
        return Err(Error::IdentityViolated(format!("cc(ind θ) = {lhs} but the induction formula gives {rhs}")));
    }
    Ok(CcInduction { lhs, rhs })
}
