//! Jumps, conductor, wild center G^c, the u-map and the reduction polynomial f̄_c.

use super::additive::additive_poly_oracle;
use super::group::{GaloisGroup, GroupTable};
use crate::algebra::{pn_th_root, EPoly, RationalFunction, Var};
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Computed from conjugates in O_L.
    Computed,
    /// Supplied as abstract jump and u-value data.
    Abstract,
}

#[derive(Clone, Debug)]
pub struct RamificationData {
    p: u32,
    n: u32,
    abar0: RationalFunction,
    hbar: RationalFunction,
    group: GroupTable,
    jumps: Vec<Option<i64>>,
    u: Vec<Option<RationalFunction>>,
    rho: i64,
    c: i64,
    gc: Vec<usize>,
    s: u32,
    fbar_c: EPoly,
    seed: u64,
    provenance: Provenance,
}

/// Abstract extension data: an elementary abelian group given by coordinates,
/// its jump profile and u-values, and the residue ā₀.
#[derive(Clone, Debug)]
pub struct AbstractExtensionData {
    pub p: u32,
    pub n: u32,
    /// Coordinates in F_p^n; the zero vector first.
    pub elements: Vec<Vec<u32>>,
    /// v(h - σ(h)) for the non-identity elements, in order.
    pub jumps: Vec<i64>,
    /// u-values in F_p(u), u^(p^n) = x, for the non-identity elements.
    pub u_values: Vec<RationalFunction>,
    pub abar0: RationalFunction,
    pub seed: u64,
}

impl AbstractExtensionData {
    pub fn ramification_data(&self) -> Result<RamificationData> {
        let d = (self.p as usize).pow(self.n);
        if self.elements.len() != d || self.jumps.len() != d - 1 || self.u_values.len() != d - 1 {
            return Err(Error::InvalidSpec(format!("abstract data must list {d} elements")));
        }
        if self.elements[0].iter().any(|&c| c != 0) || self.elements.iter().any(|e| e.len() != self.n as usize) {
            return Err(Error::InvalidSpec("elements must be F_p^n coordinates with zero first".into()));
        }
        if self.abar0.var() != Var::X || self.abar0.is_zero() || self.abar0.is_pth_power() {
            return Err(Error::InvalidSpec("abar0 must be a nonzero non-p-th power of F".into()));
        }
        let var = Var::U(self.n);
        let mut u = vec![None];
        for x in &self.u_values {
            let x = x.embed(var)?;
            if x.is_zero() {
                return Err(Error::InvalidSpec("u-values are residues of units".into()));
            }
            u.push(Some(x));
        }
        let mut jumps = vec![None];
        for &j in &self.jumps {
            if j < 1 {
                return Err(Error::InvalidSpec("jumps are positive".into()));
            }
            jumps.push(Some(j));
        }
        let group = GroupTable::elementary_abelian(self.p, &self.elements)?;
        let hbar = pn_th_root(&-&self.abar0, self.n)?;
        RamificationData::assemble(self.p, self.n, self.abar0.clone(), hbar, group, jumps, u, self.seed, Provenance::Abstract)
    }
}

pub fn ramification_data(g: &GaloisGroup) -> Result<RamificationData> {
    let spec = g.spec();
    if g.order() < 2 {
        return Err(Error::Precondition("trivial group".into()));
    }
    let jumps = g.elements().iter().map(|e| e.jump()).collect();
    let u = g.elements().iter().map(|e| e.u_value().cloned()).collect();
    let data = RamificationData::assemble(
        spec.p(),
        spec.n(),
        spec.abar0().clone(),
        spec.hbar().clone(),
        g.table().clone(),
        jumps,
        u,
        spec.seed(),
        Provenance::Computed,
    )?;
    if data.c > 2 {
        for (i, a) in spec.coeffs().iter().enumerate().skip(1) {
            if a.valuation_bound() < 2 {
                return Err(Error::IdentityViolated(format!("c = {} > 2 but v(a_{i}) < 2", data.c)));
            }
        }
    }
    Ok(data)
}

impl RamificationData {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        p: u32,
        n: u32,
        abar0: RationalFunction,
        hbar: RationalFunction,
        group: GroupTable,
        jumps: Vec<Option<i64>>,
        u: Vec<Option<RationalFunction>>,
        seed: u64,
        provenance: Provenance,
    ) -> Result<Self> {
        let d = group.order();
        if d < 2 {
            return Err(Error::Precondition("trivial group".into()));
        }
        if d != (p as usize).pow(n) {
            return Err(Error::InvalidSpec(format!("group order {d} is not p^n")));
        }
        let var = Var::U(n);
        let rho = jumps.iter().flatten().max().copied().expect("nonidentity elements");
        let c = rho + jumps.iter().flatten().sum::<i64>();
        if c < d as i64 {
            return Err(Error::IdentityViolated(format!("conductor {c} is below p^n = {d}")));
        }
        let gc: Vec<usize> = (0..d).filter(|&i| jumps[i].map_or(true, |j| j >= rho)).collect();
        if !group.is_subgroup(&gc) {
            return Err(Error::AdditivityViolation("G^c is not a subgroup".into()));
        }
        let uv = |i: usize| u[i].clone().unwrap_or_else(|| RationalFunction::zero(p, var));
        for &a in &gc {
            for &b in &gc {
                if uv(group.mul(a, b)) != &uv(a) + &uv(b) {
                    return Err(Error::AdditivityViolation(format!("u is not additive on elements {a}, {b}")));
                }
            }
        }
        let mut s = 0;
        while (p as usize).pow(s) < gc.len() {
            s += 1;
        }
        if (p as usize).pow(s) != gc.len() {
            return Err(Error::AdditivityViolation(format!("#G^c = {} is not a power of p", gc.len())));
        }
        let wild = gc.iter().fold(EPoly::constant(RationalFunction::one(p, var)), |f, &i| f.mul(&EPoly::linear(uv(i))));
        if !wild.is_additive() || wild.coeff(1).is_zero() {
            return Err(Error::AdditivityViolation(format!("{wild} is not separable additive")));
        }
        let outside = (0..d)
            .filter(|i| !gc.contains(i))
            .fold(RationalFunction::one(p, var), |acc, i| &acc * &uv(i));
        let fbar_c = wild.scale(&outside);
        Ok(RamificationData { p, n, abar0, hbar, group, jumps, u, rho, c, gc, s, fbar_c, seed, provenance })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn degree(&self) -> usize {
        self.group.order()
    }
    /// The tag of E = F_p(u), u^(p^n) = x.
    pub fn var(&self) -> Var {
        Var::U(self.n)
    }
    pub fn abar0(&self) -> &RationalFunction {
        &self.abar0
    }
    pub fn hbar(&self) -> &RationalFunction {
        &self.hbar
    }
    pub fn group(&self) -> &GroupTable {
        &self.group
    }
    pub fn jump(&self, i: usize) -> Option<i64> {
        self.jumps[i]
    }
    pub fn jumps(&self) -> &[Option<i64>] {
        &self.jumps
    }
    /// u_σ, zero for the identity.
    pub fn u_value(&self, i: usize) -> RationalFunction {
        self.u[i].clone().unwrap_or_else(|| RationalFunction::zero(self.p, self.var()))
    }
    /// ρ(c), the largest jump.
    pub fn rho(&self) -> i64 {
        self.rho
    }
    pub fn conductor(&self) -> i64 {
        self.c
    }
    pub fn gc(&self) -> &[usize] {
        &self.gc
    }
    pub fn in_gc(&self, i: usize) -> bool {
        self.gc.contains(&i)
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn fbar_c(&self) -> &EPoly {
        &self.fbar_c
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// ∏ u_σ over the given elements.
    pub fn u_product(&self, elems: impl IntoIterator<Item = usize>) -> RationalFunction {
        elems.into_iter().fold(RationalFunction::one(self.p, self.var()), |acc, i| &acc * &self.u_value(i))
    }

    /// ∏_{σ ∈ G - G^c} u_σ.
    pub fn outside_product(&self) -> RationalFunction {
        self.u_product((0..self.degree()).filter(|i| !self.in_gc(*i)))
    }

    /// An F_p-basis of G^c, chosen greedily in element order.
    pub fn gc_basis(&self) -> Vec<usize> {
        let mut basis = Vec::new();
        let mut span = vec![0];
        for &g in &self.gc {
            if !span.contains(&g) {
                basis.push(g);
                span = self.group.generated(&basis);
            }
        }
        basis
    }

    /// f̄_c against (∏_{G-G^c} u)·(brute-force additive polynomial of a basis of G^c).
    pub fn check_fbar_two_path(&self) -> Result<()> {
        let pts: Vec<RationalFunction> = self.gc_basis().into_iter().map(|i| self.u_value(i)).collect();
        let other = additive_poly_oracle(self.p, self.var(), &pts)?.scale(&self.outside_product());
        if other != self.fbar_c {
            return Err(Error::IdentityViolated(format!("f̄_c = {} but the oracle gives {other}", self.fbar_c)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{find_conjugates, verify_conjugates};
    use crate::local::{ExtensionSpec, LaurentSeries, EXACT};

    fn as_data(p: u32) -> RamificationData {
        let mut c = vec![LaurentSeries::zero(p, EXACT); p as usize];
        c[0] = LaurentSeries::constant(-RationalFunction::gen(p, Var::X), EXACT);
        c[1] = LaurentSeries::t_power(p, p as i64 - 1, EXACT).neg();
        let s = ExtensionSpec::new(p, 1, c, None).unwrap();
        let roots = find_conjugates(&s).unwrap();
        ramification_data(&verify_conjugates(roots[0].spec(), &roots).unwrap()).unwrap()
    }

    #[test]
    fn p3_anchor() {
        let d = as_data(3);
        let v = d.var();
        assert_eq!((d.conductor(), d.rho(), d.gc().len(), d.s()), (3, 1, 3, 1));
        let mut us: Vec<RationalFunction> = (1..3).map(|i| d.u_value(i)).collect();
        us.sort();
        assert_eq!(us, vec![RationalFunction::constant(3, 1, v), RationalFunction::constant(3, 2, v)]);
        let expect = EPoly::monomial(3, v, 3).sub(&EPoly::monomial(3, v, 1));
        assert_eq!(d.fbar_c(), &expect);
        d.check_fbar_two_path().unwrap();
    }

    #[test]
    fn p2_anchor() {
        let d = as_data(2);
        let v = d.var();
        assert_eq!(d.conductor(), 2);
        assert!(d.u_value(1).is_one());
        assert_eq!(d.fbar_c(), &EPoly::monomial(2, v, 2).add(&EPoly::monomial(2, v, 1)));
    }

    #[test]
    fn abstract_path() {
        let p = 3;
        let v = Var::U(1);
        let data = AbstractExtensionData {
            p,
            n: 1,
            elements: vec![vec![0], vec![1], vec![2]],
            jumps: vec![1, 1],
            u_values: vec![RationalFunction::constant(p, 2, v), RationalFunction::constant(p, 1, v)],
            abar0: -RationalFunction::gen(p, Var::X),
            seed: 0,
        };
        let d = data.ramification_data().unwrap();
        assert_eq!(d.conductor(), 3);
        assert_eq!(d.provenance(), Provenance::Abstract);
        let mut bad = data.clone();
        bad.u_values[1] = RationalFunction::constant(p, 2, v);
        assert!(matches!(bad.ramification_data(), Err(Error::AdditivityViolation(_))));
    }
}
