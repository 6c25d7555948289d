//! One-dimensional characters of subgroups, induction and virtual representations.
//!
//! Values live in μ_q with q = p^m the exponent of the ambient group; a
//! character stores the exponent e(σ) of its value ζ_q^e(σ).

use super::group::GroupTable;
use crate::algebra::CyclotomicInteger;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character1 {
    /// Sorted element indices of the subgroup H it is defined on.
    subgroup: Vec<usize>,
    /// Exponents mod q, parallel to `subgroup`.
    values: Vec<u32>,
    q: u32,
}

impl Character1 {
    pub fn new(table: &GroupTable, subgroup: Vec<usize>, values: Vec<u32>, q: u32) -> Result<Self> {
        if subgroup.len() != values.len() || !table.is_subgroup(&subgroup) {
            return Err(Error::Precondition("character needs a subgroup and one value per element".into()));
        }
        let mut sorted: Vec<(usize, u32)> = subgroup.into_iter().zip(values.into_iter().map(|v| v % q)).collect();
        sorted.sort_unstable();
        let (subgroup, values): (Vec<usize>, Vec<u32>) = sorted.into_iter().unzip();
        let c = Character1 { subgroup, values, q };
        for (i, &a) in c.subgroup.iter().enumerate() {
            for (j, &b) in c.subgroup.iter().enumerate() {
                let ab = c.exponent(table.mul(a, b)).expect("closed subgroup");
                if ab != (c.values[i] + c.values[j]) % q {
                    return Err(Error::Precondition(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(c)
    }

    pub fn trivial(subgroup: Vec<usize>, q: u32) -> Self {
        let values = vec![0; subgroup.len()];
        Character1 { subgroup, values, q }
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// e(σ) with χ(σ) = ζ_q^e(σ), `None` off the subgroup.
    pub fn exponent(&self, g: usize) -> Option<u32> {
        self.subgroup.binary_search(&g).ok().map(|i| self.values[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.subgroup.iter().zip(&self.values).filter(|(_, &v)| v == 0).map(|(&g, _)| g).collect()
    }

    pub fn restrict(&self, table: &GroupTable, to: &[usize]) -> Result<Self> {
        let values = to
            .iter()
            .map(|&g| self.exponent(g).ok_or_else(|| Error::Precondition("restriction outside the subgroup".into())))
            .collect::<Result<Vec<_>>>()?;
        Character1::new(table, to.to_vec(), values, self.q)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.subgroup, o.subgroup);
        let values = self.values.iter().zip(&o.values).map(|(a, b)| (a + b) % self.q).collect();
        Character1 { subgroup: self.subgroup.clone(), values, q: self.q }
    }

    /// Values in Z[ζ_q] on the subgroup, as a class function on its elements.
    pub fn value(&self, p: u32, g: usize) -> Option<CyclotomicInteger> {
        let m = log_p(p, self.q);
        self.exponent(g).map(|e| CyclotomicInteger::zeta_power(p, m, e as i64))
    }

    /// ⟨θ, 1⟩_H: 1 for the trivial character, 0 otherwise.
    pub fn trivial_multiplicity(&self) -> i64 {
        self.is_trivial() as i64
    }
}

pub(crate) fn log_p(p: u32, q: u32) -> u32 {
    let mut m = 0;
    let mut x = 1;
    while x < q {
        x *= p;
        m += 1;
    }
    assert_eq!(x, q, "q must be a power of p");
    m
}

/// All homomorphisms H → Z/q, in lexicographic order of their generator values.
pub fn characters(table: &GroupTable, subgroup: &[usize], q: u32) -> Vec<Character1> {
    let mut h = subgroup.to_vec();
    h.sort_unstable();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0];
    for &g in &h {
        if !span.contains(&g) {
            gens.push(g);
            span = table.generated(&gens);
        }
    }
    let mut out = Vec::new();
    let total = (q as usize).pow(gens.len() as u32);
    for code in 0..total {
        let mut c = code;
        let assign: Vec<u32> = gens
            .iter()
            .map(|_| {
                let v = (c % q as usize) as u32;
                c /= q as usize;
                v
            })
            .collect();
        if let Some(values) = extend(table, &h, &gens, &assign, q) {
            if let Ok(ch) = Character1::new(table, h.clone(), values, q) {
                out.push(ch);
            }
        }
    }
    out.sort();
    out
}

fn extend(table: &GroupTable, h: &[usize], gens: &[usize], assign: &[u32], q: u32) -> Option<Vec<u32>> {
    let mut val: Vec<Option<u32>> = vec![None; table.order()];
    val[0] = Some(0);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for (g, &a) in gens.iter().zip(assign) {
            let y = table.mul(x, *g);
            let v = (val[x].expect("visited") + a) % q;
            match val[y] {
                None => {
                    val[y] = Some(v);
                    stack.push(y);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    h.iter().map(|&g| val[g]).collect()
}

/// A class function on G with values in Z[ζ_q].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CyclotomicInteger>,
}

impl ClassFunction {
    pub fn zero(p: u32, m: u32, order: usize) -> Self {
        ClassFunction { values: vec![CyclotomicInteger::zero(p, m); order] }
    }

    pub fn add(&self, o: &Self) -> Self {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        ClassFunction { values: self.values.iter().map(|a| a.scale_i64(k)).collect() }
    }

    pub fn dim(&self) -> Option<i64> {
        self.values[0].as_i64()
    }

    /// ⟨χ, 1⟩ = (1/#G) Σ χ(σ).
    pub fn trivial_multiplicity(&self) -> Result<i64> {
        let n = self.values.len();
        let s = self.values.iter().skip(1).fold(self.values[0].clone(), |acc, v| acc.add(v));
        s.div_exact(&BigInt::from(n))
            .and_then(|c| c.as_i64())
            .ok_or(Error::NonIntegralInnerProduct)
    }
}

/// ind_H^G θ as a class function on G.
pub fn induce(table: &GroupTable, p: u32, m: u32, theta: &Character1) -> ClassFunction {
    let cosets = table.left_cosets(theta.subgroup());
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let values = (0..table.order())
        .map(|s| {
            reps.iter().fold(CyclotomicInteger::zero(p, m), |acc, &g| {
                let conj = table.mul(table.mul(table.inv(g), s), g);
                match theta.value(p, conj) {
                    Some(v) => acc.add(&v),
                    None => acc,
                }
            })
        })
        .collect();
    ClassFunction { values }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepTerm {
    pub mult: i64,
    pub theta: Character1,
}

/// A Z-combination of induced one-dimensional characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct VirtualRep {
    pub terms: Vec<RepTerm>,
}

impl VirtualRep {
    pub fn single(theta: Character1) -> Self {
        VirtualRep { terms: vec![RepTerm { mult: 1, theta }] }
    }

    pub fn plus(mut self, mult: i64, theta: Character1) -> Self {
        self.terms.push(RepTerm { mult, theta });
        self
    }

    pub fn dim(&self, order: usize) -> i64 {
        self.terms.iter().map(|t| t.mult * (order / t.theta.subgroup().len()) as i64).sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.terms.iter().all(|t| t.mult >= 0)
    }

    pub fn character(&self, table: &GroupTable, p: u32, m: u32) -> ClassFunction {
        self.terms.iter().fold(ClassFunction::zero(p, m, table.order()), |acc, t| {
            acc.add(&induce(table, p, m, &t.theta).scale(t.mult))
        })
    }

    /// ⟨M, 1⟩ by Frobenius reciprocity.
    pub fn trivial_multiplicity(&self) -> i64 {
        self.terms.iter().map(|t| t.mult * t.theta.trivial_multiplicity()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> GroupTable {
        GroupTable::new((0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect()).unwrap()
    }

    #[test]
    fn characters_of_cyclic() {
        let g = z3();
        let cs = characters(&g, &[0, 1, 2], 3);
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_trivial());
        let total = cs.iter().fold(ClassFunction::zero(3, 1, 3), |acc, c| acc.add(&induce(&g, 3, 1, c)));
        // regular character: (3, 0, 0)
        assert_eq!(total.values[0].as_i64(), Some(3));
        assert!(total.values[1].is_zero() && total.values[2].is_zero());
    }

    #[test]
    fn induction_from_trivial_subgroup() {
        let g = z3();
        let theta = Character1::trivial(vec![0], 3);
        let reg = VirtualRep::single(theta);
        let chi = reg.character(&g, 3, 1);
        assert_eq!(chi.dim(), Some(3));
        assert_eq!(chi.trivial_multiplicity().unwrap(), 1);
        assert_eq!(reg.trivial_multiplicity(), 1);
    }

    #[test]
    fn elementary_square_has_p2_characters() {
        let coords: Vec<Vec<u32>> = (0..4).map(|i| vec![i % 2, i / 2]).collect();
        let g = GroupTable::elementary_abelian(2, &coords).unwrap();
        assert_eq!(characters(&g, &[0, 1, 2, 3], 2).len(), 4);
        assert_eq!(characters(&g, &[0, 1], 2).len(), 2);
    }
}
