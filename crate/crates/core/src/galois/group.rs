//! Galois groups presented by the images σ(h) of the generator.

use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::local::{ExtensionSpec, OrderElement};
use std::sync::Arc;

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(Error::Precondition("malformed multiplication table".into()));
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return Err(Error::Precondition("element 0 is not the identity".into()));
        }
        let mut inverses = Vec::with_capacity(n);
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i][j] == 0)
                .ok_or_else(|| Error::Precondition(format!("element {i} has no inverse")))?;
            if table[j][i] != 0 {
                return Err(Error::Precondition(format!("left and right inverses of {i} differ")));
            }
            inverses.push(j);
        }
        Ok(GroupTable { table, inverses })
    }

    /// Additive group F_p^r with elements listed as coordinate vectors (zero first).
    pub fn elementary_abelian(p: u32, coords: &[Vec<u32>]) -> Result<Self> {
        let idx = |v: &[u32]| coords.iter().position(|c| c.as_slice() == v);
        let mut table = Vec::with_capacity(coords.len());
        for a in coords {
            let mut row = Vec::with_capacity(coords.len());
            for b in coords {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                row.push(idx(&s).ok_or_else(|| Error::Precondition("coordinates do not form a group".into()))?);
            }
            table.push(row);
        }
        Self::new(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        h.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        self.is_subgroup(h)
            && (0..self.order()).all(|g| h.iter().all(|&x| h.contains(&self.mul(self.mul(g, x), self.inv(g)))))
    }

    /// Left cosets gH, each sorted, ordered by smallest element.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// All subgroups, smallest first.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![vec![0]];
        let mut frontier = vec![vec![0usize]];
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.generated(&gens);
                if !found.contains(&k) {
                    found.push(k.clone());
                    frontier.push(k);
                }
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    /// A minimal-size generating set found greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        while span.len() < self.order() {
            let best = (0..self.order())
                .filter(|g| !span.contains(g))
                .max_by_key(|&g| {
                    let mut t = gens.clone();
                    t.push(g);
                    (self.generated(&t).len(), std::cmp::Reverse(g))
                })
                .expect("nonempty complement");
            gens.push(best);
            span = self.generated(&gens);
        }
        gens
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Clone, Debug)]
pub struct GaloisElement {
    image: OrderElement,
    jump: Option<i64>,
    u: Option<RationalFunction>,
}

impl GaloisElement {
    /// σ(h).
    pub fn image(&self) -> &OrderElement {
        &self.image
    }
    /// v(h - σ(h)); `None` for the identity.
    pub fn jump(&self) -> Option<i64> {
        self.jump
    }
    /// Residue of (h - σ(h))/t^v.
    pub fn u_value(&self) -> Option<&RationalFunction> {
        self.u.as_ref()
    }
    pub fn is_identity(&self) -> bool {
        self.jump.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct GaloisGroup {
    spec: Arc<ExtensionSpec>,
    elements: Vec<GaloisElement>,
    table: GroupTable,
}

impl GaloisGroup {
    pub fn spec(&self) -> &Arc<ExtensionSpec> {
        &self.spec
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[GaloisElement] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &GaloisElement {
        &self.elements[i]
    }
    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// σ_i(a).
    pub fn apply(&self, i: usize, a: &OrderElement) -> OrderElement {
        a.evaluate_at(&self.elements[i].image)
    }

    /// Index of the element whose image agrees with `x` to precision.
    pub fn index_of(&self, x: &OrderElement) -> Option<usize> {
        self.elements.iter().position(|e| e.image.eq_within(x))
    }
}

/// f(x) evaluated in O_L.
pub fn eval_min_poly(spec: &Arc<ExtensionSpec>, x: &OrderElement) -> OrderElement {
    let mut acc = OrderElement::one(spec);
    for a in spec.coeffs().iter().rev() {
        acc = acc.mul(x).add(&OrderElement::from_base(spec, a.clone()));
    }
    acc
}

/// Jump and u-value of h - σ(h).
pub(crate) fn difference_data(h: &OrderElement, image: &OrderElement) -> Result<(i64, RationalFunction)> {
    let d = h.sub(image);
    let v = d.order_valuation()?;
    let u = d.mul_t(-v).residue()?;
    Ok((v, u))
}

pub fn verify_conjugates(spec: &Arc<ExtensionSpec>, roots: &[OrderElement]) -> Result<GaloisGroup> {
    let d = spec.degree();
    if roots.len() != d {
        return Err(Error::Precondition(format!("expected {d} conjugates, got {}", roots.len())));
    }
    let h = OrderElement::gen(spec);
    if roots.iter().any(|r| !Arc::ptr_eq(r.spec(), spec)) {
        return Err(Error::Precondition("conjugates belong to another extension".into()));
    }
    if !roots[0].eq_within(&h) {
        return Err(Error::Precondition("the first conjugate must be h".into()));
    }
    for (i, r) in roots.iter().enumerate() {
        if !eval_min_poly(spec, r).is_zero_mod_precision() {
            return Err(Error::NotARoot(i));
        }
    }
    let mut elements = Vec::with_capacity(d);
    for (i, r) in roots.iter().enumerate() {
        for j in 0..i {
            if roots[j].eq_within(r) {
                return Err(Error::DuplicateRoot(j, i));
            }
        }
        let (jump, u) = if i == 0 { (None, None) } else { difference_data(&h, r).map(|(v, u)| (Some(v), Some(u)))? };
        elements.push(GaloisElement { image: r.clone(), jump, u });
    }
    elements[1..].sort_by_cached_key(|e| (e.jump, e.u.clone(), e.image.to_string()));
    let mut table = vec![vec![0; d]; d];
    for i in 0..d {
        for j in 0..d {
            // (σ_i σ_j)(h) = σ_i(σ_j(h))
            let img = elements[j].image.evaluate_at(&elements[i].image);
            table[i][j] = elements
                .iter()
                .position(|e| e.image.eq_within(&img))
                .ok_or(Error::NotClosed(i, j))?;
        }
    }
    let table = GroupTable::new(table)?;
    Ok(GaloisGroup { spec: spec.clone(), elements, table })
}
