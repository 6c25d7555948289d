//! The tower L ⊃ L^(G^c) ⊃ … obtained by repeatedly dividing out the wild center.

use super::characters::Character1;
use super::group::GaloisGroup;
use super::intermediate::fixed_field;
use super::ramification::{ramification_data, RamificationData};
use crate::error::{Error, Result};
use crate::local::OrderElement;

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub data: RamificationData,
    pub group: Option<GaloisGroup>,
    /// Image at this level of each element of the top group.
    pub projection: Vec<usize>,
    /// The level's generator as an element of the top order O_L.
    pub generator: Option<OrderElement>,
}

#[derive(Clone, Debug)]
pub struct Tower {
    levels: Vec<TowerLevel>,
    /// Why the tower stops before reaching a level with G_k = G_k^c.
    stopped: Option<Error>,
}

impl Tower {
    pub fn new(g: &GaloisGroup) -> Result<Self> {
        let data = ramification_data(g)?;
        let top = TowerLevel {
            data,
            group: Some(g.clone()),
            projection: (0..g.order()).collect(),
            generator: Some(OrderElement::gen(g.spec())),
        };
        let mut levels = vec![top];
        let mut stopped = None;
        loop {
            let last = levels.last().expect("nonempty");
            if last.data.gc().len() == last.data.degree() {
                break;
            }
            let group = last.group.as_ref().expect("computed levels carry their group");
            match fixed_field(group, last.data.gc()) {
                Ok(q) => {
                    let projection = last.projection.iter().map(|&i| q.projection[i]).collect();
                    let generator = last.generator.as_ref().map(|x| q.generator.evaluate_at(x));
                    levels.push(TowerLevel { data: q.data, group: Some(q.group), projection, generator });
                }
                Err(e @ (Error::IntermediateFieldUnavailable(_) | Error::Unsupported(_))) => {
                    stopped = Some(e);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(Tower { levels, stopped })
    }

    /// A single level from data without an underlying order.
    pub fn from_data(data: RamificationData) -> Self {
        let stopped = (data.gc().len() != data.degree())
            .then(|| Error::IntermediateFieldUnavailable("abstract data carries no quotient fields".into()));
        let projection = (0..data.degree()).collect();
        Tower { levels: vec![TowerLevel { data, group: None, projection, generator: None }], stopped }
    }

    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }
    pub fn top(&self) -> &RamificationData {
        &self.levels[0].data
    }
    pub fn level(&self, k: usize) -> &TowerLevel {
        &self.levels[k]
    }

    /// Why a level beyond the last one cannot be constructed.
    pub fn unavailable(&self) -> Error {
        self.stopped
            .clone()
            .unwrap_or_else(|| Error::IntermediateFieldUnavailable("tower exhausted".into()))
    }

    /// The level at which the one-dimensional character χ of G is wild,
    /// `None` if χ is trivial.
    pub fn wild_level(&self, chi: &Character1) -> Result<Option<usize>> {
        if chi.is_trivial() {
            return Ok(None);
        }
        let order = self.top().degree();
        if chi.subgroup().len() != order {
            return Err(Error::Precondition("wild_level expects a character of G".into()));
        }
        for (k, lvl) in self.levels.iter().enumerate() {
            let wild = (0..order).any(|s| lvl.data.in_gc(lvl.projection[s]) && chi.exponent(s) != Some(0));
            if wild {
                return Ok(Some(k));
            }
        }
        Err(self.unavailable())
    }

    /// χ pushed down to the group of level k (it must factor through it).
    pub fn level_character(&self, k: usize, chi: &Character1) -> Result<Character1> {
        let lvl = &self.levels[k];
        let m = lvl.data.degree();
        let mut values = vec![None; m];
        for s in 0..chi.subgroup().len() {
            let e = chi.exponent(s).expect("character of G");
            match values[lvl.projection[s]] {
                None => values[lvl.projection[s]] = Some(e),
                Some(v) if v != e => return Err(Error::Precondition("character does not factor through the level".into())),
                _ => {}
            }
        }
        let values = values.into_iter().map(|v| v.expect("projection is onto")).collect();
        Character1::new(lvl.data.group(), (0..m).collect(), values, chi.q())
    }

    /// Image of a subgroup of G at level k.
    pub fn level_subgroup(&self, k: usize, h: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = h.iter().map(|&s| self.levels[k].projection[s]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Conductor of the fixed field of ker χ from the top jump profile:
    /// quotient jumps are sums over cosets.
    pub fn kernel_conductor(&self, chi: &Character1) -> i64 {
        let d = self.top();
        let table = d.group();
        let kernel = chi.kernel();
        if kernel.len() == table.order() {
            return 0;
        }
        let jumps: Vec<i64> = table
            .left_cosets(&kernel)
            .iter()
            .filter(|c| c[0] != 0)
            .map(|c| c.iter().map(|&s| d.jump(s).expect("non-identity")).sum())
            .collect();
        jumps.iter().max().expect("nontrivial quotient") + jumps.iter().sum::<i64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus;
    use crate::galois::{characters, find_conjugates, verify_conjugates};

    #[test]
    fn square_tower_slopes() {
        for p in [2u32, 3] {
            let e = corpus().into_iter().find(|e| e.name == format!("sq-p{p}")).unwrap();
            let s = e.spec(None).unwrap();
            let roots = find_conjugates(&s).unwrap();
            let g = verify_conjugates(roots[0].spec(), &roots).unwrap();
            let t = Tower::new(&g).unwrap();
            assert_eq!(t.levels().len(), 2);
            let all: Vec<usize> = (0..g.order()).collect();
            for chi in characters(g.table(), &all, p) {
                let slope = match t.wild_level(&chi).unwrap() {
                    None => 0,
                    Some(k) => t.level(k).data.conductor(),
                };
                assert_eq!(slope, t.kernel_conductor(&chi));
            }
        }
    }
}
