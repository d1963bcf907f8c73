//! JSON exchange format: explicit object and morphism lists with a flat
//! composition table. Only practical for small groupoids; the size of the
//! table is checked against the budget.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builder::{realize, Presentation, Realized};
use super::{FiniteGroupoid, GroupoidFunctor, Mor};
use crate::error::{check_budget, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    /// Identity morphism id of each object.
    pub identities: Vec<usize>,
    pub inverse: Vec<usize>,
    /// `composition[h * M + g]` is the id of `h ∘ g`, or null when
    /// `g.tgt != h.src`.
    pub composition: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

fn enumerate(g: &FiniteGroupoid) -> (Vec<Mor>, HashMap<Mor, usize>) {
    let list: Vec<Mor> = (0..g.num_objects() as u32).flat_map(|x| g.arrows_from(x)).collect();
    let ids = list.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    (list, ids)
}

impl GroupoidJson {
    pub fn export(g: &FiniteGroupoid, budget: usize) -> Result<Self> {
        let m = g.morphism_count();
        check_budget("groupoid export", m.saturating_mul(m), budget)?;
        let (list, ids) = enumerate(g);
        let mut composition = vec![None; m * m];
        for (hi, &h) in list.iter().enumerate() {
            for (gi, &f) in list.iter().enumerate() {
                if f.tgt == h.src {
                    composition[hi * m + gi] = Some(ids[&g.compose(h, f)]);
                }
            }
        }
        Ok(GroupoidJson {
            objects: (0..g.num_objects()).map(|x| format!("x{x}")).collect(),
            morphisms: list
                .iter()
                .enumerate()
                .map(|(id, m)| MorphismJson {
                    id,
                    src: m.src as usize,
                    tgt: m.tgt as usize,
                })
                .collect(),
            identities: (0..g.num_objects() as u32).map(|x| ids[&g.id(x)]).collect(),
            inverse: list.iter().map(|&f| ids[&g.inverse(f)]).collect(),
            composition,
        })
    }

    /// Validates the groupoid axioms and converts to the compact form;
    /// also returns the compact morphism for each id.
    pub fn import(&self, budget: usize) -> Result<(Arc<FiniteGroupoid>, Vec<Mor>)> {
        let r = self.realize(budget)?;
        let ids = (0..self.morphisms.len())
            .map(|i| {
                r.encode(&i, self.morphisms[i].src as u32, self.morphisms[i].tgt as u32)
                    .ok_or_else(|| Error::InvalidGroupoid(format!("morphism {i} not representable")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((r.groupoid().clone(), ids))
    }

    fn realize(&self, budget: usize) -> Result<Realized<Explicit<'_>>> {
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        let n = self.objects.len();
        let m = self.morphisms.len();
        check_budget("groupoid import", m.saturating_mul(m), budget)?;
        if self.composition.len() != m * m || self.inverse.len() != m || self.identities.len() != n {
            return bad("table sizes do not match".into());
        }
        for (i, mj) in self.morphisms.iter().enumerate() {
            if mj.id != i || mj.src >= n || mj.tgt >= n {
                return bad(format!("morphism {i} malformed"));
            }
        }
        let comp = |h: usize, g: usize| self.composition[h * m + g];
        for h in 0..m {
            for g in 0..m {
                let composable = self.morphisms[g].tgt == self.morphisms[h].src;
                match (composable, comp(h, g)) {
                    (true, Some(k)) if k < m => {
                        if self.morphisms[k].src != self.morphisms[g].src
                            || self.morphisms[k].tgt != self.morphisms[h].tgt
                        {
                            return bad(format!("{h}∘{g} has wrong endpoints"));
                        }
                    }
                    (false, None) => {}
                    _ => return bad(format!("composition entry ({h},{g}) inconsistent")),
                }
            }
        }
        for (x, &e) in self.identities.iter().enumerate() {
            if e >= m || self.morphisms[e].src != x || self.morphisms[e].tgt != x {
                return bad(format!("identity of {x} malformed"));
            }
            for g in 0..m {
                if self.morphisms[g].src == x && comp(g, e) != Some(g) {
                    return bad(format!("identity of {x} is not a right unit"));
                }
                if self.morphisms[g].tgt == x && comp(e, g) != Some(g) {
                    return bad(format!("identity of {x} is not a left unit"));
                }
            }
        }
        for (g, &gi) in self.inverse.iter().enumerate() {
            let (s, t) = (self.morphisms[g].src, self.morphisms[g].tgt);
            if gi >= m || comp(gi, g) != Some(self.identities[s]) || comp(g, gi) != Some(self.identities[t]) {
                return bad(format!("inverse of {g} malformed"));
            }
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = comp(h, g) else { continue };
                for f in 0..m {
                    let Some(gf) = comp(g, f) else { continue };
                    if comp(hg, f) != comp(h, gf) {
                        return bad(format!("composition not associative at ({h},{g},{f})"));
                    }
                }
            }
        }
        realize(Explicit(self), "groupoid import", budget)
    }
}

impl FunctorJson {
    pub fn export(f: &GroupoidFunctor) -> Self {
        let (src_list, _) = enumerate(f.source());
        let (_, tgt_ids) = enumerate(f.target());
        FunctorJson {
            object_map: f.object_map().iter().map(|&y| y as usize).collect(),
            morphism_map: src_list.iter().map(|&m| tgt_ids[&f.map_mor(m)]).collect(),
        }
    }

    /// Validates functoriality against explicit source and target and
    /// converts to the compact form.
    pub fn import(&self, source: &GroupoidJson, target: &GroupoidJson, budget: usize) -> Result<GroupoidFunctor> {
        let bad = |msg: String| Err(Error::InvalidFunctor(msg));
        let (sg, sids) = source.import(budget)?;
        let (tg, tids) = target.import(budget)?;
        let (ms, mt) = (source.morphisms.len(), target.morphisms.len());
        if self.object_map.len() != source.objects.len() || self.morphism_map.len() != ms {
            return bad("functor tables have the wrong size".into());
        }
        if self.object_map.iter().any(|&y| y >= target.objects.len()) || self.morphism_map.iter().any(|&k| k >= mt) {
            return bad("functor image out of range".into());
        }
        for (i, mj) in source.morphisms.iter().enumerate() {
            let fm = &target.morphisms[self.morphism_map[i]];
            if fm.src != self.object_map[mj.src] || fm.tgt != self.object_map[mj.tgt] {
                return bad(format!("morphism {i} sent between the wrong objects"));
            }
        }
        for h in 0..ms {
            for g in 0..ms {
                if let Some(hg) = source.composition[h * ms + g] {
                    let lhs = self.morphism_map[hg];
                    let rhs = target.composition[self.morphism_map[h] * mt + self.morphism_map[g]];
                    if rhs != Some(lhs) {
                        return bad(format!("composition of {h},{g} not preserved"));
                    }
                }
            }
        }
        let by_compact: HashMap<Mor, usize> = sids.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        GroupoidFunctor::from_fn(sg, tg, |x| self.object_map[x as usize] as u32, |m| {
            Ok(tids[self.morphism_map[by_compact[&m]]])
        })
    }
}

struct Explicit<'a>(&'a GroupoidJson);

impl Presentation for Explicit<'_> {
    type Obj = usize;
    type Arrow = usize;

    fn objects(&self) -> Vec<usize> {
        (0..self.0.objects.len()).collect()
    }

    fn arrows_from(&self, x: &usize) -> Vec<(usize, usize)> {
        self.0
            .morphisms
            .iter()
            .filter(|m| m.src == *x)
            .map(|m| (m.id, m.tgt))
            .collect()
    }

    fn act(&self, a: &usize, x: &usize) -> Option<usize> {
        let m = &self.0.morphisms[*a];
        (m.src == *x).then_some(m.tgt)
    }

    fn compose(&self, h: &usize, g: &usize) -> usize {
        self.0.composition[h * self.0.morphisms.len() + g].expect("composable")
    }

    fn inverse(&self, g: &usize) -> usize {
        self.0.inverse[*g]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::VertexGroup;
    use crate::wreath::FiniteGroup;

    #[test]
    fn round_trip() {
        let z2 = VertexGroup::of_group(&FiniteGroup::cyclic(2));
        let g = FiniteGroupoid::from_components(3, vec![(vec![0, 2], z2), (vec![1], VertexGroup::trivial())]).unwrap();
        let j = GroupoidJson::export(&g, 10_000).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: GroupoidJson = serde_json::from_str(&text).unwrap();
        let (h, _) = back.import(10_000).unwrap();
        assert_eq!(*h, g);
        let g = Arc::new(g);
        let id = GroupoidFunctor::identity(g.clone());
        let fj = FunctorJson::export(&id);
        let f = fj.import(&j, &j, 10_000).unwrap();
        assert_eq!(f, id);
    }

    #[test]
    fn rejects_broken_tables() {
        let g = FiniteGroupoid::classifying(&FiniteGroup::cyclic(3));
        let mut j = GroupoidJson::export(&g, 10_000).unwrap();
        j.composition.swap(4, 5);
        assert!(j.import(10_000).is_err());
        let big = FiniteGroupoid::classifying(&FiniteGroup::symmetric(4));
        assert!(GroupoidJson::export(&big, 100).is_err());
    }
}
