//! Finite groupoids, functors, 2-fiber products, equivalence testing and the
//! pull-push calculus on functions over isomorphism classes.
//!
//! A groupoid is stored skeletally: each connected component keeps its
//! smallest object as root, the automorphism group of the root as a
//! multiplication table, and an implicit choice of transport `t_x: root → x`
//! for every object. The morphism `Mor { src: x, tgt: y, g }` stands for
//! `t_y ∘ g ∘ t_x⁻¹`, so every hom-set `Hom(x, y)` is indexed by the vertex
//! group and composition is a single table lookup.

mod builder;
mod equivalence;
mod exchange;
mod fiber;
mod functor;
mod transfer;

use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Rat;
use crate::wreath::FiniteGroup;

pub use builder::{realize, Presentation, Realized};
pub use equivalence::{is_equivalence, EquivalenceVerdict, EquivalenceWitness};
pub use exchange::{GroupoidJson, FunctorJson, MorphismJson};
pub use fiber::{two_fiber_product, FiberPresentation, TwoFiberProduct};
pub use functor::GroupoidFunctor;
pub use transfer::{external_product, pull_push_span, pullback_fn, pushforward_fn, SpanFn};

/// A morphism `t_tgt ∘ g ∘ t_src⁻¹`, where `g` indexes the vertex group of
/// the common component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mor {
    pub src: u32,
    pub tgt: u32,
    pub g: u32,
}

/// Automorphism group of a component root; element 0 is the identity and
/// `mul(a, b)` is the composite `a ∘ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl VertexGroup {
    pub fn trivial() -> Self {
        VertexGroup {
            order: 1,
            table: vec![0],
            inverse: vec![0],
        }
    }

    pub fn of_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in g.elements() {
            for b in g.elements() {
                table.push(g.mul(a, b));
            }
        }
        VertexGroup {
            order: n,
            table,
            inverse: g.elements().map(|a| g.inv(a)).collect(),
        }
    }

    /// Validates identity at 0, inverses and (for orders up to 256)
    /// associativity.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroupoid("malformed vertex group table".into()));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::InvalidGroupoid("vertex group identity is not element 0".into()));
            }
        }
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| table[a * order + b] == 0 && table[b * order + a] == 0)
                .ok_or_else(|| Error::InvalidGroupoid(format!("vertex element {a} not invertible")))?;
            inverse[a] = b as u32;
        }
        if order <= 256 {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b] as usize;
                    for c in 0..order {
                        let bc = table[b * order + c] as usize;
                        if table[ab * order + c] != table[a * order + bc] {
                            return Err(Error::InvalidGroupoid("composition not associative".into()));
                        }
                    }
                }
            }
        }
        Ok(VertexGroup { order, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    root: u32,
    objects: Vec<u32>,
    group: VertexGroup,
}

impl Component {
    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn objects(&self) -> &[u32] {
        &self.objects
    }

    pub fn group(&self) -> &VertexGroup {
        &self.group
    }
}

/// Summary of one connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub representative: u32,
    pub size: usize,
    pub aut_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    comp_of: Vec<u32>,
    components: Vec<Component>,
}

impl FiniteGroupoid {
    /// Assembles a groupoid from its components (object lists and vertex
    /// groups). Components are re-ordered by smallest object.
    pub fn from_components(num_objects: usize, parts: Vec<(Vec<u32>, VertexGroup)>) -> Result<Self> {
        let mut comp_of = vec![u32::MAX; num_objects];
        let mut components: Vec<Component> = Vec::with_capacity(parts.len());
        for (mut objects, group) in parts {
            objects.sort_unstable();
            let root = *objects
                .first()
                .ok_or_else(|| Error::InvalidGroupoid("empty component".into()))?;
            components.push(Component { root, objects, group });
        }
        components.sort_by_key(|c| c.root);
        for (ci, c) in components.iter().enumerate() {
            for &x in &c.objects {
                let slot = comp_of
                    .get_mut(x as usize)
                    .ok_or_else(|| Error::InvalidGroupoid(format!("object {x} out of range")))?;
                if *slot != u32::MAX {
                    return Err(Error::InvalidGroupoid(format!("object {x} in two components")));
                }
                *slot = ci as u32;
            }
        }
        if comp_of.contains(&u32::MAX) {
            return Err(Error::InvalidGroupoid("object in no component".into()));
        }
        Ok(FiniteGroupoid { comp_of, components })
    }

    pub fn empty() -> Self {
        FiniteGroupoid {
            comp_of: Vec::new(),
            components: Vec::new(),
        }
    }

    pub fn point() -> Self {
        FiniteGroupoid::discrete(1)
    }

    pub fn discrete(k: usize) -> Self {
        FiniteGroupoid {
            comp_of: (0..k as u32).collect(),
            components: (0..k as u32)
                .map(|x| Component {
                    root: x,
                    objects: vec![x],
                    group: VertexGroup::trivial(),
                })
                .collect(),
        }
    }

    /// The one-object groupoid BG; morphism `g` is the group element with
    /// the same index.
    pub fn classifying(g: &FiniteGroup) -> Self {
        FiniteGroupoid::one_object(VertexGroup::of_group(g))
    }

    pub fn one_object(group: VertexGroup) -> Self {
        FiniteGroupoid {
            comp_of: vec![0],
            components: vec![Component {
                root: 0,
                objects: vec![0],
                group,
            }],
        }
    }

    /// Disjoint union, objects of later summands shifted past earlier ones;
    /// also returns the summand inclusions.
    pub fn disjoint_union(parts: &[Arc<FiniteGroupoid>]) -> (Arc<FiniteGroupoid>, Vec<GroupoidFunctor>) {
        let mut offset = 0u32;
        let mut comps = Vec::new();
        let mut offsets = Vec::new();
        for p in parts {
            offsets.push(offset);
            for c in &p.components {
                comps.push((c.objects.iter().map(|&x| x + offset).collect(), c.group.clone()));
            }
            offset += p.num_objects() as u32;
        }
        let union = Arc::new(
            FiniteGroupoid::from_components(offset as usize, comps).expect("disjoint union is valid"),
        );
        let incl = parts
            .iter()
            .zip(offsets)
            .map(|(p, off)| {
                GroupoidFunctor::from_fn(p.clone(), union.clone(), |x| x + off, |m| {
                    Ok(Mor {
                        src: m.src + off,
                        tgt: m.tgt + off,
                        g: m.g,
                    })
                })
                .expect("inclusion is a functor")
            })
            .collect();
        (union, incl)
    }

    /// The full subgroupoid on the given components (by index), with its
    /// inclusion functor. Objects keep their relative order.
    pub fn restrict_components(self: &Arc<Self>, keep: &[usize]) -> (Arc<FiniteGroupoid>, GroupoidFunctor) {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut old: Vec<u32> = keep
            .iter()
            .flat_map(|&c| self.components[c].objects.iter().copied())
            .collect();
        old.sort_unstable();
        let new_of = |x: u32| old.binary_search(&x).expect("kept object") as u32;
        let parts = keep
            .iter()
            .map(|&c| {
                let comp = &self.components[c];
                (comp.objects.iter().map(|&x| new_of(x)).collect(), comp.group.clone())
            })
            .collect();
        let sub = Arc::new(FiniteGroupoid::from_components(old.len(), parts).expect("subgroupoid"));
        let incl = GroupoidFunctor::from_fn(sub.clone(), self.clone(), |x| old[x as usize], |m| {
            Ok(Mor {
                src: old[m.src as usize],
                tgt: old[m.tgt as usize],
                g: m.g,
            })
        })
        .expect("inclusion of full subgroupoid");
        (sub, incl)
    }

    pub fn num_objects(&self) -> usize {
        self.comp_of.len()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    #[inline]
    pub fn component_of(&self, x: u32) -> usize {
        self.comp_of[x as usize] as usize
    }

    #[inline]
    pub fn root(&self, x: u32) -> u32 {
        self.components[self.component_of(x)].root
    }

    #[inline]
    pub fn group_at(&self, x: u32) -> &VertexGroup {
        &self.components[self.component_of(x)].group
    }

    pub fn aut_order(&self, x: u32) -> usize {
        self.group_at(x).order
    }

    #[inline]
    pub fn id(&self, x: u32) -> Mor {
        Mor { src: x, tgt: x, g: 0 }
    }

    /// `h ∘ g`; requires `g.tgt == h.src`.
    #[inline]
    pub fn compose(&self, h: Mor, g: Mor) -> Mor {
        debug_assert_eq!(g.tgt, h.src, "composing non-composable morphisms");
        Mor {
            src: g.src,
            tgt: h.tgt,
            g: self.group_at(g.src).mul(h.g, g.g),
        }
    }

    #[inline]
    pub fn inverse(&self, m: Mor) -> Mor {
        Mor {
            src: m.tgt,
            tgt: m.src,
            g: self.group_at(m.src).inv(m.g),
        }
    }

    pub fn is_morphism(&self, m: Mor) -> bool {
        (m.src as usize) < self.num_objects()
            && (m.tgt as usize) < self.num_objects()
            && self.component_of(m.src) == self.component_of(m.tgt)
            && (m.g as usize) < self.aut_order(m.src)
    }

    /// All morphisms `x → y` (empty if they lie in different components).
    pub fn homs(&self, x: u32, y: u32) -> impl Iterator<Item = Mor> {
        let n = if self.component_of(x) == self.component_of(y) {
            self.aut_order(x) as u32
        } else {
            0
        };
        (0..n).map(move |g| Mor { src: x, tgt: y, g })
    }

    /// All morphisms with source `x`.
    pub fn arrows_from(&self, x: u32) -> impl Iterator<Item = Mor> + '_ {
        let c = &self.components[self.component_of(x)];
        let n = c.group.order as u32;
        c.objects
            .iter()
            .flat_map(move |&y| (0..n).map(move |g| Mor { src: x, tgt: y, g }))
    }

    /// Total number of morphisms.
    pub fn morphism_count(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.objects.len() * c.objects.len() * c.group.order)
            .sum()
    }

    /// Number of records held in memory (objects plus vertex group elements).
    pub fn record_count(&self) -> usize {
        self.num_objects() + self.components.iter().map(|c| c.group.order).sum::<usize>()
    }

    pub fn pi0(&self) -> Vec<ComponentInfo> {
        self.components
            .iter()
            .map(|c| ComponentInfo {
                representative: c.root,
                size: c.objects.len(),
                aut_order: c.group.order,
            })
            .collect()
    }

    /// Σ over components of 1/#Aut.
    pub fn cardinality(&self) -> Rat {
        self.components
            .iter()
            .map(|c| Rat::one() / Rat::from_integer(c.group.order.into()))
            .fold(Rat::from_integer(0.into()), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn basic_invariants() {
        let bz2 = FiniteGroupoid::classifying(&FiniteGroup::cyclic(2));
        assert_eq!(bz2.cardinality(), rat(1, 2));
        assert_eq!(FiniteGroupoid::discrete(3).cardinality(), rat(3, 1));
        let p = FiniteGroupoid::point();
        assert_eq!(p.pi0(), vec![ComponentInfo { representative: 0, size: 1, aut_order: 1 }]);
        let (u, incl) = FiniteGroupoid::disjoint_union(&[Arc::new(bz2), Arc::new(p)]);
        let info = u.pi0();
        assert_eq!(info.len(), 2);
        assert_eq!((info[0].aut_order, info[1].aut_order), (2, 1));
        assert_eq!(incl[1].map_obj(0), 1);
        assert_eq!(u.cardinality(), rat(3, 2));
    }

    #[test]
    fn composition_in_component() {
        let table = vec![0, 1, 1, 0];
        let parts = vec![(vec![0, 2], VertexGroup::from_table(2, table).unwrap()), (vec![1], VertexGroup::trivial())];
        let g = FiniteGroupoid::from_components(3, parts).unwrap();
        assert_eq!(g.num_components(), 2);
        assert_eq!(g.component_of(2), 0);
        let a = Mor { src: 0, tgt: 2, g: 1 };
        let b = g.inverse(a);
        assert_eq!(g.compose(b, a), g.id(0));
        assert_eq!(g.homs(0, 1).count(), 0);
        assert_eq!(g.morphism_count(), 2 * 2 * 2 + 1);
        assert_eq!(g.arrows_from(0).count(), 4);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(VertexGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroupoid::from_components(2, vec![(vec![0], VertexGroup::trivial())]).is_err());
    }
}
