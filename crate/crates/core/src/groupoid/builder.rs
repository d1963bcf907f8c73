//! Materializing groupoids from presentations.
//!
//! A presentation lists objects, enumerates the arrows out of an object and
//! composes and inverts arrows in some raw form. Realizing it finds the
//! components by exploring from each not-yet-seen object (in listing order),
//! records the first arrow reaching each object as its transport, and turns
//! the raw automorphisms of the root into a vertex group table.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::{FiniteGroupoid, Mor, VertexGroup};
use crate::error::{check_budget, Error, Result};
use crate::par::prelude::*;

pub trait Presentation: Sync + Send {
    type Obj: Clone + Eq + Hash + Send + Sync;
    type Arrow: Clone + Eq + Hash + Send + Sync;

    /// Every object exactly once; the order fixes object indices.
    fn objects(&self) -> Vec<Self::Obj>;
    /// Every arrow with source `x`, each with its target.
    fn arrows_from(&self, x: &Self::Obj) -> Vec<(Self::Arrow, Self::Obj)>;
    /// The target of `a` when `a` is an arrow out of `x`.
    fn act(&self, a: &Self::Arrow, x: &Self::Obj) -> Option<Self::Obj>;
    /// `h ∘ g`.
    fn compose(&self, h: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow;
    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow;
}

/// A realized presentation: the compact groupoid plus the dictionary
/// between raw and compact objects and morphisms.
pub struct Realized<P: Presentation> {
    pres: P,
    groupoid: Arc<FiniteGroupoid>,
    objects: Vec<P::Obj>,
    index: HashMap<P::Obj, u32>,
    transports: Vec<P::Arrow>,
    vertex: Vec<Vec<P::Arrow>>,
    vertex_index: Vec<HashMap<P::Arrow, u32>>,
}

/// Realizes `pres`, failing if more than `budget` records would be stored.
pub fn realize<P: Presentation>(pres: P, what: &str, budget: usize) -> Result<Realized<P>> {
    let objects = pres.objects();
    let n = objects.len();
    check_budget(what, n, budget)?;
    let mut index = HashMap::with_capacity(n);
    for (i, x) in objects.iter().enumerate() {
        if index.insert(x.clone(), i as u32).is_some() {
            return Err(Error::InvalidGroupoid(format!("{what}: duplicate object")));
        }
    }
    let mut comp_of = vec![u32::MAX; n];
    let mut transports: Vec<Option<P::Arrow>> = vec![None; n];
    let mut parts = Vec::new();
    let mut vertex = Vec::new();
    let mut vertex_index = Vec::new();
    let mut records = n;
    for root in 0..n {
        if comp_of[root] != u32::MAX {
            continue;
        }
        let ci = parts.len() as u32;
        let arrows = pres.arrows_from(&objects[root]);
        let mut members = Vec::new();
        let mut autos: Vec<P::Arrow> = Vec::new();
        let mut hits: HashMap<u32, usize> = HashMap::new();
        for (a, y) in arrows {
            let yi = *index
                .get(&y)
                .ok_or_else(|| Error::InvalidGroupoid(format!("{what}: arrow leaves the object set")))?;
            *hits.entry(yi).or_insert(0) += 1;
            if yi as usize == root {
                autos.push(a.clone());
            }
            match comp_of[yi as usize] {
                u32::MAX => {
                    comp_of[yi as usize] = ci;
                    members.push(yi);
                    transports[yi as usize] = Some(a);
                }
                c if c != ci => {
                    return Err(Error::InvalidGroupoid(format!(
                        "{what}: arrow into an earlier component"
                    )))
                }
                _ => {}
            }
        }
        let order = autos.len();
        if order == 0 || hits.values().any(|&h| h != order) {
            return Err(Error::InvalidGroupoid(format!(
                "{what}: hom-sets in one component have different sizes"
            )));
        }
        // the vertex group is stored as a dense order × order table
        records = records.saturating_add(order.saturating_mul(order));
        check_budget(what, records, budget)?;
        let id_pos = autos
            .iter()
            .position(|a| &pres.compose(a, a) == a)
            .ok_or_else(|| Error::InvalidGroupoid(format!("{what}: no identity arrow")))?;
        autos.swap(0, id_pos);
        let lookup: HashMap<P::Arrow, u32> =
            autos.iter().enumerate().map(|(i, a)| (a.clone(), i as u32)).collect();
        if lookup.len() != order {
            return Err(Error::InvalidGroupoid(format!("{what}: repeated arrow")));
        }
        let rows: Vec<Option<Vec<u32>>> = (0..order)
            .into_par_iter()
            .map(|i| {
                (0..order)
                    .map(|j| lookup.get(&pres.compose(&autos[i], &autos[j])).copied())
                    .collect::<Option<Vec<u32>>>()
            })
            .collect();
        let table = rows
            .into_iter()
            .collect::<Option<Vec<Vec<u32>>>>()
            .ok_or_else(|| Error::InvalidGroupoid(format!("{what}: automorphisms not closed")))?
            .concat();
        let group = VertexGroup::from_table(order, table)?;
        transports[root] = Some(autos[0].clone());
        parts.push((members, group));
        vertex.push(autos);
        vertex_index.push(lookup);
    }
    let groupoid = FiniteGroupoid::from_components(n, parts)?;
    // from_components orders components by root, which is already the case
    // because roots are discovered in increasing order.
    let transports = transports
        .into_iter()
        .map(|t| t.expect("every object is reached"))
        .collect();
    Ok(Realized {
        pres,
        groupoid: Arc::new(groupoid),
        objects,
        index,
        transports,
        vertex,
        vertex_index,
    })
}

impl<P: Presentation> Realized<P> {
    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn presentation(&self) -> &P {
        &self.pres
    }

    pub fn object(&self, x: u32) -> &P::Obj {
        &self.objects[x as usize]
    }

    pub fn objects(&self) -> &[P::Obj] {
        &self.objects
    }

    pub fn index_of(&self, x: &P::Obj) -> Option<u32> {
        self.index.get(x).copied()
    }

    /// The raw arrow denoted by a compact morphism.
    pub fn decode(&self, m: Mor) -> P::Arrow {
        let c = self.groupoid.component_of(m.src);
        let p = &self.pres;
        p.compose(
            &self.transports[m.tgt as usize],
            &p.compose(&self.vertex[c][m.g as usize], &p.inverse(&self.transports[m.src as usize])),
        )
    }

    /// The compact morphism for a raw arrow `src → tgt`, or `None` if the
    /// arrow does not go from `src` to `tgt`.
    pub fn encode(&self, a: &P::Arrow, src: u32, tgt: u32) -> Option<Mor> {
        let p = &self.pres;
        if p.act(a, self.object(src)).as_ref() != Some(self.object(tgt)) {
            return None;
        }
        let c = self.groupoid.component_of(src);
        if self.groupoid.component_of(tgt) != c {
            return None;
        }
        let raw = p.compose(
            &p.inverse(&self.transports[tgt as usize]),
            &p.compose(a, &self.transports[src as usize]),
        );
        self.vertex_index[c].get(&raw).map(|&g| Mor { src, tgt, g })
    }

    /// Encodes a raw arrow out of `src`, locating its target.
    pub fn encode_from(&self, a: &P::Arrow, src: u32) -> Option<Mor> {
        let y = self.pres.act(a, self.object(src))?;
        let tgt = self.index_of(&y)?;
        self.encode(a, src, tgt)
    }
}
