use std::sync::Arc;

use super::{FiniteGroupoid, Mor};
use crate::error::{Error, Result};
use crate::par::prelude::*;

/// A functor between compact groupoids, stored by its values on objects,
/// on the transports `t_x` and on the vertex groups of source roots.
#[derive(Clone, Debug)]
pub struct GroupoidFunctor {
    source: Arc<FiniteGroupoid>,
    target: Arc<FiniteGroupoid>,
    obj: Vec<u32>,
    transport: Vec<Mor>,
    vertex: Vec<Vec<u32>>,
}

impl PartialEq for GroupoidFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj == other.obj
            && self.transport == other.transport
            && self.vertex == other.vertex
            && same(&self.source, &other.source)
            && same(&self.target, &other.target)
    }
}

pub(crate) fn same(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GroupoidFunctor {
    /// Builds and validates a functor from its defining data: object images,
    /// images `F(t_x): F(root) → F(x)`, and for each source component the
    /// images of root automorphisms as elements of the vertex group at
    /// `F(root)` (which must itself be a root in the target).
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        obj: Vec<u32>,
        transport: Vec<Mor>,
        vertex: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFunctor(msg));
        if obj.len() != source.num_objects() || transport.len() != source.num_objects() {
            return bad("object data has the wrong length".into());
        }
        if vertex.len() != source.num_components() {
            return bad("vertex data has the wrong length".into());
        }
        if obj.iter().any(|&y| y as usize >= target.num_objects()) {
            return bad("object image out of range".into());
        }
        for x in 0..source.num_objects() as u32 {
            let r = source.root(x);
            let t = transport[x as usize];
            if !target.is_morphism(t) || t.src != obj[r as usize] || t.tgt != obj[x as usize] {
                return bad(format!("image of transport to {x} has wrong endpoints"));
            }
            if x == r && t != target.id(obj[x as usize]) {
                return bad(format!("transport at root {x} is not sent to an identity"));
            }
        }
        for (c, comp) in source.components().iter().enumerate() {
            let fr = obj[comp.root() as usize];
            let tg = target.group_at(fr);
            let sg = comp.group();
            let v = &vertex[c];
            if v.len() != sg.order() || v.iter().any(|&k| k as usize >= tg.order()) {
                return bad(format!("vertex images of component {c} malformed"));
            }
            for a in 0..sg.order() as u32 {
                for b in 0..sg.order() as u32 {
                    if v[sg.mul(a, b) as usize] != tg.mul(v[a as usize], v[b as usize]) {
                        return bad(format!("does not preserve composition in component {c}"));
                    }
                }
            }
        }
        Ok(GroupoidFunctor {
            source,
            target,
            obj,
            transport,
            vertex,
        })
    }

    /// Builds a functor from an object map and a morphism map. The morphism
    /// map is only evaluated on transports and root automorphisms; it must
    /// agree with a functor for the result to mean anything, and the data
    /// extracted from it are validated.
    pub fn from_fn(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        obj_fn: impl Fn(u32) -> u32 + Sync,
        mor_fn: impl Fn(Mor) -> Result<Mor> + Sync,
    ) -> Result<Self> {
        let n = source.num_objects() as u32;
        let obj: Vec<u32> = (0..n).into_par_iter().map(&obj_fn).collect();
        let transport = (0..n)
            .into_par_iter()
            .map(|x| {
                let r = source.root(x);
                mor_fn(Mor { src: r, tgt: x, g: 0 })
            })
            .collect::<Result<Vec<Mor>>>()?;
        let vertex = source
            .components()
            .par_iter()
            .map(|c| {
                let r = c.root();
                (0..c.group().order() as u32)
                    .map(|g| {
                        let m = mor_fn(Mor { src: r, tgt: r, g })?;
                        if m.src != obj[r as usize] || m.tgt != obj[r as usize] {
                            return Err(Error::InvalidFunctor(
                                "automorphism sent to a non-endomorphism".into(),
                            ));
                        }
                        Ok(m.g)
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        GroupoidFunctor::new(source, target, obj, transport, vertex)
    }

    pub fn identity(a: Arc<FiniteGroupoid>) -> Self {
        GroupoidFunctor::from_fn(a.clone(), a, |x| x, Ok).expect("identity functor")
    }

    /// The unique functor to the point.
    pub fn to_point(a: Arc<FiniteGroupoid>) -> Self {
        GroupoidFunctor::from_fn(a, Arc::new(FiniteGroupoid::point()), |_| 0, |_| {
            Ok(Mor { src: 0, tgt: 0, g: 0 })
        })
        .expect("functor to the point")
    }

    /// The functor from the point picking out object `x`.
    pub fn point_at(b: Arc<FiniteGroupoid>, x: u32) -> Self {
        GroupoidFunctor::from_fn(Arc::new(FiniteGroupoid::point()), b, |_| x, |_| {
            Ok(Mor { src: x, tgt: x, g: 0 })
        })
        .expect("point inclusion")
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        &self.target
    }

    #[inline]
    pub fn map_obj(&self, x: u32) -> u32 {
        self.obj[x as usize]
    }

    pub fn object_map(&self) -> &[u32] {
        &self.obj
    }

    /// The root-automorphism images of source component `c`.
    pub fn vertex_map(&self, c: usize) -> &[u32] {
        &self.vertex[c]
    }

    pub fn map_mor(&self, m: Mor) -> Mor {
        let s = &self.source;
        let t = &self.target;
        let c = s.component_of(m.src);
        let fr = self.obj[s.components()[c].root() as usize];
        let core = Mor {
            src: fr,
            tgt: fr,
            g: self.vertex[c][m.g as usize],
        };
        let tx = self.transport[m.src as usize];
        let ty = self.transport[m.tgt as usize];
        t.compose(ty, t.compose(core, t.inverse(tx)))
    }

    /// Component of the target hit by each source component.
    pub fn pi0_map(&self) -> Vec<usize> {
        self.source
            .components()
            .iter()
            .map(|c| self.target.component_of(self.obj[c.root() as usize]))
            .collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if !same(&self.target, &next.source) {
            return Err(Error::InvalidFunctor("functors are not composable".into()));
        }
        let obj = self.obj.iter().map(|&y| next.map_obj(y)).collect();
        let transport = self.transport.iter().map(|&t| next.map_mor(t)).collect();
        let vertex = self
            .source
            .components()
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let fr = self.obj[comp.root() as usize];
                self.vertex[c]
                    .iter()
                    .map(|&k| next.map_mor(Mor { src: fr, tgt: fr, g: k }).g)
                    .collect()
            })
            .collect();
        GroupoidFunctor::new(self.source.clone(), next.target.clone(), obj, transport, vertex)
    }

    /// The functor `F'` with `F'(x) = η_x.tgt` and `F'(m) = η_y ∘ F(m) ∘ η_x⁻¹`,
    /// naturally isomorphic to `self` via `η`.
    pub fn conjugate(&self, eta: &[Mor]) -> Result<GroupoidFunctor> {
        let t = &self.target;
        if eta.len() != self.source.num_objects() {
            return Err(Error::InvalidFunctor("natural isomorphism has the wrong length".into()));
        }
        for (x, e) in eta.iter().enumerate() {
            if !t.is_morphism(*e) || e.src != self.obj[x] {
                return Err(Error::InvalidFunctor(format!("component {x} of η has the wrong source")));
            }
        }
        GroupoidFunctor::from_fn(self.source.clone(), t.clone(), |x| eta[x as usize].tgt, |m| {
            let fm = self.map_mor(m);
            Ok(t.compose(eta[m.tgt as usize], t.compose(fm, t.inverse(eta[m.src as usize]))))
        })
    }

    /// Redirects object `x` to `y` through the transport image `t`; used to
    /// build deliberately altered functors.
    #[doc(hidden)]
    pub fn with_object_image(&self, x: u32, y: u32, t: Mor) -> Result<GroupoidFunctor> {
        let mut obj = self.obj.clone();
        let mut transport = self.transport.clone();
        obj[x as usize] = y;
        transport[x as usize] = t;
        GroupoidFunctor::new(self.source.clone(), self.target.clone(), obj, transport, self.vertex.clone())
    }
}
