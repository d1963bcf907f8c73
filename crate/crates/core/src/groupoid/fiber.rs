use std::collections::HashMap;
use std::sync::Arc;

use super::builder::{realize, Presentation, Realized};
use super::functor::same;
use super::{FiniteGroupoid, GroupoidFunctor, Mor};
use crate::error::{Error, Result};
use crate::par::prelude::*;

/// Presentation of the 2-fiber product of `f: A → D` and `g: B → D`:
/// objects `(a, b, φ: f(a) → g(b))`, morphisms `(α, β)` with
/// `g(β) ∘ φ = φ' ∘ f(α)`.
pub struct FiberPresentation {
    f: GroupoidFunctor,
    g: GroupoidFunctor,
}

impl Presentation for FiberPresentation {
    type Obj = (u32, u32, Mor);
    type Arrow = (Mor, Mor);

    fn objects(&self) -> Vec<Self::Obj> {
        let (a, b, d) = (self.f.source(), self.g.source(), self.f.target());
        let mut by_comp: HashMap<usize, Vec<u32>> = HashMap::new();
        for y in 0..b.num_objects() as u32 {
            by_comp.entry(d.component_of(self.g.map_obj(y))).or_default().push(y);
        }
        let chunks: Vec<Vec<Self::Obj>> = (0..a.num_objects() as u32)
            .into_par_iter()
            .map(|x| {
                let fx = self.f.map_obj(x);
                let mut out = Vec::new();
                if let Some(ys) = by_comp.get(&d.component_of(fx)) {
                    for &y in ys {
                        for phi in d.homs(fx, self.g.map_obj(y)) {
                            out.push((x, y, phi));
                        }
                    }
                }
                out
            })
            .collect();
        chunks.concat()
    }

    fn arrows_from(&self, x: &Self::Obj) -> Vec<(Self::Arrow, Self::Obj)> {
        let (a, b) = (self.f.source(), self.g.source());
        let alphas: Vec<Mor> = a.arrows_from(x.0).collect();
        let betas: Vec<Mor> = b.arrows_from(x.1).collect();
        let chunks: Vec<Vec<(Self::Arrow, Self::Obj)>> = alphas
            .par_iter()
            .map(|&alpha| {
                betas
                    .iter()
                    .map(|&beta| {
                        let y = self.act(&(alpha, beta), x).expect("arrow out of x");
                        ((alpha, beta), y)
                    })
                    .collect()
            })
            .collect();
        chunks.concat()
    }

    fn act(&self, arrow: &Self::Arrow, x: &Self::Obj) -> Option<Self::Obj> {
        let (alpha, beta) = *arrow;
        let (a, b, phi) = *x;
        if alpha.src != a || beta.src != b {
            return None;
        }
        let d = self.f.target();
        let fa = self.f.map_mor(alpha);
        let gb = self.g.map_mor(beta);
        Some((alpha.tgt, beta.tgt, d.compose(gb, d.compose(phi, d.inverse(fa)))))
    }

    fn compose(&self, h: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow {
        (
            self.f.source().compose(h.0, g.0),
            self.g.source().compose(h.1, g.1),
        )
    }

    fn inverse(&self, g: &Self::Arrow) -> Self::Arrow {
        (self.f.source().inverse(g.0), self.g.source().inverse(g.1))
    }
}

/// A materialized 2-fiber product with its projections.
pub struct TwoFiberProduct {
    realized: Realized<FiberPresentation>,
    proj_a: GroupoidFunctor,
    proj_b: GroupoidFunctor,
}

/// The 2-fiber product `A ×_D B` of `f: A → D` and `g: B → D`.
pub fn two_fiber_product(f: &GroupoidFunctor, g: &GroupoidFunctor, budget: usize) -> Result<TwoFiberProduct> {
    if !same(f.target(), g.target()) {
        return Err(Error::InvalidFunctor("fiber product of functors with different targets".into()));
    }
    let pres = FiberPresentation {
        f: f.clone(),
        g: g.clone(),
    };
    let realized = realize(pres, "2-fiber product", budget)?;
    let p = realized.groupoid().clone();
    let proj_a = GroupoidFunctor::from_fn(p.clone(), f.source().clone(), |x| realized.object(x).0, |m| {
        Ok(realized.decode(m).0)
    })?;
    let proj_b = GroupoidFunctor::from_fn(p, g.source().clone(), |x| realized.object(x).1, |m| {
        Ok(realized.decode(m).1)
    })?;
    Ok(TwoFiberProduct {
        realized,
        proj_a,
        proj_b,
    })
}

impl TwoFiberProduct {
    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        self.realized.groupoid()
    }

    pub fn proj_a(&self) -> &GroupoidFunctor {
        &self.proj_a
    }

    pub fn proj_b(&self) -> &GroupoidFunctor {
        &self.proj_b
    }

    pub fn left(&self) -> &GroupoidFunctor {
        &self.realized.presentation().f
    }

    pub fn right(&self) -> &GroupoidFunctor {
        &self.realized.presentation().g
    }

    /// The triple `(a, b, φ)` of object `x`.
    pub fn object(&self, x: u32) -> (u32, u32, Mor) {
        *self.realized.object(x)
    }

    pub fn index_of(&self, a: u32, b: u32, phi: Mor) -> Option<u32> {
        self.realized.index_of(&(a, b, phi))
    }

    /// The pair `(α, β)` of a morphism.
    pub fn decode(&self, m: Mor) -> (Mor, Mor) {
        self.realized.decode(m)
    }

    /// The morphism with components `(α, β)` between objects `src` and
    /// `tgt`, if the pair is one.
    pub fn encode(&self, alpha: Mor, beta: Mor, src: u32, tgt: u32) -> Option<Mor> {
        self.realized.encode(&(alpha, beta), src, tgt)
    }

    /// The functor `X → A ×_D B` induced by `p: X → A`, `q: X → B` and a
    /// natural isomorphism `η_x: f(p(x)) → g(q(x))`. Fails if `η` is not
    /// natural.
    pub fn lift(&self, p: &GroupoidFunctor, q: &GroupoidFunctor, eta: &[Mor]) -> Result<GroupoidFunctor> {
        if !same(p.source(), q.source()) || !same(p.target(), self.left().source()) || !same(q.target(), self.right().source()) {
            return Err(Error::InvalidFunctor("lift: functors do not form a cone".into()));
        }
        let x = p.source().clone();
        if eta.len() != x.num_objects() {
            return Err(Error::InvalidFunctor("lift: η has the wrong length".into()));
        }
        let obj: Vec<Option<u32>> = (0..x.num_objects() as u32)
            .into_par_iter()
            .map(|i| self.index_of(p.map_obj(i), q.map_obj(i), eta[i as usize]))
            .collect();
        let obj = obj
            .into_iter()
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::InvalidFunctor("lift: η has the wrong endpoints".into()))?;
        GroupoidFunctor::from_fn(x, self.groupoid().clone(), |i| obj[i as usize], |m| {
            self.encode(p.map_mor(m), q.map_mor(m), obj[m.src as usize], obj[m.tgt as usize])
                .ok_or_else(|| Error::InvalidFunctor("lift: η is not natural".into()))
        })
    }

    /// Lift along a strictly commuting square, with identity 2-cell.
    pub fn lift_strict(&self, p: &GroupoidFunctor, q: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        let fp = p.then(self.left())?;
        let gq = q.then(self.right())?;
        if fp != gq {
            return Err(Error::InvalidFunctor("lift: square does not commute".into()));
        }
        let d = self.left().target();
        let eta: Vec<Mor> = (0..p.source().num_objects() as u32).map(|x| d.id(fp.map_obj(x))).collect();
        self.lift(p, q, &eta)
    }
}
