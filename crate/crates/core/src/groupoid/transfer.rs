use std::sync::Arc;

use num_traits::Zero;

use super::fiber::{two_fiber_product, TwoFiberProduct};
use super::functor::same;
use super::{FiniteGroupoid, GroupoidFunctor};
use crate::error::{Error, Result};
use crate::exactmath::Rat;
use crate::par::prelude::*;

/// A function on the isomorphism classes of a finite groupoid, one value
/// per component (in component order).
#[derive(Clone, Debug, PartialEq)]
pub struct SpanFn {
    carrier: Arc<FiniteGroupoid>,
    values: Vec<Rat>,
}

impl SpanFn {
    pub fn new(carrier: Arc<FiniteGroupoid>, values: Vec<Rat>) -> Result<Self> {
        if values.len() != carrier.num_components() {
            return Err(Error::InvalidGroupoid(format!(
                "function has {} values but the groupoid has {} components",
                values.len(),
                carrier.num_components()
            )));
        }
        Ok(SpanFn { carrier, values })
    }

    pub fn zero(carrier: Arc<FiniteGroupoid>) -> Self {
        let n = carrier.num_components();
        SpanFn {
            carrier,
            values: vec![Rat::zero(); n],
        }
    }

    pub fn constant(carrier: Arc<FiniteGroupoid>, c: Rat) -> Self {
        let n = carrier.num_components();
        SpanFn {
            carrier,
            values: vec![c; n],
        }
    }

    /// Indicator function of component `c`.
    pub fn delta(carrier: Arc<FiniteGroupoid>, c: usize) -> Self {
        let mut f = SpanFn::zero(carrier);
        f.values[c] = Rat::from_integer(1.into());
        f
    }

    pub fn carrier(&self) -> &Arc<FiniteGroupoid> {
        &self.carrier
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, c: usize) -> &Rat {
        &self.values[c]
    }

    /// Value at the class of object `x`.
    pub fn at(&self, x: u32) -> &Rat {
        &self.values[self.carrier.component_of(x)]
    }

    /// Indices of components with non-zero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&c| !self.values[c].is_zero()).collect()
    }

    pub fn add(&self, other: &SpanFn) -> Result<SpanFn> {
        if !same(&self.carrier, &other.carrier) {
            return Err(Error::InvalidGroupoid("adding functions on different groupoids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(SpanFn {
            carrier: self.carrier.clone(),
            values,
        })
    }

    pub fn scale(&self, s: &Rat) -> SpanFn {
        SpanFn {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }
}

/// `(f ⊠ g)([p]) = f([proj_a p]) · g([proj_b p])` on a fiber product.
pub fn external_product(p: &TwoFiberProduct, f: &SpanFn, g: &SpanFn) -> Result<SpanFn> {
    if !same(p.proj_a().target(), &f.carrier) || !same(p.proj_b().target(), &g.carrier) {
        return Err(Error::InvalidFunctor("external product: functions on the wrong factors".into()));
    }
    let values = p
        .groupoid()
        .components()
        .iter()
        .map(|c| f.at(p.proj_a().map_obj(c.root())) * g.at(p.proj_b().map_obj(c.root())))
        .collect();
    SpanFn::new(p.groupoid().clone(), values)
}

/// `(f* φ)([a]) = φ([f(a)])`.
pub fn pullback_fn(f: &GroupoidFunctor, phi: &SpanFn) -> Result<SpanFn> {
    if !same(f.target(), &phi.carrier) {
        return Err(Error::InvalidFunctor("pullback: function lives on another groupoid".into()));
    }
    let values = f.pi0_map().into_iter().map(|c| phi.values[c].clone()).collect();
    SpanFn::new(f.source().clone(), values)
}

/// `(f_! ψ)(b) = Σ_{[x] ∈ π0(A ×_B {b})} ψ(x) / #Aut(x)`, computed from the
/// 2-fiber of `f` over a representative of each component of `B`.
pub fn pushforward_fn(f: &GroupoidFunctor, psi: &SpanFn, budget: usize) -> Result<SpanFn> {
    if !same(f.source(), &psi.carrier) {
        return Err(Error::InvalidFunctor("pushforward: function lives on another groupoid".into()));
    }
    let b = f.target().clone();
    let values = b
        .components()
        .par_iter()
        .map(|comp| {
            let pt = GroupoidFunctor::point_at(b.clone(), comp.root());
            let fiber = two_fiber_product(f, &pt, budget)?;
            let p = fiber.groupoid();
            let mut total = Rat::zero();
            for fc in p.components() {
                let a = fiber.proj_a().map_obj(fc.root());
                let v = psi.at(a);
                if !v.is_zero() {
                    total += v / Rat::from_integer(fc.group().order().into());
                }
            }
            Ok(total)
        })
        .collect::<Result<Vec<Rat>>>()?;
    SpanFn::new(b, values)
}

/// Pull along `c: S → P`, then push along `nu: S → Q`.
pub fn pull_push_span(c: &GroupoidFunctor, nu: &GroupoidFunctor, phi: &SpanFn, budget: usize) -> Result<SpanFn> {
    if !same(c.source(), nu.source()) {
        return Err(Error::InvalidFunctor("span legs have different apexes".into()));
    }
    pushforward_fn(nu, &pullback_fn(c, phi)?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::groupoid::Mor;
    use crate::wreath::FiniteGroup;
    use crate::DEFAULT_BUDGET;

    fn hom_functor(g: &FiniteGroup, h: &FiniteGroup, map: Vec<u32>) -> GroupoidFunctor {
        GroupoidFunctor::from_fn(
            Arc::new(FiniteGroupoid::classifying(g)),
            Arc::new(FiniteGroupoid::classifying(h)),
            |_| 0,
            move |m| Ok(Mor { src: 0, tgt: 0, g: map[m.g as usize] }),
        )
        .unwrap()
    }

    #[test]
    fn push_along_subgroup_inclusion_is_the_index() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.parse_subgroup("sym:2").unwrap();
        let f = hom_functor(&s3.subgroup_as_group(&h), &s3, h);
        let one = SpanFn::constant(f.source().clone(), rat(1, 1));
        let pushed = pushforward_fn(&f, &one, DEFAULT_BUDGET).unwrap();
        assert_eq!(pushed.values(), &[rat(3, 1)]);
        let pulled = pullback_fn(&f, &pushed).unwrap();
        assert_eq!(pulled.values(), &[rat(3, 1)]);
    }

    #[test]
    fn push_along_surjection() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let map = c4.hom_from_generators(&c2, &[(1, 1)]).unwrap();
        let f = hom_functor(&c4, &c2, map);
        let one = SpanFn::constant(f.source().clone(), rat(1, 1));
        let pushed = pushforward_fn(&f, &one, DEFAULT_BUDGET).unwrap();
        assert_eq!(pushed.values(), &[rat(1, 2)]);
    }

    #[test]
    fn identity_and_empty_span() {
        let g = Arc::new(FiniteGroupoid::discrete(3));
        let id = GroupoidFunctor::identity(g.clone());
        let phi = SpanFn::new(g.clone(), vec![rat(1, 2), rat(0, 1), rat(5, 1)]).unwrap();
        assert_eq!(pull_push_span(&id, &id, &phi, DEFAULT_BUDGET).unwrap(), phi);
        let empty = Arc::new(FiniteGroupoid::empty());
        let e2g = GroupoidFunctor::from_fn(empty, g.clone(), |x| x, Ok).unwrap();
        let zero = pull_push_span(&e2g, &e2g, &phi, DEFAULT_BUDGET).unwrap();
        assert!(zero.support().is_empty());
    }

    #[test]
    fn constant_pullback_to_point() {
        let g = Arc::new(FiniteGroupoid::classifying(&FiniteGroup::cyclic(3)));
        let f = GroupoidFunctor::to_point(g);
        let c = SpanFn::constant(f.target().clone(), rat(7, 3));
        assert_eq!(pullback_fn(&f, &c).unwrap().values(), &[rat(7, 3)]);
        let pushed = pushforward_fn(&f, &SpanFn::constant(f.source().clone(), rat(1, 1)), DEFAULT_BUDGET).unwrap();
        assert_eq!(pushed.values(), &[rat(1, 3)]);
    }
}
