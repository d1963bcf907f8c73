use serde::Serialize;

use super::GroupoidFunctor;

/// Why a functor fails to be an equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivalenceWitness {
    /// No source object maps into the component of this target object.
    MissedComponent { target_object: u32 },
    /// Two non-isomorphic source objects become isomorphic.
    Collapsed { first: u32, second: u32 },
    /// The map `Aut(x) → Aut(F x)` is not injective.
    NotFaithful { object: u32, hom_source: usize, hom_target: usize },
    /// The map `Aut(x) → Aut(F x)` is injective but not onto.
    NotFull { object: u32, hom_source: usize, hom_target: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub witness: Option<EquivalenceWitness>,
}

/// Decides whether `f` is an equivalence: bijective on components and
/// bijective on automorphism groups of every component root (which, for
/// groupoids, is the same as being bijective on every hom-set).
pub fn is_equivalence(f: &GroupoidFunctor) -> EquivalenceVerdict {
    let fail = |w| EquivalenceVerdict {
        equivalent: false,
        witness: Some(w),
    };
    let s = f.source();
    let t = f.target();
    let mut hit: Vec<Option<u32>> = vec![None; t.num_components()];
    for (c, tc) in f.pi0_map().into_iter().enumerate() {
        let r = s.components()[c].root();
        if let Some(prev) = hit[tc] {
            return fail(EquivalenceWitness::Collapsed { first: prev, second: r });
        }
        hit[tc] = Some(r);
    }
    if let Some(missed) = hit.iter().position(|h| h.is_none()) {
        return fail(EquivalenceWitness::MissedComponent {
            target_object: t.components()[missed].root(),
        });
    }
    for (c, comp) in s.components().iter().enumerate() {
        let r = comp.root();
        let hom_source = comp.group().order();
        let hom_target = t.aut_order(f.map_obj(r));
        let mut image: Vec<u32> = f.vertex_map(c).to_vec();
        image.sort_unstable();
        image.dedup();
        if image.len() != hom_source {
            return fail(EquivalenceWitness::NotFaithful {
                object: r,
                hom_source,
                hom_target,
            });
        }
        if hom_source != hom_target {
            return fail(EquivalenceWitness::NotFull {
                object: r,
                hom_source,
                hom_target,
            });
        }
    }
    EquivalenceVerdict {
        equivalent: true,
        witness: None,
    }
}
