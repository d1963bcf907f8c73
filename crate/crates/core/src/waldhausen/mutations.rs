//! Deliberately broken simplicial groupoids on which the 2-Segal and
//! unitality checks must fail.

use std::sync::Arc;

use super::{hecke_waldhausen, pull_back_level, s_construction, TruncatedSimplicialGroupoid};
use crate::error::{Error, Result};
use crate::groupoid::{two_fiber_product, FiniteGroupoid, GroupoidFunctor, Mor};
use crate::protoab::ProtoAbelianInstance;
use crate::wreath::FiniteGroup;

/// A named mutated structure and which check it is meant to break.
pub struct Mutation {
    pub name: String,
    pub target: MutationTarget,
    pub structure: TruncatedSimplicialGroupoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationTarget {
    Segal,
    Pointed,
}

/// Components of `X_n` not hit by any degeneracy.
pub fn non_degenerate_components(x: &TruncatedSimplicialGroupoid, n: usize) -> Vec<usize> {
    let mut hit = vec![false; x.level(n).num_components()];
    if n > 0 {
        for s in &x.degeneracies[n - 1] {
            for c in s.pi0_map() {
                hit[c] = true;
            }
        }
    }
    (0..hit.len()).filter(|&c| !hit[c]).collect()
}

/// Replaces the top level by the full subgroupoid missing component `c`.
pub fn drop_component(x: &TruncatedSimplicialGroupoid, c: usize) -> Result<TruncatedSimplicialGroupoid> {
    let top = x.top();
    let keep: Vec<usize> = (0..x.level(top).num_components()).filter(|&k| k != c).collect();
    let (_, incl) = x.level(top).restrict_components(&keep);
    pull_back_level(x, top, &incl)
}

/// Replaces the top level `X` by `X ⊔ C` for a copy `C` of component `c`;
/// degeneracies land in the first summand.
pub fn duplicate_component(x: &TruncatedSimplicialGroupoid, c: usize) -> Result<TruncatedSimplicialGroupoid> {
    let top = x.top();
    let level = x.level(top).clone();
    let (copy, copy_incl) = level.restrict_components(&[c]);
    let (union, incl) = FiniteGroupoid::disjoint_union(&[level.clone(), copy]);
    let n = level.num_objects() as u32;
    let fold = GroupoidFunctor::from_fn(
        union,
        level.clone(),
        |y| if y < n { y } else { copy_incl.map_obj(y - n) },
        |m| {
            Ok(if m.src < n {
                m
            } else {
                copy_incl.map_mor(Mor {
                    src: m.src - n,
                    tgt: m.tgt - n,
                    g: m.g,
                })
            })
        },
    )?;
    let mut out = x.clone();
    out.levels[top] = fold.source().clone();
    out.faces[top] = x.faces[top].iter().map(|d| fold.then(d)).collect::<Result<_>>()?;
    out.degeneracies[top - 1] = x.degeneracies[top - 1]
        .iter()
        .map(|s| s.then(&incl[0]))
        .collect::<Result<_>>()?;
    Ok(out)
}

/// Replaces the top level `X` by `X × BK`.
pub fn times_classifying(x: &TruncatedSimplicialGroupoid, k: &FiniteGroup, budget: usize) -> Result<TruncatedSimplicialGroupoid> {
    let top = x.top();
    let bk = Arc::new(FiniteGroupoid::classifying(k));
    let product = two_fiber_product(
        &GroupoidFunctor::to_point(x.level(top).clone()),
        &GroupoidFunctor::to_point(bk),
        budget,
    )?;
    pull_back_level(x, top, product.proj_a())
}

/// Replaces the top level by its discrete groupoid of objects.
pub fn discrete_truncation(x: &TruncatedSimplicialGroupoid) -> Result<TruncatedSimplicialGroupoid> {
    let top = x.top();
    let level = x.level(top).clone();
    let discrete = Arc::new(FiniteGroupoid::discrete(level.num_objects()));
    let incl = GroupoidFunctor::from_fn(discrete, level.clone(), |y| y, |m| Ok(level.id(m.src)))?;
    pull_back_level(x, top, &incl)
}

/// Sets `d_i := d_j` on `X_n`, without checking simplicial identities.
pub fn swap_face(x: &TruncatedSimplicialGroupoid, n: usize, i: usize, j: usize) -> Result<TruncatedSimplicialGroupoid> {
    if n == 0 || n > x.top() || i > n || j > n {
        return Err(Error::Unsupported(format!("no faces d_{i}, d_{j} on X_{n}")));
    }
    let mut out = x.clone();
    out.faces[n][i] = x.faces[n][j].clone();
    Ok(out)
}

/// Five mutations that must fail the degree-3 2-Segal check.
pub fn segal_corpus(budget: usize) -> Result<Vec<Mutation>> {
    let s3 = FiniteGroup::symmetric(3);
    let h = s3.parse_subgroup("sym:2")?;
    let hecke = hecke_waldhausen(&s3, &h, 3, budget)?.into_simplicial();
    let vect = s_construction(&ProtoAbelianInstance::vect(2, 2)?, 2, 3, budget)?.simplicial().clone();
    let f1 = ProtoAbelianInstance::f1_free(FiniteGroup::trivial(), 2);
    let f1 = s_construction(&f1, 2, 3, budget)?.simplicial().clone();
    let nd = *non_degenerate_components(&hecke, 3)
        .last()
        .ok_or_else(|| Error::Unsupported("no non-degenerate component".into()))?;
    let last = vect.level(3).num_components() - 1;
    let segal = |name: &str, structure| Mutation {
        name: name.to_string(),
        target: MutationTarget::Segal,
        structure,
    };
    Ok(vec![
        segal("hecke S3/S2: X_3 missing a non-degenerate component", drop_component(&hecke, nd)?),
        segal("vect F2: X_3 with a duplicated component", duplicate_component(&vect, last)?),
        segal("f1 trivial: X_3 times B(Z/2)", times_classifying(&f1, &FiniteGroup::cyclic(2), budget)?),
        segal("hecke S3/S2: X_3 replaced by its discrete groupoid", discrete_truncation(&hecke)?),
        segal("vect F2: d_1 replaced by d_2 on X_3", swap_face(&vect, 3, 1, 2)?),
    ])
}

/// Mutations that must fail the unitality check.
pub fn pointed_corpus(budget: usize) -> Result<Vec<Mutation>> {
    let f1 = ProtoAbelianInstance::f1_free(FiniteGroup::trivial(), 2);
    let f1 = s_construction(&f1, 2, 2, budget)?.simplicial().clone();
    let s3 = FiniteGroup::symmetric(3);
    let hecke = hecke_waldhausen(&s3, &s3.parse_subgroup("sym:2")?, 2, budget)?.into_simplicial();
    let degenerate = |x: &TruncatedSimplicialGroupoid| -> Result<usize> {
        let s0 = x.degeneracy(1, 0);
        Ok(s0.pi0_map()[x.level(1).num_components() - 1])
    };
    Ok(vec![
        Mutation {
            name: "f1 trivial: X_2 with a duplicated degenerate component".into(),
            target: MutationTarget::Pointed,
            structure: duplicate_component(&f1, degenerate(&f1)?)?,
        },
        Mutation {
            name: "hecke S3/S2: X_2 with a duplicated degenerate component".into(),
            target: MutationTarget::Pointed,
            structure: duplicate_component(&hecke, degenerate(&hecke)?)?,
        },
    ])
}
