//! Truncated simplicial groupoids (levels `0..=N`, `N ≤ 3`): the
//! S-construction of a proto-abelian instance, the Hecke-Waldhausen
//! construction of a group with a subgroup, strict simplicial identity
//! checks, and decision procedures for the lowest 2-Segal and unitality
//! conditions.

mod hecke;
pub mod mutations;
mod sconstruction;
mod segal;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{
    external_product, pull_push_span, two_fiber_product, FiniteGroupoid, GroupoidFunctor, SpanFn,
};

pub use hecke::{
    double_cosets, hecke_algebra, hecke_module, hecke_waldhausen, DoubleCoset, HeckeModuleTable, HeckeTable, HeckeWaldhausen,
    IteratedFiber,
};
pub use sconstruction::{core_groupoid, s_construction, Diagram, SConstruction};
pub use segal::{check_2segal_degree3, check_pointed, SegalVerdict, SegalWitness};

/// Levels `X_0..X_N` with faces `d_i: X_n → X_{n-1}` and degeneracies
/// `s_i: X_n → X_{n+1}`.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialGroupoid {
    levels: Vec<Arc<FiniteGroupoid>>,
    /// `faces[n][i] = d_i: X_n → X_{n-1}`; `faces[0]` is empty.
    faces: Vec<Vec<GroupoidFunctor>>,
    /// `degeneracies[n][i] = s_i: X_n → X_{n+1}`; empty at the top level.
    degeneracies: Vec<Vec<GroupoidFunctor>>,
}

/// Outcome of the simplicial identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialVerdict {
    pub pass: bool,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl TruncatedSimplicialGroupoid {
    /// Assembles the structure, checking shapes and every simplicial
    /// identity that makes sense within the truncation.
    pub fn new(
        levels: Vec<Arc<FiniteGroupoid>>,
        faces: Vec<Vec<GroupoidFunctor>>,
        degeneracies: Vec<Vec<GroupoidFunctor>>,
    ) -> Result<Self> {
        let x = TruncatedSimplicialGroupoid::assemble(levels, faces, degeneracies)?;
        let verdict = check_simplicial_identities(&x);
        if !verdict.pass {
            return Err(Error::InvalidFunctor(format!(
                "simplicial identities fail: {}",
                verdict.violations.join("; ")
            )));
        }
        Ok(x)
    }

    /// Shape checks only.
    pub(crate) fn assemble(
        levels: Vec<Arc<FiniteGroupoid>>,
        faces: Vec<Vec<GroupoidFunctor>>,
        degeneracies: Vec<Vec<GroupoidFunctor>>,
    ) -> Result<Self> {
        let top = levels.len().checked_sub(1).ok_or_else(|| Error::InvalidFunctor("no levels".into()))?;
        if faces.len() != top + 1 || degeneracies.len() != top + 1 {
            return Err(Error::InvalidFunctor("face/degeneracy tables have the wrong length".into()));
        }
        for n in 0..=top {
            let expect_faces = if n == 0 { 0 } else { n + 1 };
            let expect_degs = if n == top { 0 } else { n + 1 };
            if faces[n].len() != expect_faces || degeneracies[n].len() != expect_degs {
                return Err(Error::InvalidFunctor(format!("wrong number of maps at level {n}")));
            }
            for d in &faces[n] {
                if d.source() != &levels[n] || d.target() != &levels[n - 1] {
                    return Err(Error::InvalidFunctor(format!("face at level {n} has wrong ends")));
                }
            }
            for s in &degeneracies[n] {
                if s.source() != &levels[n] || s.target() != &levels[n + 1] {
                    return Err(Error::InvalidFunctor(format!("degeneracy at level {n} has wrong ends")));
                }
            }
        }
        Ok(TruncatedSimplicialGroupoid {
            levels,
            faces,
            degeneracies,
        })
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Arc<FiniteGroupoid> {
        &self.levels[n]
    }

    /// `d_i: X_n → X_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &GroupoidFunctor {
        &self.faces[n][i]
    }

    /// `s_i: X_n → X_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &GroupoidFunctor {
        &self.degeneracies[n][i]
    }
}

/// Checks, as strict equalities of functors, `d_i d_j = d_{j-1} d_i`
/// (`i < j`), `d_i s_j = s_{j-1} d_i` (`i < j`), `d_j s_j = d_{j+1} s_j = id`,
/// `d_i s_j = s_j d_{i-1}` (`i > j+1`) and `s_i s_j = s_{j+1} s_i` (`i ≤ j`).
pub fn check_simplicial_identities(x: &TruncatedSimplicialGroupoid) -> SimplicialVerdict {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut expect = |lhs: Result<GroupoidFunctor>, rhs: Result<GroupoidFunctor>, what: String| {
        checked += 1;
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => violations.push(what),
        }
    };
    let top = x.top();
    let missing = || Error::InvalidFunctor("map missing".into());
    let d = |n: usize, i: usize| x.faces[n].get(i).ok_or_else(missing);
    let s = |n: usize, i: usize| x.degeneracies[n].get(i).ok_or_else(missing);
    for n in 2..=top {
        for j in 0..=n {
            for i in 0..j {
                // d_i ∘ d_j on X_n versus d_{j-1} ∘ d_i
                expect(
                    d(n, j).and_then(|a| a.then(d(n - 1, i)?)),
                    d(n, i).and_then(|a| a.then(d(n - 1, j - 1)?)),
                    format!("d_{i} d_{j} = d_{} d_{i} on X_{n}", j - 1),
                );
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = s(n, j).and_then(|a| a.then(d(n + 1, i)?));
                let (rhs, what) = if i < j {
                    (d(n, i).and_then(|a| a.then(s(n - 1, j - 1)?)), format!("d_{i} s_{j} = s_{} d_{i} on X_{n}", j - 1))
                } else if i == j || i == j + 1 {
                    (Ok(GroupoidFunctor::identity(x.level(n).clone())), format!("d_{i} s_{j} = id on X_{n}"))
                } else {
                    (d(n, i - 1).and_then(|a| a.then(s(n - 1, j)?)), format!("d_{i} s_{j} = s_{j} d_{} on X_{n}", i - 1))
                };
                expect(lhs, rhs, what);
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                expect(
                    s(n, j).and_then(|a| a.then(s(n + 1, i)?)),
                    s(n, i).and_then(|a| a.then(s(n + 1, j + 1)?)),
                    format!("s_{i} s_{j} = s_{} s_{i} on X_{n}", j + 1),
                );
            }
        }
    }
    SimplicialVerdict {
        pass: violations.is_empty(),
        checked,
        violations,
    }
}

/// The product of two functions on `X_1` defined by the span
/// `X_1 × X_1 ← X_2 → X_1`, with chopping map `(d_0, d_2)` and extremal
/// map `d_1`: `f` sits on the edge `{1,2}` and `g` on the edge `{0,1}`.
pub fn span_product(x: &TruncatedSimplicialGroupoid, f: &SpanFn, g: &SpanFn, budget: usize) -> Result<SpanFn> {
    let x1 = x.level(1);
    let pt_a = GroupoidFunctor::to_point(x1.clone());
    let pt_b = GroupoidFunctor::to_point(x1.clone());
    let square = two_fiber_product(&pt_a, &pt_b, budget)?;
    let chop = square.lift_strict(x.face(2, 0), x.face(2, 2))?;
    let fg = external_product(&square, f, g)?;
    pull_push_span(&chop, x.face(2, 1), &fg, budget)
}

/// Rebuilds the same structure over a new `X_n` through `replace`, a map
/// from the new level into the old one; faces out of the new level are
/// precomposed, degeneracies into it are dropped. Used for mutations.
pub(crate) fn pull_back_level(
    x: &TruncatedSimplicialGroupoid,
    n: usize,
    replace: &GroupoidFunctor,
) -> Result<TruncatedSimplicialGroupoid> {
    if n != x.top() || n == 0 {
        return Err(Error::Unsupported("only a positive top level can be replaced".into()));
    }
    let mut levels = x.levels.clone();
    let mut faces = x.faces.clone();
    let mut degeneracies = x.degeneracies.clone();
    levels[n] = replace.source().clone();
    faces[n] = x.faces[n].iter().map(|d| replace.then(d)).collect::<Result<_>>()?;
    degeneracies[n - 1].clear();
    Ok(TruncatedSimplicialGroupoid {
        levels,
        faces,
        degeneracies,
    })
}
