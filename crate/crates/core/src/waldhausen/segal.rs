use serde::Serialize;

use super::TruncatedSimplicialGroupoid;
use crate::error::{Error, Result};
use crate::groupoid::{is_equivalence, two_fiber_product, EquivalenceWitness, GroupoidFunctor};

/// A failed square: which comparison, and why it failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalWitness {
    pub square: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalVerdict {
    pub pass: bool,
    pub squares_checked: usize,
    pub witnesses: Vec<SegalWitness>,
}

/// Decides whether the comparison from `source` into the 2-fiber product of
/// `f` and `g`, induced by `p` and `q`, is an equivalence.
fn check_square(
    name: &str,
    f: &GroupoidFunctor,
    g: &GroupoidFunctor,
    p: &GroupoidFunctor,
    q: &GroupoidFunctor,
    budget: usize,
) -> Result<Option<SegalWitness>> {
    let fiber = two_fiber_product(f, g, budget)?;
    let comparison = match fiber.lift_strict(p, q) {
        Ok(c) => c,
        Err(Error::InvalidFunctor(reason)) => {
            return Ok(Some(SegalWitness {
                square: name.to_string(),
                equivalence: None,
                reason: Some(reason),
            }))
        }
        Err(e) => return Err(e),
    };
    let verdict = is_equivalence(&comparison);
    Ok((!verdict.equivalent).then(|| SegalWitness {
        square: name.to_string(),
        equivalence: verdict.witness,
        reason: None,
    }))
}

fn collect(results: Vec<Option<SegalWitness>>) -> SegalVerdict {
    let squares_checked = results.len();
    let witnesses: Vec<SegalWitness> = results.into_iter().flatten().collect();
    SegalVerdict {
        pass: witnesses.is_empty(),
        squares_checked,
        witnesses,
    }
}

/// The two degree-3 2-Segal conditions: the comparisons
/// `X_3 → X_{012} ×_{X_{02}} X_{023}` (via `d_3`, `d_1`) and
/// `X_3 → X_{013} ×_{X_{13}} X_{123}` (via `d_2`, `d_0`) are equivalences.
pub fn check_2segal_degree3(x: &TruncatedSimplicialGroupoid, budget: usize) -> Result<SegalVerdict> {
    if x.top() < 3 {
        return Err(Error::Unsupported("2-Segal check needs levels up to 3".into()));
    }
    let d = |n, i| x.face(n, i);
    let first = check_square("X_3 -> X_{012} x_{X_{02}} X_{023}", d(2, 1), d(2, 2), d(3, 3), d(3, 1), budget)?;
    let second = check_square("X_3 -> X_{013} x_{X_{13}} X_{123}", d(2, 0), d(2, 1), d(3, 2), d(3, 0), budget)?;
    Ok(collect(vec![first, second]))
}

/// Unitality squares at the lowest degree: the comparisons
/// `X_1 → X_0 ×_{X_1} X_2` induced by `(d_1, s_0)` against `(s_0, d_2)` and
/// by `(d_0, s_1)` against `(s_0, d_0)` are equivalences.
pub fn check_pointed(x: &TruncatedSimplicialGroupoid, budget: usize) -> Result<SegalVerdict> {
    if x.top() < 2 {
        return Err(Error::Unsupported("unitality check needs levels up to 2".into()));
    }
    let s0 = x.degeneracy(0, 0);
    let first = check_square("X_1 -> X_0 x_{X_1} X_2 (s_0, d_2)", s0, x.face(2, 2), x.face(1, 1), x.degeneracy(1, 0), budget)?;
    let second = check_square("X_1 -> X_0 x_{X_1} X_2 (s_1, d_0)", s0, x.face(2, 0), x.face(1, 0), x.degeneracy(1, 1), budget)?;
    Ok(collect(vec![first, second]))
}
