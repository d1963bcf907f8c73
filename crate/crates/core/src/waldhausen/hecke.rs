//! The Hecke-Waldhausen construction `BH ×_BG ⋯ ×_BG BH`, built by iterated
//! 2-fiber products, and the convolution algebras and modules read off it.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{span_product, TruncatedSimplicialGroupoid};
use crate::error::{Error, Result};
use crate::exactmath::Rat;
use crate::groupoid::{
    external_product, is_equivalence, pull_push_span, realize, two_fiber_product, FiniteGroupoid, GroupoidFunctor,
    Mor, Presentation, SpanFn, TwoFiberProduct,
};
use crate::par::prelude::*;
use crate::wreath::FiniteGroup;

/// `L_0 = BK_0` and `L_i = L_{i-1} ×_BG BK_i`. Objects of `L_n` are tuples
/// `(g_1, …, g_n) ∈ G^n`; a morphism `(k_0, …, k_n) ∈ ∏ K_i` sends `g_i` to
/// `k_i g_i k_{i-1}⁻¹`.
pub struct IteratedFiber {
    group: FiniteGroup,
    subgroups: Vec<Vec<u32>>,
    positions: Vec<HashMap<u32, u32>>,
    levels: Vec<Arc<FiniteGroupoid>>,
    fibers: Vec<Option<TwoFiberProduct>>,
    tuples: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

fn inclusion(bg: &Arc<FiniteGroupoid>, g: &FiniteGroup, k: &[u32]) -> Result<GroupoidFunctor> {
    let sub = g.subgroup_as_group(k);
    let k = k.to_vec();
    GroupoidFunctor::from_fn(Arc::new(FiniteGroupoid::classifying(&sub)), bg.clone(), |_| 0, |m| {
        Ok(Mor {
            src: 0,
            tgt: 0,
            g: k[m.g as usize],
        })
    })
}

impl IteratedFiber {
    /// Builds `L_0, …, L_n` for the subgroups `K_0, …, K_n` of `group`.
    pub fn new(group: &FiniteGroup, subgroups: &[Vec<u32>], budget: usize) -> Result<Self> {
        if subgroups.is_empty() {
            return Err(Error::InvalidGroupoid("empty chain".into()));
        }
        let mut subs = Vec::new();
        for k in subgroups {
            let mut k = k.clone();
            k.sort_unstable();
            k.dedup();
            if !group.is_subgroup(&k) {
                return Err(Error::NotSubgroup(format!("{k:?} in {}", group.name())));
            }
            subs.push(k);
        }
        let bg = Arc::new(FiniteGroupoid::classifying(group));
        let incl = subs.iter().map(|k| inclusion(&bg, group, k)).collect::<Result<Vec<_>>>()?;
        let mut levels = vec![incl[0].source().clone()];
        let mut fibers = vec![None];
        let mut tuples = vec![vec![Vec::new()]];
        let mut last = incl[0].clone();
        for (i, inc) in incl.iter().enumerate().skip(1) {
            let fib = two_fiber_product(&last, inc, budget)?;
            last = fib.proj_b().then(inc)?;
            levels.push(fib.groupoid().clone());
            let prev = &tuples[i - 1];
            let t: Vec<Vec<u32>> = (0..fib.groupoid().num_objects() as u32)
                .map(|x| {
                    let (a, _, phi) = fib.object(x);
                    let mut t: Vec<u32> = prev[a as usize].clone();
                    t.push(phi.g);
                    t
                })
                .collect();
            tuples.push(t);
            fibers.push(Some(fib));
        }
        let index = tuples
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect())
            .collect();
        let positions = subs
            .iter()
            .map(|k| k.iter().enumerate().map(|(j, &x)| (x, j as u32)).collect())
            .collect();
        Ok(IteratedFiber {
            group: group.clone(),
            subgroups: subs,
            positions,
            levels,
            fibers,
            tuples,
            index,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn levels(&self) -> &[Arc<FiniteGroupoid>] {
        &self.levels
    }

    pub fn obj_tuple(&self, n: usize, x: u32) -> &[u32] {
        &self.tuples[n][x as usize]
    }

    pub fn obj_index(&self, n: usize, t: &[u32]) -> Option<u32> {
        self.index[n].get(t).copied()
    }

    /// The group elements `(k_0, …, k_n)` of a morphism of `L_n`.
    pub fn mor_tuple(&self, n: usize, m: Mor) -> Vec<u32> {
        match &self.fibers[n] {
            None => vec![self.subgroups[0][m.g as usize]],
            Some(fib) => {
                let (alpha, beta) = fib.decode(m);
                let mut t = self.mor_tuple(n - 1, alpha);
                t.push(self.subgroups[n][beta.g as usize]);
                t
            }
        }
    }

    /// The morphism of `L_n` with components `ks` between `src` and `tgt`.
    pub fn encode_mor(&self, n: usize, ks: &[u32], src: u32, tgt: u32) -> Option<Mor> {
        let pos = |i: usize| self.positions[i].get(&ks[i]).copied();
        match &self.fibers[n] {
            None => Some(Mor { src, tgt, g: pos(0)? }),
            Some(fib) => {
                let (a_src, _, _) = fib.object(src);
                let (a_tgt, _, _) = fib.object(tgt);
                let alpha = self.encode_mor(n - 1, &ks[..n], a_src, a_tgt)?;
                let beta = Mor { src: 0, tgt: 0, g: pos(n)? };
                fib.encode(alpha, beta, src, tgt)
            }
        }
    }

    /// The functor `L_n → other.L_m` given on object and morphism tuples.
    pub fn tuple_functor(
        &self,
        n: usize,
        other: &IteratedFiber,
        m: usize,
        obj: impl Fn(&[u32]) -> Vec<u32> + Sync,
        mor: impl Fn(&[u32]) -> Vec<u32> + Sync,
    ) -> Result<GroupoidFunctor> {
        let images: Vec<Option<u32>> = self.tuples[n].par_iter().map(|t| other.obj_index(m, &obj(t))).collect();
        let images = images
            .into_iter()
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::InvalidFunctor("tuple map leaves the target".into()))?;
        GroupoidFunctor::from_fn(self.levels[n].clone(), other.levels[m].clone(), |x| images[x as usize], |f| {
            let ks = mor(&self.mor_tuple(n, f));
            other
                .encode_mor(m, &ks, images[f.src as usize], images[f.tgt as usize])
                .ok_or_else(|| Error::InvalidFunctor("tuple map is not functorial".into()))
        })
    }
}

fn face_obj(g: &FiniteGroup, t: &[u32], i: usize) -> Vec<u32> {
    let n = t.len();
    if i == 0 {
        t[1..].to_vec()
    } else if i == n {
        t[..n - 1].to_vec()
    } else {
        let mut out = t[..i - 1].to_vec();
        out.push(g.mul(t[i], t[i - 1]));
        out.extend_from_slice(&t[i + 1..]);
        out
    }
}

fn drop_at(t: &[u32], i: usize) -> Vec<u32> {
    let mut out = t.to_vec();
    out.remove(i);
    out
}

fn insert_at(t: &[u32], i: usize, x: u32) -> Vec<u32> {
    let mut out = t.to_vec();
    out.insert(i, x);
    out
}

/// The action groupoid of `∏ K_i` on `G^n`, for the equivalence postcondition.
struct ActionPresentation<'a> {
    group: &'a FiniteGroup,
    subgroups: &'a [Vec<u32>],
    n: usize,
}

impl ActionPresentation<'_> {
    fn act_raw(&self, ks: &[u32], t: &[u32]) -> Vec<u32> {
        let g = self.group;
        (0..t.len()).map(|i| g.mul(g.mul(ks[i + 1], t[i]), g.inv(ks[i]))).collect()
    }
}

impl Presentation for ActionPresentation<'_> {
    type Obj = Vec<u32>;
    type Arrow = Vec<u32>;

    fn objects(&self) -> Vec<Vec<u32>> {
        let order = self.group.order() as u32;
        let mut out = vec![Vec::new()];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..order).map(move |x| {
                        let mut t2 = t.clone();
                        t2.push(x);
                        t2
                    })
                })
                .collect();
        }
        out
    }

    fn arrows_from(&self, x: &Vec<u32>) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut ks = vec![Vec::new()];
        for k in &self.subgroups[..=self.n] {
            ks = ks
                .into_iter()
                .flat_map(|t| {
                    k.iter().map(move |&e| {
                        let mut t2 = t.clone();
                        t2.push(e);
                        t2
                    })
                })
                .collect();
        }
        ks.into_iter()
            .map(|k| {
                let y = self.act_raw(&k, x);
                (k, y)
            })
            .collect()
    }

    fn act(&self, a: &Vec<u32>, x: &Vec<u32>) -> Option<Vec<u32>> {
        (a.len() == self.n + 1 && x.len() == self.n).then(|| self.act_raw(a, x))
    }

    fn compose(&self, h: &Vec<u32>, g: &Vec<u32>) -> Vec<u32> {
        h.iter().zip(g).map(|(&a, &b)| self.group.mul(a, b)).collect()
    }

    fn inverse(&self, g: &Vec<u32>) -> Vec<u32> {
        g.iter().map(|&a| self.group.inv(a)).collect()
    }
}

/// Checks that `L_n` is equivalent to the action groupoid on `G^n`.
fn check_action_model(chain: &IteratedFiber, n: usize, budget: usize) -> Result<()> {
    let pres = ActionPresentation {
        group: &chain.group,
        subgroups: &chain.subgroups,
        n,
    };
    let action = realize(pres, "action groupoid", budget)?;
    let f = GroupoidFunctor::from_fn(
        chain.levels[n].clone(),
        action.groupoid().clone(),
        |x| action.index_of(&chain.tuples[n][x as usize].clone()).expect("same object set"),
        |m| {
            let (s, t) = (
                action.index_of(&chain.tuples[n][m.src as usize].clone()).expect("object"),
                action.index_of(&chain.tuples[n][m.tgt as usize].clone()).expect("object"),
            );
            action
                .encode(&chain.mor_tuple(n, m), s, t)
                .ok_or_else(|| Error::InvalidFunctor("fiber morphism is not an action morphism".into()))
        },
    )?;
    let verdict = is_equivalence(&f);
    if !verdict.equivalent {
        return Err(Error::InvalidGroupoid(format!(
            "level {n} is not equivalent to the action groupoid: {:?}",
            verdict.witness
        )));
    }
    Ok(())
}

/// The Hecke-Waldhausen construction truncated at level `N`.
pub struct HeckeWaldhausen {
    chain: IteratedFiber,
    simplicial: TruncatedSimplicialGroupoid,
}

impl HeckeWaldhausen {
    pub fn chain(&self) -> &IteratedFiber {
        &self.chain
    }

    pub fn simplicial(&self) -> &TruncatedSimplicialGroupoid {
        &self.simplicial
    }

    pub fn into_simplicial(self) -> TruncatedSimplicialGroupoid {
        self.simplicial
    }
}

/// Builds levels `0..=top` of `BH ×_BG ⋯ ×_BG BH` for `H ≤ G`.
pub fn hecke_waldhausen(g: &FiniteGroup, h: &[u32], top: usize, budget: usize) -> Result<HeckeWaldhausen> {
    if top > 3 {
        return Err(Error::Unsupported("levels above 3 are not built".into()));
    }
    let chain = IteratedFiber::new(g, &vec![h.to_vec(); top + 1], budget)?;
    for n in 0..=top {
        check_action_model(&chain, n, budget)?;
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        faces.push(
            (0..=n)
                .map(|i| chain.tuple_functor(n, &chain, n - 1, |t| face_obj(g, t, i), |ks| drop_at(ks, i)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut degeneracies = Vec::new();
    for n in 0..=top {
        degeneracies.push(if n == top {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| chain.tuple_functor(n, &chain, n + 1, |t| insert_at(t, i, 0), |ks| insert_at(ks, i, ks[i])))
                .collect::<Result<Vec<_>>>()?
        });
    }
    let simplicial = TruncatedSimplicialGroupoid::new(chain.levels.clone(), faces, degeneracies)?;
    Ok(HeckeWaldhausen { chain, simplicial })
}

/// A double coset `K x L`, labelled by its least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: u32,
    pub elements: Vec<u32>,
}

impl DoubleCoset {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// The double cosets `K\G/L`, sorted by least element.
pub fn double_cosets(g: &FiniteGroup, k: &[u32], l: &[u32]) -> Vec<DoubleCoset> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        let mut elements: Vec<u32> = k
            .iter()
            .flat_map(|&a| l.iter().map(move |&b| g.mul(g.mul(a, x), b)))
            .collect();
        elements.sort_unstable();
        elements.dedup();
        for &y in &elements {
            seen[y as usize] = true;
        }
        out.push(DoubleCoset {
            representative: x,
            elements,
        });
    }
    out
}

fn coset_of(cosets: &[DoubleCoset]) -> HashMap<u32, usize> {
    cosets
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.elements.iter().map(move |&x| (x, i)))
        .collect()
}

/// A function on a level-1 groupoid of tuples `(g_1)` given by a function
/// on the double cosets containing `g_1`.
fn to_level1(chain: &IteratedFiber, lookup: &HashMap<u32, usize>, v: &[Rat]) -> Result<SpanFn> {
    let x1 = chain.levels[1].clone();
    let values = x1
        .components()
        .iter()
        .map(|c| v[lookup[&chain.obj_tuple(1, c.root())[0]]].clone())
        .collect();
    SpanFn::new(x1, values)
}

fn from_level1(chain: &IteratedFiber, lookup: &HashMap<u32, usize>, dim: usize, f: &SpanFn) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (c, v) in chain.levels[1].components().iter().zip(f.values()) {
        out[lookup[&chain.obj_tuple(1, c.root())[0]]] = v.clone();
    }
    out
}

fn basis_vector(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = Rat::one();
    v
}

/// Structure constants of the Hecke algebra on `H\G/H`:
/// `T_i T_j = Σ_k constants[i][j][k] T_k`.
#[derive(Clone, Debug)]
pub struct HeckeTable {
    pub group: String,
    pub subgroup: Vec<u32>,
    pub cosets: Vec<DoubleCoset>,
    pub constants: Vec<Vec<Vec<Rat>>>,
}

impl HeckeTable {
    pub fn dim(&self) -> usize {
        self.cosets.len()
    }

    /// The basis index of the double coset of the identity.
    pub fn unit(&self) -> usize {
        self.cosets.iter().position(|c| c.representative == 0).expect("identity coset")
    }

    pub fn multiply(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        let mut out = vec![Rat::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let s = &a[i] * &b[j];
                for k in 0..d {
                    out[k] += &s * &self.constants[i][j][k];
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (ei, ej, ek) = (basis_vector(d, i), basis_vector(d, j), basis_vector(d, k));
                    self.multiply(&self.multiply(&ei, &ej), &ek) == self.multiply(&ei, &self.multiply(&ej, &ek))
                })
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        let d = self.dim();
        let u = basis_vector(d, self.unit());
        (0..d).all(|i| {
            let e = basis_vector(d, i);
            self.multiply(&u, &e) == e && self.multiply(&e, &u) == e
        })
    }

    pub fn is_integral(&self) -> bool {
        self.constants.iter().flatten().flatten().all(|c| c.is_integer())
    }
}

/// The Hecke algebra of `H ≤ G`, computed by pull-push along
/// `X_1 × X_1 ← X_2 → X_1` of the Hecke-Waldhausen construction.
pub fn hecke_algebra(g: &FiniteGroup, h: &[u32], budget: usize) -> Result<HeckeTable> {
    let hw = hecke_waldhausen(g, h, 2, budget)?;
    let mut h = h.to_vec();
    h.sort_unstable();
    let cosets = double_cosets(g, &h, &h);
    let lookup = coset_of(&cosets);
    let d = cosets.len();
    let basis = (0..d)
        .map(|i| to_level1(&hw.chain, &lookup, &basis_vector(d, i)))
        .collect::<Result<Vec<_>>>()?;
    let mut constants = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let p = span_product(&hw.simplicial, &basis[i], &basis[j], budget)?;
            constants[i][j] = from_level1(&hw.chain, &lookup, d, &p);
        }
    }
    Ok(HeckeTable {
        group: g.name().to_string(),
        subgroup: h,
        cosets,
        constants,
    })
}

/// The action of the Hecke algebra of `H ≤ G` on functions on `H\G/P`:
/// `T_i · e_a = Σ_b action[i][a][b] e_b`.
#[derive(Clone, Debug)]
pub struct HeckeModuleTable {
    pub algebra: HeckeTable,
    pub module_subgroup: Vec<u32>,
    pub cosets: Vec<DoubleCoset>,
    pub action: Vec<Vec<Vec<Rat>>>,
}

impl HeckeModuleTable {
    pub fn dim(&self) -> usize {
        self.cosets.len()
    }

    /// `f · v` for algebra element `f` and module element `v`.
    pub fn act(&self, f: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let m = self.dim();
        let mut out = vec![Rat::zero(); m];
        for (i, fi) in f.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (a, va) in v.iter().enumerate() {
                if va.is_zero() {
                    continue;
                }
                let s = fi * va;
                for b in 0..m {
                    out[b] += &s * &self.action[i][a][b];
                }
            }
        }
        out
    }

    /// `(f g) · v = f · (g · v)` on basis elements.
    pub fn is_associative(&self) -> bool {
        let (d, m) = (self.algebra.dim(), self.dim());
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..m).all(|a| {
                    let (ei, ej, ea) = (basis_vector(d, i), basis_vector(d, j), basis_vector(m, a));
                    self.act(&self.algebra.multiply(&ei, &ej), &ea) == self.act(&ei, &self.act(&ej, &ea))
                })
            })
        })
    }

    /// `1 · v = v` on basis elements.
    pub fn is_unital(&self) -> bool {
        let (d, m) = (self.algebra.dim(), self.dim());
        let u = basis_vector(d, self.algebra.unit());
        (0..m).all(|a| {
            let e = basis_vector(m, a);
            self.act(&u, &e) == e
        })
    }
}

/// The convolution module of the Hecke algebra of `H` on `H\G/P`, computed
/// by pull-push along the relative span of the chain `BP ×_BG BH ×_BG BH`.
pub fn hecke_module(g: &FiniteGroup, h: &[u32], p: &[u32], budget: usize) -> Result<HeckeModuleTable> {
    let algebra = hecke_algebra(g, h, budget)?;
    let h = algebra.subgroup.clone();
    let mut p = p.to_vec();
    p.sort_unstable();
    let alg = IteratedFiber::new(g, &[h.clone(), h.clone()], budget)?;
    let module = IteratedFiber::new(g, &[p.clone(), h.clone(), h.clone()], budget)?;
    let d0 = module.tuple_functor(2, &alg, 1, |t| t[1..].to_vec(), |ks| ks[1..].to_vec())?;
    let d1 = module.tuple_functor(2, &module, 1, |t| face_obj(g, t, 1), |ks| drop_at(ks, 1))?;
    let d2 = module.tuple_functor(2, &module, 1, |t| t[..1].to_vec(), |ks| ks[..2].to_vec())?;
    let square = two_fiber_product(
        &GroupoidFunctor::to_point(alg.levels[1].clone()),
        &GroupoidFunctor::to_point(module.levels[1].clone()),
        budget,
    )?;
    let chop = square.lift_strict(&d0, &d2)?;
    let alg_lookup = coset_of(&algebra.cosets);
    let cosets = double_cosets(g, &h, &p);
    let lookup = coset_of(&cosets);
    let (d, m) = (algebra.dim(), cosets.len());
    let mut action = vec![vec![Vec::new(); m]; d];
    for (i, row) in action.iter_mut().enumerate() {
        let f = to_level1(&alg, &alg_lookup, &basis_vector(d, i))?;
        for (a, out) in row.iter_mut().enumerate() {
            let v = to_level1(&module, &lookup, &basis_vector(m, a))?;
            let fv = external_product(&square, &f, &v)?;
            let res = pull_push_span(&chop, &d1, &fv, budget)?;
            *out = from_level1(&module, &lookup, m, &res);
        }
    }
    Ok(HeckeModuleTable {
        algebra,
        module_subgroup: p,
        cosets,
        action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};
    use crate::waldhausen::{check_2segal_degree3, check_pointed};
    use crate::DEFAULT_BUDGET;

    /// `(f ∗ g)(x) = (1/|H|) Σ_y f(y) g(y⁻¹x)` on functions `G → Q`.
    fn convolve(g: &FiniteGroup, h_order: usize, f: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let scale = rat(1, h_order as i64);
        g.elements()
            .map(|x| {
                let s: Rat = g
                    .elements()
                    .map(|y| &f[y as usize] * &v[g.mul(g.inv(y), x) as usize])
                    .sum();
                s * &scale
            })
            .collect()
    }

    fn indicator(g: &FiniteGroup, c: &DoubleCoset) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); g.order()];
        for &x in &c.elements {
            v[x as usize] = Rat::one();
        }
        v
    }

    fn expand(g: &FiniteGroup, cosets: &[DoubleCoset], coeffs: &[Rat]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); g.order()];
        for (c, a) in cosets.iter().zip(coeffs) {
            for &x in &c.elements {
                v[x as usize] += a;
            }
        }
        v
    }

    fn check_algebra_oracle(g: &FiniteGroup, h: &[u32]) {
        let t = hecke_algebra(g, h, DEFAULT_BUDGET).unwrap();
        for (i, ci) in t.cosets.iter().enumerate() {
            for (j, cj) in t.cosets.iter().enumerate() {
                let oracle = convolve(g, h.len(), &indicator(g, ci), &indicator(g, cj));
                assert_eq!(expand(g, &t.cosets, &t.constants[i][j]), oracle, "T_{i} T_{j}");
            }
        }
        assert!(t.is_associative() && t.is_unital() && t.is_integral());
    }

    #[test]
    fn s3_s2_levels() {
        let g = FiniteGroup::symmetric(3);
        let h = g.parse_subgroup("sym:2").unwrap();
        let hw = hecke_waldhausen(&g, &h, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(hw.simplicial().level(1).num_components(), 2);
        assert!(check_2segal_degree3(hw.simplicial(), DEFAULT_BUDGET).unwrap().pass);
        assert!(check_pointed(hw.simplicial(), DEFAULT_BUDGET).unwrap().pass);
    }

    #[test]
    fn s4_s3_is_2segal() {
        let g = FiniteGroup::symmetric(4);
        let h = g.parse_subgroup("sym:3").unwrap();
        let hw = hecke_waldhausen(&g, &h, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(hw.simplicial().level(1).num_components(), 2);
        assert!(check_2segal_degree3(hw.simplicial(), DEFAULT_BUDGET).unwrap().pass);
        assert!(check_pointed(hw.simplicial(), DEFAULT_BUDGET).unwrap().pass);
    }

    #[test]
    fn extreme_subgroups() {
        let g = FiniteGroup::symmetric(3);
        let whole: Vec<u32> = g.elements().collect();
        let hw = hecke_waldhausen(&g, &whole, 2, DEFAULT_BUDGET).unwrap();
        for n in 0..=2 {
            let x = hw.simplicial().level(n);
            assert_eq!(x.num_components(), 1);
            assert_eq!(x.aut_order(0), 6);
        }
        let hw = hecke_waldhausen(&g, &[0], 1, DEFAULT_BUDGET).unwrap();
        let x1 = hw.simplicial().level(1);
        assert_eq!((x1.num_components(), x1.num_objects()), (6, 6));
    }

    #[test]
    fn rejects_non_subgroup() {
        let g = FiniteGroup::symmetric(3);
        assert!(matches!(hecke_waldhausen(&g, &[0, 3], 1, DEFAULT_BUDGET), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn algebra_matches_convolution() {
        let g = FiniteGroup::symmetric(3);
        check_algebra_oracle(&g, &g.parse_subgroup("sym:2").unwrap());
        let g = FiniteGroup::symmetric(4);
        check_algebra_oracle(&g, &g.parse_subgroup("sym:3").unwrap());
        check_algebra_oracle(&g, &g.parse_subgroup("young:2+2").unwrap());
    }

    #[test]
    fn trivial_subgroup_gives_group_algebra() {
        let g = FiniteGroup::cyclic(4);
        let t = hecke_algebra(&g, &[0], DEFAULT_BUDGET).unwrap();
        for i in 0..4u32 {
            for j in 0..4u32 {
                let k = t.cosets.iter().position(|c| c.representative == g.mul(i, j)).unwrap();
                assert_eq!(t.constants[i as usize][j as usize][k], rat_int(1));
            }
        }
    }

    #[test]
    fn s3_s2_table() {
        let g = FiniteGroup::symmetric(3);
        let h = g.parse_subgroup("sym:2").unwrap();
        let t = hecke_algebra(&g, &h, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.unit(), 0);
        // T_1 T_1 = 2 T_0 + T_1 for the big double coset of size 4
        assert_eq!(t.constants[0][0], vec![rat_int(1), rat_int(0)]);
        assert_eq!(t.constants[1][1], vec![rat_int(2), rat_int(1)]);
    }

    #[test]
    fn module_matches_convolution() {
        let g = FiniteGroup::symmetric(3);
        let h = g.parse_subgroup("sym:2").unwrap();
        let p = g.parse_subgroup("alt:3").unwrap();
        let m = hecke_module(&g, &h, &p, DEFAULT_BUDGET).unwrap();
        for (i, ci) in m.algebra.cosets.iter().enumerate() {
            for (a, ca) in m.cosets.iter().enumerate() {
                let oracle = convolve(&g, h.len(), &indicator(&g, ci), &indicator(&g, ca));
                assert_eq!(expand(&g, &m.cosets, &m.action[i][a]), oracle);
            }
        }
        assert!(m.is_associative() && m.is_unital());
    }

    #[test]
    fn regular_and_scalar_modules() {
        let g = FiniteGroup::symmetric(3);
        let h = g.parse_subgroup("sym:2").unwrap();
        let regular = hecke_module(&g, &h, &h, DEFAULT_BUDGET).unwrap();
        assert_eq!(regular.action, regular.algebra.constants);
        let whole: Vec<u32> = g.elements().collect();
        let scalar = hecke_module(&g, &h, &whole, DEFAULT_BUDGET).unwrap();
        assert_eq!(scalar.dim(), 1);
        for (i, c) in scalar.algebra.cosets.iter().enumerate() {
            assert_eq!(scalar.action[i][0][0], rat(c.size() as i64, h.len() as i64));
        }
    }
}
