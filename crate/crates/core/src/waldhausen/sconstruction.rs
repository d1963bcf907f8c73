//! The S-construction: level `n` is the groupoid of triangular diagrams
//! `A_{ab}` (`0 ≤ a ≤ b ≤ n`) with zero diagonal, monos along rows, epis
//! along columns, commuting squares and every `A_{ab} ↪ A_{ac} ↠ A_{bc}`
//! short exact. Morphisms are families of node automorphisms compatible
//! with all maps.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use super::TruncatedSimplicialGroupoid;
use crate::error::{Error, Result};
use crate::exactmath::Rat;
use crate::groupoid::{realize, FiniteGroupoid, GroupoidFunctor, Presentation, Realized, SpanFn};
use crate::par::prelude::*;
use crate::protoab::{compose, invert, is_injective, is_surjective, IsoClass, Map, Object, ProtoAbelianInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Mono,
    Epi,
}

#[derive(Clone, Debug)]
struct ArrowSpec {
    from: usize,
    to: usize,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Constraint {
    /// Two arrow paths (listed first to last) with equal composites.
    Commute(Vec<usize>, Vec<usize>),
    /// A mono path followed by an epi path forming a short exact sequence.
    Exact(Vec<usize>, Vec<usize>),
}

/// Nodes, generating arrows and constraints of a diagram shape.
#[derive(Clone, Debug)]
struct Shape {
    n: usize,
    nodes: Vec<(usize, usize)>,
    node_index: HashMap<(usize, usize), usize>,
    arrows: Vec<ArrowSpec>,
    horizontal: HashMap<(usize, usize), usize>,
    vertical: HashMap<(usize, usize), usize>,
    /// Constraints grouped by the last arrow they involve.
    ready: Vec<Vec<Constraint>>,
    triangle: bool,
}

impl Shape {
    fn build(n: usize, triangle: bool) -> Shape {
        let nodes: Vec<(usize, usize)> = if triangle {
            (0..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect()
        } else {
            (0..=n).map(|b| (0, b)).collect()
        };
        let node_index: HashMap<(usize, usize), usize> = nodes.iter().enumerate().map(|(i, &ab)| (ab, i)).collect();
        let mut arrows = Vec::new();
        let mut horizontal = HashMap::new();
        let mut vertical = HashMap::new();
        for &(a, b) in &nodes {
            if b < n {
                horizontal.insert((a, b), arrows.len());
                arrows.push(ArrowSpec {
                    from: node_index[&(a, b)],
                    to: node_index[&(a, b + 1)],
                    kind: Kind::Mono,
                });
            }
            if triangle && a < b {
                vertical.insert((a, b), arrows.len());
                arrows.push(ArrowSpec {
                    from: node_index[&(a, b)],
                    to: node_index[&(a + 1, b)],
                    kind: Kind::Epi,
                });
            }
        }
        let mut ready = vec![Vec::new(); arrows.len()];
        if triangle {
            let mut push = |c: Constraint| {
                let last = match &c {
                    Constraint::Commute(p, q) | Constraint::Exact(p, q) => *p.iter().chain(q).max().expect("non-empty"),
                };
                ready[last].push(c);
            };
            for a in 0..n {
                for b in a + 1..n {
                    push(Constraint::Commute(
                        vec![horizontal[&(a, b)], vertical[&(a, b + 1)]],
                        vec![vertical[&(a, b)], horizontal[&(a + 1, b)]],
                    ));
                }
            }
            for a in 0..=n {
                for b in a + 1..=n {
                    for c in b + 1..=n {
                        push(Constraint::Exact(
                            (b..c).map(|k| horizontal[&(a, k)]).collect(),
                            (a..b).map(|k| vertical[&(k, c)]).collect(),
                        ));
                    }
                }
            }
        }
        Shape {
            n,
            nodes,
            node_index,
            arrows,
            horizontal,
            vertical,
            ready,
            triangle,
        }
    }
}

/// A diagram of the S-construction (or of the flag model): a class index
/// per node and a map per generating arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    classes: Vec<u16>,
    maps: Vec<Map>,
}

impl Diagram {
    pub fn classes(&self) -> &[u16] {
        &self.classes
    }

    pub fn maps(&self) -> &[Map] {
        &self.maps
    }
}

/// Instance data shared by all levels.
struct Context {
    classes: Vec<IsoClass>,
    objects: Vec<Object>,
    autos: Vec<Vec<Map>>,
    monos: HashMap<(u16, u16), Vec<Map>>,
    epis: HashMap<(u16, u16), Vec<Map>>,
}

impl Context {
    fn new(inst: &ProtoAbelianInstance, budget: usize) -> Result<Context> {
        let classes = inst.iso_classes();
        let objects = classes.iter().map(|c| inst.object(c)).collect::<Result<Vec<_>>>()?;
        let autos = objects.iter().map(|o| o.automorphisms(budget)).collect::<Result<Vec<_>>>()?;
        let mut monos = HashMap::new();
        let mut epis = HashMap::new();
        for (i, a) in objects.iter().enumerate() {
            for (j, b) in objects.iter().enumerate() {
                let size_a = classes[i].size();
                let size_b = classes[j].size();
                let homs = a.homs_to(b, budget)?;
                let key = (i as u16, j as u16);
                if size_a <= size_b {
                    monos.insert(key, homs.iter().filter(|f| is_injective(f)).cloned().collect());
                }
                if size_a >= size_b {
                    epis.insert(
                        key,
                        homs.into_iter()
                            .filter(|f| is_surjective(f, b.num_elements()))
                            .collect(),
                    );
                }
            }
        }
        Ok(Context {
            classes,
            objects,
            autos,
            monos,
            epis,
        })
    }

    fn size(&self, c: u16) -> usize {
        self.objects[c as usize].num_elements()
    }

    fn identity(&self, c: u16) -> Map {
        (0..self.size(c) as u32).collect()
    }
}

fn path_map(maps: &[Option<Map>], path: &[usize]) -> Map {
    let mut cur = maps[path[0]].clone().expect("assigned");
    for &k in &path[1..] {
        cur = compose(maps[k].as_ref().expect("assigned"), &cur);
    }
    cur
}

fn satisfied(c: &Constraint, maps: &[Option<Map>], codomain_size: impl Fn(usize) -> usize) -> bool {
    match c {
        Constraint::Commute(p, q) => path_map(maps, p) == path_map(maps, q),
        Constraint::Exact(mono, epi) => {
            let i = path_map(maps, mono);
            let p = path_map(maps, epi);
            let mut image = i.clone();
            image.sort_unstable();
            image.dedup();
            if image.len() != i.len() {
                return false;
            }
            let mut hit = vec![false; codomain_size(*epi.last().expect("non-empty"))];
            for &y in &p {
                hit[y as usize] = true;
            }
            if hit.iter().any(|h| !h) {
                return false;
            }
            let kernel: Vec<u32> = (0..p.len() as u32).filter(|&x| p[x as usize] == 0).collect();
            kernel == image
        }
    }
}

/// Presentation of one level (triangle or flag shape).
pub(crate) struct DiagramPresentation {
    ctx: Arc<Context>,
    shape: Shape,
    bound: usize,
}

impl DiagramPresentation {
    fn class_assignments(&self) -> Vec<Vec<u16>> {
        let ctx = &self.ctx;
        let n = self.shape.n;
        let by_size = |s: usize| -> Vec<u16> {
            (0..ctx.classes.len() as u16).filter(|&c| ctx.classes[c as usize].size() == s).collect()
        };
        // nondecreasing size sequences 0 = s_0 ≤ … ≤ s_n ≤ bound
        let mut seqs: Vec<Vec<usize>> = vec![vec![0]];
        for _ in 0..n {
            seqs = seqs
                .into_iter()
                .flat_map(|s| {
                    let last = *s.last().expect("non-empty");
                    (last..=self.bound).map(move |t| {
                        let mut s2 = s.clone();
                        s2.push(t);
                        s2
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for s in seqs {
            let choices: Vec<Vec<u16>> = self
                .shape
                .nodes
                .iter()
                .map(|&(a, b)| by_size(s[b] - s[a]))
                .collect();
            let mut partial: Vec<Vec<u16>> = vec![Vec::new()];
            for ch in &choices {
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        ch.iter().map(move |&c| {
                            let mut p2 = p.clone();
                            p2.push(c);
                            p2
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        out
    }

    fn fill(&self, classes: &[u16], k: usize, maps: &mut Vec<Option<Map>>, out: &mut Vec<Diagram>) {
        let shape = &self.shape;
        if k == shape.arrows.len() {
            out.push(Diagram {
                classes: classes.to_vec(),
                maps: maps.iter().map(|m| m.clone().expect("assigned")).collect(),
            });
            return;
        }
        let spec = &shape.arrows[k];
        let key = (classes[spec.from], classes[spec.to]);
        let cands = match spec.kind {
            Kind::Mono => self.ctx.monos.get(&key),
            Kind::Epi => self.ctx.epis.get(&key),
        };
        let Some(cands) = cands else { return };
        for m in cands {
            maps[k] = Some(m.clone());
            let ok = shape.ready[k].iter().all(|c| {
                satisfied(c, maps, |arrow| self.ctx.size(classes[shape.arrows[arrow].to]))
            });
            if ok {
                self.fill(classes, k + 1, maps, out);
            }
        }
        maps[k] = None;
    }
}

impl Presentation for DiagramPresentation {
    type Obj = Diagram;
    type Arrow = Vec<Map>;

    fn objects(&self) -> Vec<Diagram> {
        let chunks: Vec<Vec<Diagram>> = self
            .class_assignments()
            .par_iter()
            .map(|classes| {
                let mut out = Vec::new();
                let mut maps = vec![None; self.shape.arrows.len()];
                self.fill(classes, 0, &mut maps, &mut out);
                out
            })
            .collect();
        chunks.concat()
    }

    fn arrows_from(&self, x: &Diagram) -> Vec<(Vec<Map>, Diagram)> {
        let groups: Vec<&Vec<Map>> = x.classes.iter().map(|&c| &self.ctx.autos[c as usize]).collect();
        let total: usize = groups.iter().map(|g| g.len()).product();
        (0..total)
            .into_par_iter()
            .map(|code| {
                let mut c = code;
                let alpha: Vec<Map> = groups
                    .iter()
                    .map(|g| {
                        let r = c % g.len();
                        c /= g.len();
                        g[r].clone()
                    })
                    .collect();
                let y = self.act(&alpha, x).expect("automorphisms act");
                (alpha, y)
            })
            .collect()
    }

    fn act(&self, alpha: &Vec<Map>, x: &Diagram) -> Option<Diagram> {
        if alpha.len() != x.classes.len()
            || alpha.iter().zip(&x.classes).any(|(a, &c)| a.len() != self.ctx.size(c))
        {
            return None;
        }
        let maps = self
            .shape
            .arrows
            .iter()
            .zip(&x.maps)
            .map(|(spec, m)| compose(&alpha[spec.to], &compose(m, &invert(&alpha[spec.from]))))
            .collect();
        Some(Diagram {
            classes: x.classes.clone(),
            maps,
        })
    }

    fn compose(&self, h: &Vec<Map>, g: &Vec<Map>) -> Vec<Map> {
        h.iter().zip(g).map(|(a, b)| compose(a, b)).collect()
    }

    fn inverse(&self, g: &Vec<Map>) -> Vec<Map> {
        g.iter().map(|a| invert(a)).collect()
    }
}

/// A level-changing map of diagrams induced by a monotone map `σ` of
/// vertices: node `(a, b)` of the new diagram is node `(σa, σb)` of the old.
fn reindex(ctx: &Context, old: &Shape, new: &Shape, sigma: &dyn Fn(usize) -> usize, d: &Diagram) -> Diagram {
    let old_node = |a: usize, b: usize| old.node_index[&(sigma(a), sigma(b))];
    let classes: Vec<u16> = new.nodes.iter().map(|&(a, b)| d.classes[old_node(a, b)]).collect();
    let maps = new
        .arrows
        .iter()
        .map(|spec| {
            let (a, b) = new.nodes[spec.from];
            let (sa, sb) = (sigma(a), sigma(b));
            let path: Vec<usize> = match spec.kind {
                Kind::Mono => (sb..sigma(b + 1)).map(|k| old.horizontal[&(sa, k)]).collect(),
                Kind::Epi => (sa..sigma(a + 1)).map(|k| old.vertical[&(k, sb)]).collect(),
            };
            if path.is_empty() {
                ctx.identity(d.classes[old_node(a, b)])
            } else {
                let maps: Vec<Option<Map>> = d.maps.iter().cloned().map(Some).collect();
                path_map(&maps, &path)
            }
        })
        .collect();
    Diagram { classes, maps }
}

fn reindex_arrow(old: &Shape, new: &Shape, sigma: &dyn Fn(usize) -> usize, alpha: &[Map]) -> Vec<Map> {
    new.nodes
        .iter()
        .map(|&(a, b)| alpha[old.node_index[&(sigma(a), sigma(b))]].clone())
        .collect()
}

fn simplicial_functor(
    src: &Realized<DiagramPresentation>,
    dst: &Realized<DiagramPresentation>,
    sigma: &(dyn Fn(usize) -> usize + Sync),
) -> Result<GroupoidFunctor> {
    let (old, new) = (&src.presentation().shape, &dst.presentation().shape);
    let ctx = &src.presentation().ctx;
    let obj: Vec<Option<u32>> = src
        .objects()
        .par_iter()
        .map(|d| dst.index_of(&reindex(ctx, old, new, sigma, d)))
        .collect();
    let obj = obj
        .into_iter()
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::InvalidFunctor("reindexed diagram is not a diagram".into()))?;
    GroupoidFunctor::from_fn(src.groupoid().clone(), dst.groupoid().clone(), |x| obj[x as usize], |m| {
        let alpha = reindex_arrow(old, new, sigma, &src.decode(m));
        dst.encode(&alpha, obj[m.src as usize], obj[m.tgt as usize])
            .ok_or_else(|| Error::InvalidFunctor("reindexed morphism is not a morphism".into()))
    })
}

/// The S-construction truncated at level `N`, with its diagrams.
pub struct SConstruction {
    instance: ProtoAbelianInstance,
    ctx: Arc<Context>,
    levels: Vec<Realized<DiagramPresentation>>,
    simplicial: TruncatedSimplicialGroupoid,
}

/// Builds levels `0..=top` of the S-construction of `inst` restricted to
/// objects of size at most `bound`.
pub fn s_construction(inst: &ProtoAbelianInstance, bound: usize, top: usize, budget: usize) -> Result<SConstruction> {
    if top > 3 {
        return Err(Error::Unsupported("levels above 3 are not built".into()));
    }
    let inst = inst.with_bound(bound);
    let ctx = Arc::new(Context::new(&inst, budget)?);
    let levels = (0..=top)
        .map(|n| {
            let pres = DiagramPresentation {
                ctx: ctx.clone(),
                shape: Shape::build(n, true),
                bound,
            };
            realize(pres, &format!("S-construction level {n}"), budget)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut faces = vec![Vec::new()];
    let mut degeneracies = Vec::new();
    for n in 1..=top {
        faces.push(
            (0..=n)
                .map(|i| simplicial_functor(&levels[n], &levels[n - 1], &move |j| if j < i { j } else { j + 1 }))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    for n in 0..=top {
        degeneracies.push(if n == top {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| simplicial_functor(&levels[n], &levels[n + 1], &move |j| if j <= i { j } else { j - 1 }))
                .collect::<Result<Vec<_>>>()?
        });
    }
    let simplicial = TruncatedSimplicialGroupoid::new(
        levels.iter().map(|r| r.groupoid().clone()).collect(),
        faces,
        degeneracies,
    )?;
    Ok(SConstruction {
        instance: inst,
        ctx,
        levels,
        simplicial,
    })
}

impl SConstruction {
    pub fn instance(&self) -> &ProtoAbelianInstance {
        &self.instance
    }

    pub fn simplicial(&self) -> &TruncatedSimplicialGroupoid {
        &self.simplicial
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.ctx.classes
    }

    pub fn diagram(&self, n: usize, x: u32) -> &Diagram {
        self.levels[n].object(x)
    }

    /// The class of `A_{01}` for an object of `X_1`.
    pub fn edge_class(&self, x: u32) -> &IsoClass {
        let d = self.diagram(1, x);
        &self.ctx.classes[d.classes[self.levels[1].presentation().shape.node_index[&(0, 1)]] as usize]
    }

    /// A function on isomorphism classes as a function on `π0(X_1)`.
    pub fn to_level1(&self, f: &BTreeMap<IsoClass, Rat>) -> Result<SpanFn> {
        let x1 = self.simplicial.level(1).clone();
        for c in f.keys() {
            if !self.ctx.classes.contains(c) {
                return Err(Error::OutOfBasis(c.to_string()));
            }
        }
        let values = x1
            .components()
            .iter()
            .map(|c| f.get(self.edge_class(c.root())).cloned().unwrap_or_else(Rat::zero))
            .collect();
        SpanFn::new(x1, values)
    }

    /// A function on `π0(X_1)` as a map keyed by isomorphism class.
    pub fn from_level1(&self, f: &SpanFn) -> BTreeMap<IsoClass, Rat> {
        let x1 = self.simplicial.level(1);
        x1.components()
            .iter()
            .zip(f.values())
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (self.edge_class(c.root()).clone(), v.clone()))
            .collect()
    }

    /// The flag model of level `n` (chains `0 ↪ A_{01} ↪ … ↪ A_{0n}`) and
    /// the functor from `X_n` restricting to the top row.
    pub fn flag_model(&self, n: usize, budget: usize) -> Result<(Arc<FiniteGroupoid>, GroupoidFunctor)> {
        let pres = DiagramPresentation {
            ctx: self.ctx.clone(),
            shape: Shape::build(n, false),
            bound: self.instance.bound(),
        };
        let flags = realize(pres, &format!("flag model level {n}"), budget)?;
        let src = &self.levels[n];
        let (tri, flag) = (&src.presentation().shape, &flags.presentation().shape);
        let restrict = |d: &Diagram| Diagram {
            classes: flag.nodes.iter().map(|ab| d.classes[tri.node_index[ab]]).collect(),
            maps: (0..n).map(|b| d.maps[tri.horizontal[&(0, b)]].clone()).collect(),
        };
        let restrict_arrow = |alpha: &[Map]| -> Vec<Map> { flag.nodes.iter().map(|ab| alpha[tri.node_index[ab]].clone()).collect() };
        let obj: Vec<u32> = src
            .objects()
            .iter()
            .map(|d| flags.index_of(&restrict(d)).expect("top row of a diagram is a flag"))
            .collect();
        let f = GroupoidFunctor::from_fn(src.groupoid().clone(), flags.groupoid().clone(), |x| obj[x as usize], |m| {
            flags
                .encode(&restrict_arrow(&src.decode(m)), obj[m.src as usize], obj[m.tgt as usize])
                .ok_or_else(|| Error::InvalidFunctor("restriction is not functorial".into()))
        })?;
        debug_assert!(!flag.triangle);
        Ok((flags.groupoid().clone(), f))
    }

    /// The comparison functor from `X_1` to the skeletal core groupoid.
    pub fn core_comparison(&self, budget: usize) -> Result<GroupoidFunctor> {
        let core = core_presentation(&self.ctx, budget)?;
        let src = &self.levels[1];
        let node = src.presentation().shape.node_index[&(0, 1)];
        let obj: Vec<u32> = src.objects().iter().map(|d| d.classes[node] as u32).collect();
        GroupoidFunctor::from_fn(src.groupoid().clone(), core.groupoid().clone(), |x| obj[x as usize], |m| {
            let alpha = &src.decode(m)[node];
            core.encode(&(obj[m.src as usize] as u16, alpha.clone()), obj[m.src as usize], obj[m.tgt as usize])
                .ok_or_else(|| Error::InvalidFunctor("not an automorphism".into()))
        })
    }
}

struct CorePresentation {
    ctx: Arc<Context>,
}

impl Presentation for CorePresentation {
    type Obj = u16;
    type Arrow = (u16, Map);

    fn objects(&self) -> Vec<u16> {
        (0..self.ctx.classes.len() as u16).collect()
    }

    fn arrows_from(&self, x: &u16) -> Vec<((u16, Map), u16)> {
        self.ctx.autos[*x as usize].iter().map(|a| ((*x, a.clone()), *x)).collect()
    }

    fn act(&self, a: &(u16, Map), x: &u16) -> Option<u16> {
        (a.0 == *x).then_some(*x)
    }

    fn compose(&self, h: &(u16, Map), g: &(u16, Map)) -> (u16, Map) {
        (h.0, compose(&h.1, &g.1))
    }

    fn inverse(&self, g: &(u16, Map)) -> (u16, Map) {
        (g.0, invert(&g.1))
    }
}

fn core_presentation(ctx: &Arc<Context>, budget: usize) -> Result<Realized<CorePresentation>> {
    realize(CorePresentation { ctx: ctx.clone() }, "core groupoid", budget)
}

/// The skeletal groupoid of isomorphism classes and their automorphisms.
pub fn core_groupoid(inst: &ProtoAbelianInstance, budget: usize) -> Result<Arc<FiniteGroupoid>> {
    let ctx = Arc::new(Context::new(inst, budget)?);
    Ok(core_presentation(&ctx, budget)?.groupoid().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::is_equivalence;
    use crate::wreath::FiniteGroup;
    use crate::DEFAULT_BUDGET;

    #[test]
    fn low_levels() {
        let inst = ProtoAbelianInstance::f1_free(FiniteGroup::trivial(), 2);
        let s = s_construction(&inst, 2, 2, DEFAULT_BUDGET).unwrap();
        let x = s.simplicial();
        assert_eq!(x.level(0).cardinality(), Rat::from_integer(1.into()));
        assert_eq!(x.level(1).num_components(), 3);
        assert_eq!(x.level(2).num_components(), 6);
        assert!(is_equivalence(&s.core_comparison(DEFAULT_BUDGET).unwrap()).equivalent);
        for n in 0..=2 {
            let (_, f) = s.flag_model(n, DEFAULT_BUDGET).unwrap();
            assert!(is_equivalence(&f).equivalent, "flag model at level {n}");
        }
    }

    #[test]
    fn vect_levels_match_flag_model() {
        let inst = ProtoAbelianInstance::vect(2, 2).unwrap();
        let s = s_construction(&inst, 2, 3, DEFAULT_BUDGET).unwrap();
        for n in 0..=3 {
            let (_, f) = s.flag_model(n, DEFAULT_BUDGET).unwrap();
            assert!(is_equivalence(&f).equivalent, "flag model at level {n}");
        }
        // X_2 components: flags 0 ⊆ U ⊆ V up to iso, dims (i, j), i ≤ j ≤ 2
        assert_eq!(s.simplicial().level(2).num_components(), 6);
    }

    #[test]
    fn segal_and_pointed_hold() {
        use crate::waldhausen::{check_2segal_degree3, check_pointed};
        let instances = [
            ProtoAbelianInstance::vect(2, 2).unwrap(),
            ProtoAbelianInstance::f1_free(FiniteGroup::trivial(), 2),
        ];
        for inst in &instances {
            let s = s_construction(inst, 2, 3, DEFAULT_BUDGET).unwrap();
            let v = check_2segal_degree3(s.simplicial(), DEFAULT_BUDGET).unwrap();
            assert!(v.pass, "{}: {:?}", inst.tag(), v.witnesses);
            let v = check_pointed(s.simplicial(), DEFAULT_BUDGET).unwrap();
            assert!(v.pass, "{}: {:?}", inst.tag(), v.witnesses);
        }
    }
}
