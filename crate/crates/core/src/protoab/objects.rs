use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::IsoClass;
use crate::error::{check_budget, Result};
use crate::exactmath::Partition;
use crate::par::prelude::*;
use crate::wreath::FiniteGroup;

/// A morphism as a function on element indices (`map[x]` is the image of
/// element `x`); element 0 is the zero element or basepoint.
pub type Map = Vec<u32>;

/// A subobject, given by its (sorted) element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subobject {
    elements: Vec<u32>,
}

impl Subobject {
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Debug)]
enum Kind {
    /// `⊕ Z/m_i`, elements as mixed-radix coordinate tuples, first
    /// coordinate varying fastest.
    Abelian { p: u64, moduli: Vec<u64> },
    /// Basepoint plus `rank` free `G`-orbits; element `1 + i·|G| + h` is
    /// `h · x_i`.
    Pointed { group: Arc<FiniteGroup>, rank: usize },
}

/// A concrete representative of an isomorphism class.
#[derive(Clone, Debug)]
pub struct Object {
    class: IsoClass,
    kind: Kind,
    size: usize,
}

pub fn is_injective(f: &[u32]) -> bool {
    let mut seen = HashSet::with_capacity(f.len());
    f.iter().all(|y| seen.insert(*y))
}

pub fn is_surjective(f: &[u32], codomain: usize) -> bool {
    let mut hit = vec![false; codomain];
    for &y in f {
        hit[y as usize] = true;
    }
    hit.into_iter().all(|h| h)
}

/// `g ∘ f`.
pub fn compose(g: &[u32], f: &[u32]) -> Map {
    f.iter().map(|&y| g[y as usize]).collect()
}

/// Inverse of a bijection.
pub fn invert(f: &[u32]) -> Map {
    let mut inv = vec![0u32; f.len()];
    for (x, &y) in f.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    inv
}

fn log_exact(p: u64, mut n: u64) -> usize {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

/// The type of an abelian p-group from `counts[k] = |A[p^k]|`.
fn type_from_counts(p: u64, counts: &[u64]) -> Partition {
    let logs: Vec<usize> = counts.iter().map(|&c| log_exact(p, c)).collect();
    let conj: Vec<usize> = logs.windows(2).map(|w| w[1] - w[0]).filter(|&d| d > 0).collect();
    Partition::new(conj).conjugate()
}

impl Object {
    pub(super) fn abelian(class: IsoClass, p: u64, moduli: Vec<u64>) -> Self {
        let size = moduli.iter().product::<u64>() as usize;
        Object {
            class,
            kind: Kind::Abelian { p, moduli },
            size,
        }
    }

    pub(super) fn pointed(class: IsoClass, group: Arc<FiniteGroup>, rank: usize) -> Self {
        let size = 1 + rank * group.order();
        Object {
            class,
            kind: Kind::Pointed { group, rank },
            size,
        }
    }

    pub fn class(&self) -> &IsoClass {
        &self.class
    }

    pub fn num_elements(&self) -> usize {
        self.size
    }

    fn coords(moduli: &[u64], mut x: u64) -> Vec<u64> {
        moduli
            .iter()
            .map(|&m| {
                let r = x % m;
                x /= m;
                r
            })
            .collect()
    }

    fn index(moduli: &[u64], c: &[u64]) -> u64 {
        c.iter().zip(moduli).rev().fold(0, |acc, (&d, &m)| acc * m + d)
    }

    fn add(moduli: &[u64], x: u32, y: u32) -> u32 {
        let (a, b) = (Self::coords(moduli, x as u64), Self::coords(moduli, y as u64));
        let s: Vec<u64> = a.iter().zip(&b).zip(moduli).map(|((u, v), m)| (u + v) % m).collect();
        Self::index(moduli, &s) as u32
    }

    fn scale(moduli: &[u64], x: u32, k: u64) -> u32 {
        let s: Vec<u64> = Self::coords(moduli, x as u64)
            .iter()
            .zip(moduli)
            .map(|(u, m)| (u * (k % m)) % m)
            .collect();
        Self::index(moduli, &s) as u32
    }

    /// Subgroup (or span) generated by `gens`, sorted; abelian objects only.
    pub fn span(&self, gens: &[u32]) -> Vec<u32> {
        let Kind::Abelian { moduli, .. } = &self.kind else {
            panic!("span of a pointed set");
        };
        let mut set: BTreeSet<u32> = BTreeSet::from([0]);
        for &g in gens {
            let mut next = set.clone();
            let mut mult = g;
            while mult != 0 && !set.contains(&mult) {
                for &s in &set {
                    next.insert(Self::add(moduli, s, mult));
                }
                mult = Self::add(moduli, mult, g);
            }
            set = next;
        }
        set.into_iter().collect()
    }

    /// All subobjects in canonical order (by size, then element set).
    pub fn subobjects(&self) -> Vec<Subobject> {
        let mut subs: Vec<Vec<u32>> = match &self.kind {
            Kind::Pointed { group, rank } => (0u64..1 << rank)
                .map(|mask| {
                    let mut el = vec![0u32];
                    for i in 0..*rank {
                        if mask >> i & 1 == 1 {
                            el.extend((0..group.order()).map(|h| (1 + i * group.order() + h) as u32));
                        }
                    }
                    el
                })
                .collect(),
            Kind::Abelian { moduli, .. } => {
                let n = self.size;
                debug_assert!(n <= 64);
                let to_mask = |v: &[u32]| v.iter().fold(0u64, |m, &x| m | 1 << x);
                let mut seen: HashSet<u64> = HashSet::from([1u64]);
                let mut frontier = vec![vec![0u32]];
                let mut all = vec![vec![0u32]];
                while !frontier.is_empty() {
                    let found: Vec<Vec<Vec<u32>>> = frontier
                        .par_iter()
                        .map(|s| {
                            let mask = to_mask(s);
                            (0..n as u32)
                                .filter(|x| mask >> x & 1 == 0)
                                .map(|x| {
                                    // <S, x> = { s + k x }
                                    let mut set: BTreeSet<u32> = s.iter().copied().collect();
                                    let mut mult = x;
                                    while !s.contains(&mult) {
                                        for &e in s {
                                            set.insert(Self::add(moduli, e, mult));
                                        }
                                        mult = Self::add(moduli, mult, x);
                                    }
                                    set.into_iter().collect()
                                })
                                .collect()
                        })
                        .collect();
                    frontier = Vec::new();
                    for t in found.into_iter().flatten() {
                        if seen.insert(to_mask(&t)) {
                            all.push(t.clone());
                            frontier.push(t);
                        }
                    }
                }
                all
            }
        };
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs.into_iter().map(|elements| Subobject { elements }).collect()
    }

    /// Classes of a subobject and of the quotient by it.
    pub fn classify(&self, u: &Subobject) -> (IsoClass, IsoClass) {
        match (&self.kind, &self.class) {
            (Kind::Pointed { group, rank }, _) => {
                let r = (u.len() - 1) / group.order();
                (IsoClass::Rank(r), IsoClass::Rank(rank - r))
            }
            (Kind::Abelian { p, moduli }, IsoClass::Dim(n)) => {
                let _ = moduli;
                let d = log_exact(*p, u.len() as u64);
                (IsoClass::Dim(d), IsoClass::Dim(n - d))
            }
            (Kind::Abelian { p, moduli }, _) => {
                let members: HashSet<u32> = u.elements.iter().copied().collect();
                let top = log_exact(*p, self.size as u64);
                let mut sub_counts = Vec::new();
                let mut quo_counts = Vec::new();
                for k in 0..=top {
                    let pk = p.pow(k as u32);
                    sub_counts.push(u.elements.iter().filter(|&&x| Self::scale(moduli, x, pk) == 0).count() as u64);
                    let lifts = (0..self.size as u32)
                        .filter(|&x| members.contains(&Self::scale(moduli, x, pk)))
                        .count() as u64;
                    quo_counts.push(lifts / u.len() as u64);
                }
                (
                    IsoClass::Type(type_from_counts(*p, &sub_counts)),
                    IsoClass::Type(type_from_counts(*p, &quo_counts)),
                )
            }
        }
    }

    /// All morphisms `self → other`.
    pub fn homs_to(&self, other: &Object, budget: usize) -> Result<Vec<Map>> {
        match (&self.kind, &other.kind) {
            (Kind::Abelian { moduli: ma, .. }, Kind::Abelian { moduli: mb, .. }) => {
                // generator i (order ma[i]) may go to any y with ma[i]·y = 0
                let cands: Vec<Vec<u32>> = ma
                    .iter()
                    .map(|&o| (0..other.size as u32).filter(|&y| Self::scale(mb, y, o) == 0).collect())
                    .collect();
                let total = cands.iter().map(|c| c.len()).product::<usize>();
                check_budget("hom enumeration", total.saturating_mul(self.size), budget)?;
                // multiples[i][y-slot][k] = k·y
                let multiples: Vec<Vec<Vec<u32>>> = cands
                    .iter()
                    .zip(ma)
                    .map(|(c, &o)| c.iter().map(|&y| (0..o).map(|k| Self::scale(mb, y, k)).collect()).collect())
                    .collect();
                let coords: Vec<Vec<u64>> = (0..self.size as u64).map(|x| Self::coords(ma, x)).collect();
                Ok((0..total)
                    .into_par_iter()
                    .map(|code| {
                        let mut c = code;
                        let choice: Vec<usize> = cands
                            .iter()
                            .map(|cs| {
                                let r = c % cs.len();
                                c /= cs.len();
                                r
                            })
                            .collect();
                        coords
                            .iter()
                            .map(|xc| {
                                xc.iter().enumerate().fold(0u32, |acc, (i, &k)| {
                                    Self::add(mb, acc, multiples[i][choice[i]][k as usize])
                                })
                            })
                            .collect()
                    })
                    .collect())
            }
            (Kind::Pointed { group, rank: ra }, Kind::Pointed { rank: rb, .. }) => {
                let go = group.order();
                let per = rb * go + 1;
                let total = per.checked_pow(*ra as u32).unwrap_or(usize::MAX);
                check_budget("hom enumeration", total.saturating_mul(self.size), budget)?;
                Ok((0..total)
                    .into_par_iter()
                    .filter_map(|code| {
                        let mut c = code;
                        // choice 0: orbit collapses; else (j, g) with x_i ↦ g·y_j
                        let choice: Vec<usize> = (0..*ra)
                            .map(|_| {
                                let r = c % per;
                                c /= per;
                                r
                            })
                            .collect();
                        let targets: Vec<usize> = choice.iter().filter(|&&k| k > 0).map(|&k| (k - 1) / go).collect();
                        let distinct: HashSet<usize> = targets.iter().copied().collect();
                        if distinct.len() != targets.len() {
                            return None;
                        }
                        let mut map = vec![0u32; self.size];
                        for (i, &k) in choice.iter().enumerate() {
                            if k == 0 {
                                continue;
                            }
                            let (j, g) = ((k - 1) / go, ((k - 1) % go) as u32);
                            for h in 0..go as u32 {
                                map[1 + i * go + h as usize] = (1 + j * go) as u32 + group.mul(h, g);
                            }
                        }
                        Some(map)
                    })
                    .collect())
            }
            _ => unreachable!("objects of one instance share a kind"),
        }
    }

    /// Automorphisms (bijective endomorphisms).
    pub fn automorphisms(&self, budget: usize) -> Result<Vec<Map>> {
        Ok(self
            .homs_to(self, budget)?
            .into_iter()
            .filter(|f| is_injective(f))
            .collect())
    }

    /// The zero map to `other`.
    pub fn zero_map(&self) -> Map {
        vec![0; self.size]
    }
}
